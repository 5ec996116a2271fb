#ifndef OFM_ENSEMBLE_HPP
#define OFM_ENSEMBLE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "ofm/adjacency.hpp"
#include "ofm/error.hpp"
#include "ofm/gluing.hpp"
#include "ofm/random.hpp"
#include "ofm/samplers.hpp"
#include "ofm/spectra.hpp"
#include "ofm/topology.hpp"

namespace ofm {

/// One sampled map with the seed it was drawn under.
struct EnsembleRecord {
  std::size_t n = 0;
  Gluing gluing = Gluing::from_partners({2, 1});
  std::size_t genus = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;

  friend bool operator==(const EnsembleRecord &,
                         const EnsembleRecord &) = default;
};

inline EnsembleRecord make_record(Gluing g, std::uint64_t seed,
                                  std::uint64_t sample_index) {
  const std::size_t n = g.n();
  const std::size_t gen = genus(g);
  return {n, std::move(g), gen, seed, sample_index};
}

/// {"n":..,"partner":[1-based],"genus":..,"seed":..,"sample_index":..}
inline std::string to_json_line(const EnsembleRecord &r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["partner"] = r.gluing.one_based();
  j["genus"] = r.genus;
  j["seed"] = r.seed;
  j["sample_index"] = r.sample_index;
  return j.dump();
}

/// Parses one line; the gluing is validated and the stored genus and n are
/// checked against it.
inline EnsembleRecord from_json_line(const std::string &line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  EnsembleRecord r;
  try {
    const auto partner = j.at("partner").get<std::vector<Label>>();
    r.gluing = Gluing::from_partners(partner);
    r.n = j.at("n").get<std::size_t>();
    r.genus = j.at("genus").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.sample_index = j.at("sample_index").get<std::uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const Error &e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (r.n != r.gluing.n()) {
    throw Error(ErrorKind::ParseError, "n disagrees with partner length");
  }
  if (r.genus != genus(r.gluing)) {
    throw Error(ErrorKind::ParseError,
                "stored genus " + std::to_string(r.genus) +
                    " disagrees with the gluing");
  }
  return r;
}

inline void write_ensemble(std::ostream &out,
                           const std::vector<EnsembleRecord> &records) {
  for (const auto &r : records) {
    out << to_json_line(r) << '\n';
  }
}

/// Blank lines are skipped.
inline std::vector<EnsembleRecord> read_ensemble(std::istream &in) {
  std::vector<EnsembleRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      records.push_back(from_json_line(line));
    } catch (const Error &e) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

/*
 * Runs job(i) for i in [0, count) on `threads` workers with a static
 * round-robin split. Results must be written to slot i by the job, so the
 * outcome is independent of the thread count.
 */
template <class Job>
void parallel_for_index(std::size_t count, unsigned threads, Job &&job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                        std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      job(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) {
          job(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto &w : workers) {
    w.join();
  }
  for (auto &e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

enum class SamplerKind { uniform, ncpp, genus_filtered };

struct EnsembleSpec {
  std::size_t n = 1;
  std::size_t samples = 1;
  SamplerKind sampler = SamplerKind::uniform;
  std::optional<std::size_t> target_genus;
  std::uint64_t master_seed = 0;
  std::uint64_t budget = 0; // genus-filtered attempts
  unsigned threads = 1;
};

/*
 * Sample i of a uniform or NCPP ensemble uses RngStream(seed, i). A
 * genus-filtered ensemble runs the rejection loop over attempt streams
 * (seed, a) and numbers the kept maps 0, 1, ... in attempt order. On an
 * exhausted budget the BudgetExhausted error propagates.
 */
inline std::vector<EnsembleRecord> generate_ensemble(const EnsembleSpec &spec) {
  if (spec.samples < 1 || spec.n < 1) {
    throw Error(ErrorKind::OutOfRange, "ensemble needs n >= 1 and samples >= 1");
  }
  if ((spec.sampler == SamplerKind::genus_filtered) != spec.target_genus.has_value()) {
    throw Error(ErrorKind::OutOfRange,
                "a target genus is given iff the sampler is genus-filtered");
  }
  std::vector<EnsembleRecord> out;
  if (spec.sampler == SamplerKind::genus_filtered) {
    const auto kept = sample_genus_filtered(spec.n, *spec.target_genus,
                                            spec.samples, spec.budget,
                                            spec.master_seed);
    for (std::size_t i = 0; i < kept.kept.size(); ++i) {
      out.push_back(make_record(kept.kept[i], spec.master_seed, i));
    }
    return out;
  }
  std::vector<std::optional<EnsembleRecord>> slots(spec.samples);
  parallel_for_index(spec.samples, spec.threads, [&](std::size_t i) {
    RngStream rng(spec.master_seed, i);
    Gluing g = spec.sampler == SamplerKind::ncpp ? sample_ncpp(spec.n, rng)
                                                 : sample_uniform_gluing(spec.n, rng);
    slots[i] = make_record(std::move(g), spec.master_seed, i);
  });
  out.reserve(spec.samples);
  for (auto &s : slots) {
    out.push_back(std::move(*s));
  }
  return out;
}

inline std::vector<Spectrum> ensemble_spectra(const std::vector<Gluing> &gluings,
                                              unsigned threads = 1) {
  std::vector<Spectrum> out(gluings.size());
  parallel_for_index(gluings.size(), threads, [&](std::size_t i) {
    out[i] = eigenvalues_symmetric(build_adjacency(gluings[i]));
  });
  return out;
}

inline std::vector<Spectrum> ensemble_spectra(const std::vector<EnsembleRecord> &records,
                                              unsigned threads = 1) {
  std::vector<Spectrum> out(records.size());
  parallel_for_index(records.size(), threads, [&](std::size_t i) {
    out[i] = eigenvalues_symmetric(build_adjacency(records[i].gluing));
  });
  return out;
}

} // namespace ofm

#endif // OFM_ENSEMBLE_HPP
