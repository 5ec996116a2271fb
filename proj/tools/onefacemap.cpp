// onefacemap: generate one-face map ensembles and reproduce their eigenvalue
// statistics as CSV/JSON series.
//
// Exit codes: 0 success, 2 validation error, 3 budget exhausted, 4 I/O.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ofm/ofm.hpp"

namespace {

constexpr int exit_validation = 2;
constexpr int exit_budget = 3;
constexpr int exit_io = 4;

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) {
        throw ofm::Error(ofm::ErrorKind::IoError, "cannot open " + path);
      }
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) {
        throw ofm::Error(ofm::ErrorKind::IoError, "write failed");
      }
    }
  }

private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<ofm::EnsembleRecord> load(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ofm::Error(ofm::ErrorKind::IoError, "cannot read " + path);
  }
  auto records = ofm::read_ensemble(in);
  if (records.empty()) {
    throw ofm::Error(ofm::ErrorKind::EmptyEnsemble, path + " holds no records");
  }
  return records;
}

// Columns of equal length written as CSV (header row) or as one JSON object
// of arrays.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void write(std::ostream &out, const std::string &format) const {
    if (format == "json") {
      nlohmann::ordered_json j;
      for (std::size_t c = 0; c < names.size(); ++c) {
        j[names[c]] = columns[c];
      }
      out << j.dump() << '\n';
      return;
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
      out << (c ? "," : "") << names[c];
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out << (c ? "," : "") << fmt_double(columns[c][r]);
      }
      out << '\n';
    }
  }
};

struct Options {
  std::size_t n = 0;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::string sampler = "uniform";
  std::optional<std::size_t> genus;
  std::uint64_t budget = 100000;
  double bulk_fraction = ofm::default_bulk_fraction;
  std::size_t bins = ofm::default_bins;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
  std::size_t r_max = 10;
  std::size_t count_g = 0;
  std::size_t count_n = 0;
  std::vector<std::string> inputs;
};

ofm::SamplerKind parse_sampler(const std::string &name) {
  if (name == "uniform") return ofm::SamplerKind::uniform;
  if (name == "ncpp") return ofm::SamplerKind::ncpp;
  return ofm::SamplerKind::genus_filtered;
}

int cmd_generate(const Options &o) {
  ofm::EnsembleSpec spec;
  spec.n = o.n;
  spec.samples = o.samples;
  spec.sampler = parse_sampler(o.sampler);
  spec.target_genus = o.genus;
  spec.master_seed = o.seed;
  spec.budget = o.budget;
  spec.threads = o.threads;
  Output out(o.out);
  try {
    ofm::write_ensemble(out.stream(), ofm::generate_ensemble(spec));
  } catch (const ofm::BudgetExhausted &e) {
    std::vector<ofm::EnsembleRecord> partial;
    const auto &kept = e.partial().kept;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      partial.push_back(ofm::make_record(kept[i], o.seed, i));
    }
    ofm::write_ensemble(out.stream(), partial);
    out.close();
    throw;
  }
  out.close();
  return 0;
}

int cmd_count(const Options &o) {
  std::cout << ofm::harer_zagier(o.count_g, o.count_n) << '\n';
  return 0;
}

int cmd_table(const Options &o) {
  const auto dist = ofm::genus_distribution(o.count_n);
  ofm::BigCount total = 0;
  for (std::size_t g = 0; g < dist.size(); ++g) {
    std::cout << g << ':' << dist[g] << ' ';
    total += dist[g];
  }
  std::cout << "total:" << total << '\n';
  return 0;
}

int cmd_enumerate(const Options &o) {
  Output out(o.out);
  std::uint64_t index = 0;
  auto emit = [&](ofm::Gluing g) {
    out.stream() << ofm::to_json_line(ofm::make_record(std::move(g), 0, index++))
                 << '\n';
  };
  if (o.sampler == "ncpp") {
    ofm::for_each_ncpp(o.n, emit);
  } else {
    ofm::for_each_gluing(o.n, emit);
  }
  out.close();
  return 0;
}

int cmd_spectrum(const Options &o) {
  const auto records = load(o.inputs.front());
  const auto spectra = ofm::ensemble_spectra(records, o.threads);
  Output out(o.out);
  for (const auto &s : spectra) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      out.stream() << (i ? "," : "") << fmt_double(s.values[i]);
    }
    out.stream() << '\n';
  }
  out.close();
  return 0;
}

int cmd_density(const Options &o) {
  const auto records = load(o.inputs.front());
  const auto spectra = ofm::ensemble_spectra(records, o.threads);
  const auto h = ofm::empirical_density(spectra, o.bins);
  const auto mckay = ofm::ReferenceDensity::mckay(3);
  Table t{{"bin_center", "density", mckay.name()}, {h.centers(), h.densities, {}}};
  for (double x : t.columns[0]) {
    t.columns[2].push_back(mckay.pdf(x));
  }
  Output out(o.out);
  t.write(out.stream(), o.format);
  out.close();
  std::cerr << "l1_to_" << mckay.name() << "="
            << fmt_double(ofm::l1_histogram_distance(
                   h, [&](double x) { return mckay.pdf(x); }))
            << '\n';
  return 0;
}

int cmd_spacings(const Options &o) {
  const auto records = load(o.inputs.front());
  const auto spectra = ofm::ensemble_spectra(records, o.threads);
  const auto pooled = ofm::pooled_spacings(spectra, o.bulk_fraction);
  const auto h = ofm::histogram_density(pooled, o.bins, 0.0, 4.0);
  const auto goe = ofm::ReferenceDensity::goe_surmise();
  const auto expo = ofm::ReferenceDensity::exponential();
  Table t{{"bin_center", "density", goe.name(), expo.name()},
          {h.centers(), h.densities, {}, {}}};
  for (double x : t.columns[0]) {
    t.columns[2].push_back(goe.pdf(x));
    t.columns[3].push_back(expo.pdf(x));
  }
  Output out(o.out);
  t.write(out.stream(), o.format);
  out.close();
  std::cerr << "ks_to_" << goe.name() << "="
            << fmt_double(ofm::ks_distance(pooled, [&](double s) { return goe.cdf(s); }))
            << " ks_to_" << expo.name() << "="
            << fmt_double(ofm::ks_distance(pooled, [&](double s) { return expo.cdf(s); }))
            << '\n';
  return 0;
}

int cmd_meanjth(const Options &o) {
  Table t;
  t.names.push_back("j");
  for (std::size_t k = 0; k < o.inputs.size(); ++k) {
    const auto spectra = ofm::ensemble_spectra(load(o.inputs[k]), o.threads);
    auto mean = ofm::mean_jth_spacing(spectra);
    if (k > 0 && mean.size() != t.columns[1].size()) {
      throw ofm::Error(ofm::ErrorKind::MixedSizes,
                       "ensembles have different matrix sizes");
    }
    if (k == 0) {
      std::vector<double> j(mean.size());
      for (std::size_t i = 0; i < j.size(); ++i) {
        j[i] = static_cast<double>(i + 1);
      }
      t.columns.push_back(std::move(j));
    }
    t.names.push_back("mean_spacing_" + std::to_string(k + 1));
    t.columns.push_back(std::move(mean));
  }
  Output out(o.out);
  t.write(out.stream(), o.format);
  out.close();
  return 0;
}

int cmd_genus(const Options &o) {
  const auto records = load(o.inputs.front());
  Output out(o.out);
  auto &s = out.stream();
  if (o.format == "csv") {
    s << "sample_index,n,genus\n";
  }
  for (const auto &r : records) {
    const std::size_t g = ofm::genus(r.gluing);
    if (o.format == "json") {
      nlohmann::ordered_json j{{"sample_index", r.sample_index}, {"n", r.n}, {"genus", g}};
      s << j.dump() << '\n';
    } else {
      s << r.sample_index << ',' << r.n << ',' << g << '\n';
    }
  }
  out.close();
  return 0;
}

int cmd_degrees(const Options &o) {
  const auto records = load(o.inputs.front());
  Output out(o.out);
  auto &s = out.stream();
  if (o.format == "csv") {
    s << "sample_index,degree,count\n";
  }
  for (const auto &r : records) {
    const auto dist = ofm::degree_distribution(r.gluing);
    if (o.format == "json") {
      nlohmann::ordered_json degrees = nlohmann::ordered_json::object();
      for (const auto &[d, c] : dist) {
        degrees[std::to_string(d)] = c;
      }
      nlohmann::ordered_json j{{"sample_index", r.sample_index}, {"degrees", degrees}};
      s << j.dump() << '\n';
    } else {
      for (const auto &[d, c] : dist) {
        s << r.sample_index << ',' << d << ',' << c << '\n';
      }
    }
  }
  out.close();
  return 0;
}

int cmd_walks(const Options &o) {
  const auto records = load(o.inputs.front());
  Output out(o.out);
  auto &s = out.stream();
  if (o.format == "csv") {
    s << "sample_index,r,walks\n";
  }
  for (const auto &r : records) {
    const auto w = ofm::closed_walk_counts(ofm::build_adjacency(r.gluing), o.r_max);
    if (o.format == "json") {
      nlohmann::ordered_json j{{"sample_index", r.sample_index}, {"walks", w}};
      s << j.dump() << '\n';
    } else {
      for (std::size_t k = 0; k < w.size(); ++k) {
        s << r.sample_index << ',' << k + 1 << ',' << w[k] << '\n';
      }
    }
  }
  out.close();
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"One-face maps as three-regular graphs C + P^T T P: sampling, "
               "topology, exact counts and eigenvalue statistics"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> formats{"csv", "json"};
  auto add_out = [&](CLI::App *cmd) {
    cmd->add_option("--out", o.out, "Output file (default stdout)");
  };
  auto add_format = [&](CLI::App *cmd) {
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember(formats));
  };
  auto add_input = [&](CLI::App *cmd) {
    cmd->add_option("input", o.inputs, "Ensemble file (JSON lines)")
        ->required()
        ->expected(1);
  };
  auto add_threads = [&](CLI::App *cmd) {
    cmd->add_option("--threads", o.threads, "Worker threads")
        ->check(CLI::Range(1u, 256u));
  };

  auto *generate = app.add_subcommand("generate", "Sample an ensemble of gluings");
  generate->add_option("--n", o.n, "Number of polygon edges N")->required()
      ->check(CLI::PositiveNumber);
  generate->add_option("--samples", o.samples, "Ensemble size")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", o.seed, "Master seed");
  generate->add_option("--sampler", o.sampler, "uniform, ncpp or genus-filtered")
      ->check(CLI::IsMember({"uniform", "ncpp", "genus-filtered"}));
  generate->add_option("--genus", o.genus, "Target genus (genus-filtered)");
  generate->add_option("--budget", o.budget, "Attempt budget (genus-filtered)");
  add_threads(generate);
  add_out(generate);

  auto *count = app.add_subcommand("count", "Exact number of genus-g one-face maps with n edges");
  count->add_option("g", o.count_g)->required();
  count->add_option("n", o.count_n)->required();

  auto *table = app.add_subcommand("table", "Genus distribution of one-face maps with n edges");
  table->add_option("n", o.count_n)->required()->check(CLI::PositiveNumber);

  auto *enumerate = app.add_subcommand("enumerate", "List every gluing (or every non-crossing one)");
  enumerate->add_option("--n", o.n)->required();
  enumerate->add_option("--sampler", o.sampler, "uniform (all matchings) or ncpp")
      ->check(CLI::IsMember({"uniform", "ncpp"}));
  add_out(enumerate);

  auto *spectrum = app.add_subcommand("spectrum", "One CSV row of eigenvalues per record");
  add_input(spectrum);
  add_threads(spectrum);
  add_out(spectrum);

  auto *density = app.add_subcommand("density", "Pooled eigenvalue density with McKay overlay");
  add_input(density);
  density->add_option("--bins", o.bins)->check(CLI::PositiveNumber);
  add_threads(density);
  add_format(density);
  add_out(density);

  auto *spacings = app.add_subcommand("spacings", "Scaled bulk spacing distribution with GOE surmise and exponential overlays");
  add_input(spacings);
  spacings->add_option("--bulk-fraction", o.bulk_fraction)
      ->check(CLI::Range(1e-9, 1.0));
  spacings->add_option("--bins", o.bins)->check(CLI::PositiveNumber);
  add_threads(spacings);
  add_format(spacings);
  add_out(spacings);

  auto *meanjth = app.add_subcommand("meanjth", "Mean j-th eigenvalue spacing, one column per ensemble");
  meanjth->add_option("input", o.inputs, "Ensemble files")->required();
  add_threads(meanjth);
  add_format(meanjth);
  add_out(meanjth);

  auto *genus_cmd = app.add_subcommand("genus", "Genus of every record");
  add_input(genus_cmd);
  add_format(genus_cmd);
  add_out(genus_cmd);

  auto *degrees = app.add_subcommand("degrees", "Vertex degree counts of every record");
  add_input(degrees);
  add_format(degrees);
  add_out(degrees);

  auto *walks = app.add_subcommand("walks", "Closed walk counts trace(A^r), r = 1..r-max");
  add_input(walks);
  walks->add_option("--r-max", o.r_max)->check(CLI::Range(1, 20));
  add_format(walks);
  add_out(walks);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_validation;
  }

  try {
    if (*generate) return cmd_generate(o);
    if (*count) return cmd_count(o);
    if (*table) return cmd_table(o);
    if (*enumerate) return cmd_enumerate(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*density) return cmd_density(o);
    if (*spacings) return cmd_spacings(o);
    if (*meanjth) return cmd_meanjth(o);
    if (*genus_cmd) return cmd_genus(o);
    if (*degrees) return cmd_degrees(o);
    if (*walks) return cmd_walks(o);
  } catch (const ofm::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
    case ofm::ErrorKind::BudgetExhausted: return exit_budget;
    case ofm::ErrorKind::IoError: return exit_io;
    default: return exit_validation;
    }
  }
  return exit_validation;
}
