#ifndef OFM_SAMPLERS_HPP
#define OFM_SAMPLERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ofm/counting.hpp"
#include "ofm/error.hpp"
#include "ofm/gluing.hpp"
#include "ofm/random.hpp"
#include "ofm/topology.hpp"

namespace ofm {

/// Uniform over all (2n-1)!! matchings: a uniform permutation pushed through
/// gluing_from_permutation. Each matching has 2^n n! preimages.
inline Gluing sample_uniform_gluing(std::size_t n, RngStream &rng) {
  if (n < 1) {
    throw Error(ErrorKind::OutOfRange, "sample_uniform_gluing needs n >= 1");
  }
  std::vector<Label> perm(2 * n);
  std::iota(perm.begin(), perm.end(), Label{1});
  std::shuffle(perm.begin(), perm.end(), rng);
  return gluing_from_permutation(perm);
}

namespace detail {

// C_k = mantissa * 2^exponent with mantissa in [0.5, 1), rounded from the
// exact integer, so that Catalan ratios far beyond double range stay exact
// to a few ulp.
struct ScaledCatalan {
  double mantissa;
  long exponent;
};

inline ScaledCatalan scale_exact(const BigCount &value) {
  const long bits = static_cast<long>(boost::multiprecision::msb(value)) + 1;
  const long shift = std::max(0L, bits - 64);
  const auto top = static_cast<std::uint64_t>(value >> shift);
  int e = 0;
  const double m = std::frexp(static_cast<double>(top), &e);
  return {m, e + shift};
}

class ScaledCatalanTable {
public:
  using Table = std::vector<ScaledCatalan>;

  // Snapshot covering 0..n; the returned table is immutable.
  std::shared_ptr<const Table> upto(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (table_->size() <= n) {
      auto grown = std::make_shared<Table>(*table_);
      grown->reserve(n + 1);
      while (grown->size() <= n) {
        const std::size_t k = grown->size();
        last_ = last_ * (4 * k - 2) / (k + 1);
        grown->push_back(scale_exact(last_));
      }
      table_ = std::move(grown);
    }
    return table_;
  }

private:
  std::mutex mutex_;
  BigCount last_ = 1;
  std::shared_ptr<const Table> table_ =
      std::make_shared<const Table>(Table{scale_exact(BigCount(1))});
};

inline ScaledCatalanTable &scaled_catalans() {
  static ScaledCatalanTable table;
  return table;
}

// pmf(m, h) = C_{m-1} C_{h-m} / C_h in floating point.
inline double pmf_double(const ScaledCatalanTable::Table &c, std::size_t m,
                         std::size_t h) {
  const auto &a = c[m - 1];
  const auto &b = c[h - m];
  const auto &d = c[h];
  return std::ldexp(a.mantissa * b.mantissa / d.mantissa,
                    static_cast<int>(a.exponent + b.exponent - d.exponent));
}

// Inverse CDF from m = 1 upward; whatever mass rounding loses lands on m = h.
inline std::size_t draw_pairing_half_length(const ScaledCatalanTable::Table &c,
                                            std::size_t h, double u) {
  double cdf = 0.0;
  for (std::size_t m = 1; m < h; ++m) {
    cdf += pmf_double(c, m, h);
    if (u < cdf) {
      return m;
    }
  }
  return h;
}

} // namespace detail

/*
 * Uniform non-crossing pair partition of 2n nodes. The first free node of a
 * block of 2h nodes is paired with the block's node 2m, m ~ pmf(., h); the
 * 2m - 2 nodes inside the arc and the 2h - 2m nodes after it become new
 * blocks. Blocks are kept on an explicit stack (inside block popped first).
 */
inline Gluing sample_ncpp(std::size_t n, RngStream &rng) {
  if (n < 1) {
    throw Error(ErrorKind::OutOfRange, "sample_ncpp needs n >= 1");
  }
  const auto table = detail::scaled_catalans().upto(n);
  std::vector<Label> partner(2 * n);
  struct Block {
    std::size_t start;
    std::size_t half_length;
  };
  std::vector<Block> stack{{0, n}};
  while (!stack.empty()) {
    const Block block = stack.back();
    stack.pop_back();
    if (block.half_length == 0) {
      continue;
    }
    const std::size_t m =
        detail::draw_pairing_half_length(*table, block.half_length, rng.uniform());
    const std::size_t first = block.start;
    const std::size_t second = block.start + 2 * m - 1;
    partner[first] = static_cast<Label>(second);
    partner[second] = static_cast<Label>(first);
    stack.push_back({second + 1, block.half_length - m});
    stack.push_back({first + 1, m - 1});
  }
  return Gluing::from_zero_based(std::move(partner));
}

inline constexpr std::size_t max_enumerate_all_n = 8;
inline constexpr std::size_t max_enumerate_ncpp_n = 14;

namespace detail {

template <class Visit>
void enumerate_matchings(std::vector<Label> &partner, std::vector<bool> &used,
                         std::size_t remaining, Visit &visit) {
  if (remaining == 0) {
    visit(Gluing::from_zero_based(partner));
    return;
  }
  const std::size_t size = partner.size();
  std::size_t first = 0;
  while (used[first]) {
    ++first;
  }
  used[first] = true;
  for (std::size_t j = first + 1; j < size; ++j) {
    if (used[j]) {
      continue;
    }
    used[j] = true;
    partner[first] = static_cast<Label>(j);
    partner[j] = static_cast<Label>(first);
    enumerate_matchings(partner, used, remaining - 1, visit);
    used[j] = false;
  }
  used[first] = false;
}

// Pairs every node of the listed blocks; blocks.back() is filled next.
template <class Visit>
void enumerate_noncrossing(std::vector<Label> &partner,
                           std::vector<std::pair<std::size_t, std::size_t>> &blocks,
                           Visit &visit) {
  while (!blocks.empty() && blocks.back().second == 0) {
    blocks.pop_back();
  }
  if (blocks.empty()) {
    visit(Gluing::from_zero_based(partner));
    return;
  }
  const auto [start, half] = blocks.back();
  blocks.pop_back();
  for (std::size_t m = 1; m <= half; ++m) {
    const std::size_t second = start + 2 * m - 1;
    partner[start] = static_cast<Label>(second);
    partner[second] = static_cast<Label>(start);
    auto next = blocks;
    next.emplace_back(second + 1, half - m);
    next.emplace_back(start + 1, m - 1);
    enumerate_noncrossing(partner, next, visit);
  }
}

} // namespace detail

/// Calls visit(Gluing) for each of the (2n-1)!! matchings once, in
/// lexicographic order of the partner table.
template <class Visit>
void for_each_gluing(std::size_t n, Visit &&visit) {
  if (n < 1 || n > max_enumerate_all_n) {
    throw Error(ErrorKind::TooLarge,
                "enumerate_all_gluings supports 1 <= n <= " +
                    std::to_string(max_enumerate_all_n) + ", got " +
                    std::to_string(n));
  }
  std::vector<Label> partner(2 * n);
  std::vector<bool> used(2 * n, false);
  detail::enumerate_matchings(partner, used, n, visit);
}

inline std::vector<Gluing> enumerate_all_gluings(std::size_t n) {
  std::vector<Gluing> out;
  for_each_gluing(n, [&](Gluing g) { out.push_back(std::move(g)); });
  return out;
}

/// Calls visit(Gluing) for each of the C_n non-crossing matchings once.
template <class Visit>
void for_each_ncpp(std::size_t n, Visit &&visit) {
  if (n < 1 || n > max_enumerate_ncpp_n) {
    throw Error(ErrorKind::TooLarge,
                "enumerate_ncpp supports 1 <= n <= " +
                    std::to_string(max_enumerate_ncpp_n) + ", got " +
                    std::to_string(n));
  }
  std::vector<Label> partner(2 * n);
  std::vector<std::pair<std::size_t, std::size_t>> blocks{{0, n}};
  detail::enumerate_noncrossing(partner, blocks, visit);
}

inline std::vector<Gluing> enumerate_ncpp(std::size_t n) {
  std::vector<Gluing> out;
  for_each_ncpp(n, [&](Gluing g) { out.push_back(std::move(g)); });
  return out;
}

/// Accepted gluings of a rejection run; attempt_indices[i] is the stream
/// index that produced kept[i].
struct FilteredSample {
  std::vector<Gluing> kept;
  std::vector<std::uint64_t> attempt_indices;
  std::uint64_t attempts = 0;
};

class BudgetExhausted : public Error {
public:
  BudgetExhausted(FilteredSample partial, std::size_t wanted)
      : Error(ErrorKind::BudgetExhausted,
              "kept " + std::to_string(partial.kept.size()) + " of " +
                  std::to_string(wanted) + " wanted after " +
                  std::to_string(partial.attempts) + " attempts"),
        partial_(std::move(partial)) {}

  const FilteredSample &partial() const noexcept { return partial_; }

private:
  FilteredSample partial_;
};

/*
 * Draws uniform gluings (attempt a uses RngStream(master_seed, a)) and keeps
 * those of genus target_genus until `wanted` are kept. The kept sample is
 * uniform over genus-target maps. Throws BudgetExhausted with the partial
 * sample when max_attempts runs out first.
 */
inline FilteredSample sample_genus_filtered(std::size_t n,
                                            std::size_t target_genus,
                                            std::size_t wanted,
                                            std::uint64_t max_attempts,
                                            std::uint64_t master_seed) {
  if (n < 1 || target_genus > n / 2) {
    throw Error(ErrorKind::OutOfRange,
                "target genus must lie in 0..floor(n/2), got " +
                    std::to_string(target_genus) + " for n=" +
                    std::to_string(n));
  }
  FilteredSample out;
  while (out.kept.size() < wanted && out.attempts < max_attempts) {
    RngStream rng(master_seed, out.attempts);
    Gluing g = sample_uniform_gluing(n, rng);
    if (genus(g) == target_genus) {
      out.kept.push_back(std::move(g));
      out.attempt_indices.push_back(out.attempts);
    }
    ++out.attempts;
  }
  if (out.kept.size() < wanted) {
    throw BudgetExhausted(std::move(out), wanted);
  }
  return out;
}

} // namespace ofm

#endif // OFM_SAMPLERS_HPP
