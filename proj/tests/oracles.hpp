// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.
#ifndef OFM_TESTS_ORACLES_HPP
#define OFM_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "ofm/gluing.hpp"

namespace oracle {

// Genus from polygon corners: gluing edge i (v_i -> v_{i+1}) to edge j with
// opposite orientation identifies v_i ~ v_{j+1} and v_{i+1} ~ v_j. Counts the
// resulting vertex classes with union-find and applies V - N + 1 = 2 - 2g.
inline long genus_by_corner_union(const std::vector<ofm::Label> &one_based) {
  const std::size_t size = one_based.size();
  std::vector<std::size_t> parent(size);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = one_based[i] - 1;
    unite(i, (j + 1) % size);
    unite((i + 1) % size, j);
  }
  long vertices = 0;
  for (std::size_t i = 0; i < size; ++i) {
    vertices += find(i) == i;
  }
  const long n = static_cast<long>(size / 2);
  return (n + 1 - vertices) / 2;
}

// Crossing test straight from the definition: O(N^2) over all pairs.
inline bool noncrossing_by_pairs(const std::vector<ofm::Label> &one_based) {
  std::vector<std::pair<int, int>> arcs;
  for (std::size_t i = 0; i < one_based.size(); ++i) {
    const int a = static_cast<int>(i) + 1, b = static_cast<int>(one_based[i]);
    if (a < b) arcs.emplace_back(a, b);
  }
  for (auto [a, b] : arcs) {
    for (auto [c, d] : arcs) {
      if (a < c && c < b && b < d) return false;
    }
  }
  return true;
}

// All perfect matchings of 2n labels as 1-based partner tables, built by
// recursion on the last label (different order from the library).
inline std::vector<std::vector<ofm::Label>> all_matchings(std::size_t n) {
  std::vector<std::vector<ofm::Label>> out;
  std::vector<ofm::Label> partner(2 * n, 0);
  std::function<void()> rec = [&] {
    std::ptrdiff_t last = -1;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(partner.size()) - 1; i >= 0; --i) {
      if (partner[i] == 0) {
        last = i;
        break;
      }
    }
    if (last < 0) {
      out.push_back(partner);
      return;
    }
    for (std::ptrdiff_t j = 0; j < last; ++j) {
      if (partner[j] != 0) continue;
      partner[last] = static_cast<ofm::Label>(j + 1);
      partner[j] = static_cast<ofm::Label>(last + 1);
      rec();
      partner[last] = partner[j] = 0;
    }
  };
  rec();
  return out;
}

inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Composite Simpson on [a, b] with `panels` (even) panels.
inline double simpson(const std::function<double(double)> &f, double a, double b,
                      int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

// Cyclic Jacobi eigenvalues of a dense symmetric matrix (row-major).
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i, i);
  std::sort(w.begin(), w.end());
  return w;
}

// trace(A^r) by repeated dense integer matrix products.
inline std::vector<std::int64_t> traces_by_matrix_power(const std::vector<std::int64_t> &a,
                                                        std::size_t n, std::size_t r_max) {
  std::vector<std::int64_t> power = a, next(n * n);
  std::vector<std::int64_t> out;
  for (std::size_t r = 1; r <= r_max; ++r) {
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += power[i * n + i];
    out.push_back(tr);
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (power[i * n + k])
          for (std::size_t j = 0; j < n; ++j) next[i * n + j] += power[i * n + k] * a[k * n + j];
    power.swap(next);
  }
  return out;
}

// Upper-tail p-value of Pearson's chi-square against equal cell
// probabilities.
template <class Key>
double chi_square_uniform_pvalue(const std::map<Key, std::size_t> &counts,
                                 std::size_t cells, std::size_t draws) {
  const double expected = static_cast<double>(draws) / static_cast<double>(cells);
  double stat = 0.0;
  std::size_t seen = 0;
  for (const auto &[key, c] : counts) {
    stat += (c - expected) * (c - expected) / expected;
    ++seen;
  }
  stat += static_cast<double>(cells - seen) * expected; // empty cells
  boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

} // namespace oracle

#endif // OFM_TESTS_ORACLES_HPP
