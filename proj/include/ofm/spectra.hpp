#ifndef OFM_SPECTRA_HPP
#define OFM_SPECTRA_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <mutex>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

#include <lapacke.h>

#include "ofm/adjacency.hpp"
#include "ofm/error.hpp"

extern "C" void openblas_set_num_threads(int num_threads);

namespace ofm {

/// Ascending eigenvalues of one adjacency matrix; n is the map size N.
struct Spectrum {
  std::vector<double> values;
  std::size_t n = 0;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const Spectrum &, const Spectrum &) = default;
};

namespace detail {

// The solver runs single-threaded per matrix; ensembles parallelise across
// matrices instead.
inline void pin_blas_threads() {
  static std::once_flag once;
  std::call_once(once, [] { openblas_set_num_threads(1); });
}

// Distinct neighbours, ascending.
inline std::vector<std::vector<Label>> simple_neighbors(const AdjacencyMatrix &a) {
  const auto table = a.neighbor_table();
  std::vector<std::vector<Label>> out(table.size());
  for (std::size_t v = 0; v < table.size(); ++v) {
    for (Label w : table[v]) {
      if (out[v].empty() || out[v].back() != w) {
        out[v].push_back(w);
      }
    }
  }
  return out;
}

inline std::vector<std::size_t> bfs_levels(
    const std::vector<std::vector<Label>> &nb, std::size_t root) {
  std::vector<std::size_t> level(nb.size(), nb.size());
  std::queue<std::size_t> q;
  level[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (Label w : nb[v]) {
      if (level[w] == nb.size()) {
        level[w] = level[v] + 1;
        q.push(w);
      }
    }
  }
  return level;
}

/*
 * Reverse Cuthill-McKee ordering started from a pseudo-peripheral vertex
 * (George-Liu). Disconnected pieces are handled one component at a time.
 * order[k] is the original vertex placed at position k.
 */
inline std::vector<std::size_t> reverse_cuthill_mckee(
    const std::vector<std::vector<Label>> &nb) {
  const std::size_t size = nb.size();
  std::vector<std::size_t> order;
  order.reserve(size);
  std::vector<bool> placed(size, false);
  for (std::size_t seed = 0; seed < size; ++seed) {
    if (placed[seed]) {
      continue;
    }
    std::size_t root = seed;
    std::size_t eccentricity = 0;
    for (int sweep = 0; sweep < 8; ++sweep) {
      const auto level = bfs_levels(nb, root);
      std::size_t far = root;
      std::size_t depth = 0;
      for (std::size_t v = 0; v < size; ++v) {
        if (level[v] == size) {
          continue;
        }
        if (level[v] > depth ||
            (level[v] == depth && nb[v].size() < nb[far].size())) {
          depth = level[v];
          far = v;
        }
      }
      if (sweep > 0 && depth <= eccentricity) {
        break;
      }
      eccentricity = depth;
      root = far;
    }
    const std::size_t first = order.size();
    order.push_back(root);
    placed[root] = true;
    for (std::size_t head = first; head < order.size(); ++head) {
      std::vector<Label> fresh;
      for (Label w : nb[order[head]]) {
        if (!placed[w]) {
          placed[w] = true;
          fresh.push_back(w);
        }
      }
      std::stable_sort(fresh.begin(), fresh.end(), [&](Label x, Label y) {
        return nb[x].size() < nb[y].size();
      });
      order.insert(order.end(), fresh.begin(), fresh.end());
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

inline void check_info(int info, const char *routine) {
  if (info > 0) {
    throw Error(ErrorKind::NoConvergence,
                std::string(routine) + " failed to converge (info=" +
                    std::to_string(info) + ")");
  }
  if (info < 0) {
    throw Error(ErrorKind::OutOfRange, std::string(routine) +
                                           " rejected argument " +
                                           std::to_string(-info));
  }
}

} // namespace detail

/// Half-bandwidth below which the banded path is used, relative to order.
inline constexpr double banded_solver_threshold = 0.125;

enum class SolverPath { automatic, dense, banded };

/*
 * All eigenvalues of a symmetric adjacency matrix, ascending.
 *
 * The matrix is permuted by reverse Cuthill-McKee. When the resulting
 * half-bandwidth is small (genus-0 graphs are outerplanar and come out with
 * narrow bands) the band is reduced to tridiagonal form directly (dsbev);
 * otherwise the dense path (dsyev) is used. Both are backward stable, and a
 * symmetric permutation leaves the spectrum unchanged.
 */
inline Spectrum eigenvalues_symmetric(const AdjacencyMatrix &a,
                                      SolverPath path = SolverPath::automatic) {
  detail::pin_blas_threads();
  const std::size_t size = a.order();
  const auto nb = detail::simple_neighbors(a);
  const auto order = detail::reverse_cuthill_mckee(nb);
  std::vector<std::size_t> position(size);
  for (std::size_t k = 0; k < size; ++k) {
    position[order[k]] = k;
  }
  std::size_t bandwidth = 0;
  for (std::size_t v = 0; v < size; ++v) {
    for (Label w : nb[v]) {
      const std::size_t pv = position[v], pw = position[w];
      bandwidth = std::max(bandwidth, pv > pw ? pv - pw : pw - pv);
    }
  }

  Spectrum out;
  out.n = size / 2;
  out.values.assign(size, 0.0);
  const auto lapack_n = static_cast<lapack_int>(size);

  const bool narrow = static_cast<double>(bandwidth) <
                      banded_solver_threshold * static_cast<double>(size);
  if (path == SolverPath::banded ||
      (path == SolverPath::automatic && narrow)) {
    // Lower band storage, column-major: ab[(i - j) + j * ldab] = A(i, j).
    const std::size_t ldab = bandwidth + 1;
    std::vector<double> ab(ldab * size, 0.0);
    for (std::size_t v = 0; v < size; ++v) {
      for (Label w : nb[v]) {
        const std::size_t i = position[v], j = position[w];
        if (i >= j) {
          ab[(i - j) + j * ldab] = a(v, w);
        }
      }
    }
    detail::check_info(
        LAPACKE_dsbev(LAPACK_COL_MAJOR, 'N', 'L', lapack_n,
                      static_cast<lapack_int>(bandwidth), ab.data(),
                      static_cast<lapack_int>(ldab), out.values.data(),
                      nullptr, 1),
        "dsbev");
  } else {
    std::vector<double> dense(size * size, 0.0);
    for (std::size_t v = 0; v < size; ++v) {
      for (Label w : nb[v]) {
        dense[v * size + w] = a(v, w);
      }
    }
    detail::check_info(LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', lapack_n,
                                     dense.data(), lapack_n,
                                     out.values.data()),
                       "dsyev");
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

} // namespace ofm

#endif // OFM_SPECTRA_HPP
