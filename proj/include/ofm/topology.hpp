#ifndef OFM_TOPOLOGY_HPP
#define OFM_TOPOLOGY_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "ofm/adjacency.hpp"
#include "ofm/error.hpp"
#include "ofm/gluing.hpp"

namespace ofm {

/*
 * Vertices of the embedded graph of a one-face map. Each cycle is an orbit
 * of i -> partner(i + 1 mod 2N) (0-based labels here); its length is the
 * degree of that vertex.
 */
struct VertexCycles {
  std::vector<std::vector<Label>> cycles;

  std::size_t count() const noexcept { return cycles.size(); }
};

inline VertexCycles vertex_cycles(const Gluing &g) {
  const std::size_t size = g.size();
  VertexCycles out;
  std::vector<bool> seen(size, false);
  for (std::size_t start = 0; start < size; ++start) {
    if (seen[start]) {
      continue;
    }
    std::vector<Label> cycle;
    std::size_t i = start;
    while (!seen[i]) {
      seen[i] = true;
      cycle.push_back(static_cast<Label>(i));
      i = g.partner((i + 1) % size);
    }
    out.cycles.push_back(std::move(cycle));
  }
  return out;
}

namespace detail {

inline std::size_t count_vertex_cycles(const Gluing &g) {
  const std::size_t size = g.size();
  std::vector<bool> seen(size, false);
  std::size_t count = 0;
  for (std::size_t start = 0; start < size; ++start) {
    if (seen[start]) {
      continue;
    }
    ++count;
    for (std::size_t i = start; !seen[i]; i = g.partner((i + 1) % size)) {
      seen[i] = true;
    }
  }
  return count;
}

} // namespace detail

/// Euler's formula with one face and N edges: V - N + 1 = 2 - 2g.
inline std::size_t genus(const Gluing &g) {
  const std::size_t vertices = detail::count_vertex_cycles(g);
  const std::size_t n = g.n();
  if (vertices > n + 1 || (n + 1 - vertices) % 2 != 0) {
    throw Error(ErrorKind::ParityViolation,
                "N + 1 - V is not a non-negative even number (N=" +
                    std::to_string(n) + ", V=" + std::to_string(vertices) +
                    ")");
  }
  return (n + 1 - vertices) / 2;
}

/// True iff no two pairs interleave as a < c < b < d.
inline bool is_noncrossing(const Gluing &g) {
  std::vector<Label> open;
  open.reserve(g.n());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Label j = g.partner(i);
    if (j > i) {
      open.push_back(static_cast<Label>(i));
    } else {
      if (open.empty() || open.back() != j) {
        return false;
      }
      open.pop_back();
    }
  }
  return true;
}

/// Breadth-first 2-colouring over nonzero entries.
inline bool is_bipartite(const AdjacencyMatrix &a) {
  const auto neighbors = a.neighbor_table();
  const std::size_t size = a.order();
  std::vector<int> colour(size, -1);
  std::queue<std::size_t> frontier;
  for (std::size_t root = 0; root < size; ++root) {
    if (colour[root] >= 0) {
      continue;
    }
    colour[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (Label w : neighbors[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          frontier.push(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// degree -> number of vertices of the embedded graph with that degree.
inline std::map<std::size_t, std::size_t> degree_distribution(const Gluing &g) {
  std::map<std::size_t, std::size_t> out;
  for (const auto &cycle : vertex_cycles(g).cycles) {
    ++out[cycle.size()];
  }
  return out;
}

inline constexpr std::size_t max_exact_walk_length = 20;

/*
 * w_r = trace(A^r) for r = 1..r_max: the number of closed walks of length r.
 * Column r of A^r e_i is carried as a dense vector of exact counts; every
 * addition is overflow-checked.
 */
inline std::vector<std::int64_t> closed_walk_counts(const AdjacencyMatrix &a,
                                                    std::size_t r_max) {
  if (r_max < 1 || r_max > max_exact_walk_length) {
    throw Error(ErrorKind::OutOfRange,
                "closed_walk_counts supports 1 <= r_max <= " +
                    std::to_string(max_exact_walk_length) + ", got " +
                    std::to_string(r_max));
  }
  const auto neighbors = a.neighbor_table();
  const std::size_t size = a.order();
  std::vector<std::int64_t> walks(r_max, 0);
  std::vector<std::int64_t> current(size), next(size);
  auto checked_add = [](std::int64_t x, std::int64_t y) {
    std::int64_t out;
    if (__builtin_add_overflow(x, y, &out)) {
      throw Error(ErrorKind::Overflow, "closed walk count exceeds 64 bits");
    }
    return out;
  };
  for (std::size_t start = 0; start < size; ++start) {
    std::fill(current.begin(), current.end(), 0);
    current[start] = 1;
    for (std::size_t r = 0; r < r_max; ++r) {
      for (std::size_t v = 0; v < size; ++v) {
        const auto &nb = neighbors[v];
        next[v] = checked_add(checked_add(current[nb[0]], current[nb[1]]),
                              current[nb[2]]);
      }
      current.swap(next);
      walks[r] = checked_add(walks[r], current[start]);
    }
  }
  return walks;
}

} // namespace ofm

#endif // OFM_TOPOLOGY_HPP
