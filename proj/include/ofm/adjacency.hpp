#ifndef OFM_ADJACENCY_HPP
#define OFM_ADJACENCY_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ofm/error.hpp"
#include "ofm/gluing.hpp"

namespace ofm {

/*
 * Adjacency matrix of a three-regular multigraph C + P^T T P, stored as a
 * packed lower triangle (row-major, diagonal included). Entries count
 * parallel edges, so a glued pair that coincides with a cycle edge gives 2,
 * and the degenerate N = 1 gluing gives a single entry 3.
 */
class AdjacencyMatrix {
public:
  /// Builds from a dense row-major table; checks symmetry, zero diagonal and
  /// row sums of 3.
  static AdjacencyMatrix from_dense(std::size_t order,
                                    std::span<const int> entries) {
    if (order == 0 || entries.size() != order * order) {
      throw Error(ErrorKind::BadLength, "dense table is not order x order");
    }
    AdjacencyMatrix a(order);
    for (std::size_t i = 0; i < order; ++i) {
      int row_sum = 0;
      for (std::size_t j = 0; j < order; ++j) {
        const int v = entries[i * order + j];
        if (v < 0 || v > 3 || v != entries[j * order + i] ||
            (i == j && v != 0)) {
          throw Error(ErrorKind::OutOfRange,
                      "entry (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) +
                          ") breaks symmetry, zero diagonal or range 0..3");
        }
        row_sum += v;
        if (j <= i) {
          a.packed_[packed_index(i, j)] = static_cast<std::uint8_t>(v);
        }
      }
      if (row_sum != 3) {
        throw Error(ErrorKind::OutOfRange,
                    "row " + std::to_string(i + 1) + " sums to " +
                        std::to_string(row_sum));
      }
    }
    return a;
  }

  std::size_t order() const noexcept { return order_; }

  int operator()(std::size_t i, std::size_t j) const {
    return i >= j ? packed_[packed_index(i, j)] : packed_[packed_index(j, i)];
  }

  std::span<const std::uint8_t> packed() const noexcept { return packed_; }

  /// Neighbours of each vertex with multiplicity, ascending (three each).
  std::vector<std::array<Label, 3>> neighbor_table() const {
    std::vector<std::array<Label, 3>> table(order_);
    std::vector<int> filled(order_, 0);
    for (std::size_t i = 0; i < order_; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        for (int e = packed_[packed_index(i, j)]; e > 0; --e) {
          table[i][filled[i]++] = static_cast<Label>(j);
          table[j][filled[j]++] = static_cast<Label>(i);
        }
      }
    }
    for (auto &row : table) {
      std::sort(row.begin(), row.end());
    }
    return table;
  }

  friend bool operator==(const AdjacencyMatrix &,
                         const AdjacencyMatrix &) = default;

private:
  friend AdjacencyMatrix build_adjacency(const Gluing &g);

  explicit AdjacencyMatrix(std::size_t order)
      : order_(order), packed_(order * (order + 1) / 2, 0) {}

  static std::size_t packed_index(std::size_t i, std::size_t j) {
    return i * (i + 1) / 2 + j;
  }

  void add_edge(std::size_t i, std::size_t j) {
    packed_[i >= j ? packed_index(i, j) : packed_index(j, i)] += 1;
  }

  std::size_t order_;
  std::vector<std::uint8_t> packed_;
};

/// C + P^T T P: the 2N-cycle plus one edge per glued pair.
inline AdjacencyMatrix build_adjacency(const Gluing &g) {
  const std::size_t size = g.size();
  AdjacencyMatrix a(size);
  for (std::size_t i = 0; i < size; ++i) {
    a.add_edge(i, (i + 1) % size);
    if (i < g.partner(i)) {
      a.add_edge(i, g.partner(i));
    }
  }
  return a;
}

/// Recovers the matching by subtracting the cycle. Needs N >= 3 so that the
/// two cycle neighbours of every vertex are distinct.
inline Gluing gluing_from_adjacency(const AdjacencyMatrix &a) {
  const std::size_t size = a.order();
  if (size < 6) {
    throw Error(ErrorKind::OutOfRange,
                "matching is not recoverable from the matrix below N = 3");
  }
  std::vector<Label> partner(size, static_cast<Label>(size));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      int toothpick = a(i, j);
      if (j == (i + 1) % size || (j + 1) % size == i) {
        toothpick -= 1;
      }
      if (toothpick == 1) {
        partner[i] = static_cast<Label>(j);
      }
    }
  }
  return Gluing::from_zero_based(std::move(partner));
}

} // namespace ofm

#endif // OFM_ADJACENCY_HPP
