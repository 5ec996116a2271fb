#ifndef OFM_GLUING_HPP
#define OFM_GLUING_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ofm/error.hpp"

namespace ofm {

using Label = std::uint32_t;

namespace detail {

inline void check_gluing_zero_based(std::span<const Label> partner) {
  const std::size_t size = partner.size();
  if (size == 0 || size % 2 != 0) {
    throw Error(ErrorKind::BadLength,
                "gluing needs an even, positive number of labels, got " +
                    std::to_string(size));
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (partner[i] >= size) {
      throw Error(ErrorKind::NotInvolution,
                  "label " + std::to_string(i + 1) + " is glued to " +
                      std::to_string(std::size_t{partner[i]} + 1) +
                      ", outside 1.." + std::to_string(size));
    }
    if (partner[i] == i) {
      throw Error(ErrorKind::HasFixedPoint,
                  "label " + std::to_string(i + 1) + " is glued to itself");
    }
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (partner[partner[i]] != i) {
      throw Error(ErrorKind::NotInvolution,
                  "partner(partner(" + std::to_string(i + 1) +
                      ")) != " + std::to_string(i + 1));
    }
  }
}

} // namespace detail

/*
 * A gluing of the edges of a 2N-gon: a fixed-point-free involution on the
 * edge labels. Equivalently the toothpick (perfect matching) part of the
 * three-regular graph C + P^T T P, or a pair partition of 2N nodes.
 *
 * Labels are 1-based at the API boundary (from_partners / one_based) and
 * 0-based through partner().
 */
class Gluing {
public:
  /// Validates and wraps a 1-based partner table.
  static Gluing from_partners(std::span<const Label> one_based) {
    std::vector<Label> partner(one_based.size());
    for (std::size_t i = 0; i < one_based.size(); ++i) {
      if (one_based[i] == 0) {
        throw Error(ErrorKind::NotInvolution,
                    "label " + std::to_string(i + 1) + " is glued to 0");
      }
      partner[i] = one_based[i] - 1;
    }
    return from_zero_based(std::move(partner));
  }

  static Gluing from_partners(std::initializer_list<Label> one_based) {
    return from_partners(std::span<const Label>(one_based.begin(),
                                                one_based.size()));
  }

  static Gluing from_zero_based(std::vector<Label> partner) {
    detail::check_gluing_zero_based(partner);
    return Gluing(std::move(partner));
  }

  /// Number of polygon edges glued in pairs, i.e. N.
  std::size_t n() const noexcept { return partner_.size() / 2; }
  /// Number of labels, 2N.
  std::size_t size() const noexcept { return partner_.size(); }

  Label partner(std::size_t i) const { return partner_[i]; }
  std::span<const Label> partners() const noexcept { return partner_; }

  std::vector<Label> one_based() const {
    std::vector<Label> out(partner_.size());
    for (std::size_t i = 0; i < partner_.size(); ++i) {
      out[i] = partner_[i] + 1;
    }
    return out;
  }

  /// The N unordered pairs {i, partner(i)} with i < partner(i), 1-based,
  /// sorted by first element.
  std::vector<std::pair<Label, Label>> pairs() const {
    std::vector<std::pair<Label, Label>> out;
    out.reserve(n());
    for (std::size_t i = 0; i < partner_.size(); ++i) {
      if (i < partner_[i]) {
        out.emplace_back(static_cast<Label>(i + 1), partner_[i] + 1);
      }
    }
    return out;
  }

  friend bool operator==(const Gluing &, const Gluing &) = default;
  friend auto operator<=>(const Gluing &, const Gluing &) = default;

private:
  explicit Gluing(std::vector<Label> partner) : partner_(std::move(partner)) {}

  std::vector<Label> partner_;
};

/// Checks the gluing invariants on a 1-based partner table; throws
/// BadLength, HasFixedPoint or NotInvolution.
inline void validate_gluing(std::span<const Label> one_based) {
  (void)Gluing::from_partners(one_based);
}

/*
 * Conjugates the standard toothpick involution t(2k-1) = 2k by a
 * permutation of 1..2N: labels i and j are glued iff perm(i) and perm(j)
 * are toothpick-adjacent. This is the matching read off from P^T T P.
 */
inline Gluing gluing_from_permutation(std::span<const Label> perm) {
  const std::size_t size = perm.size();
  if (size == 0 || size % 2 != 0) {
    throw Error(ErrorKind::BadLength,
                "permutation of 1..2N needs even positive length, got " +
                    std::to_string(size));
  }
  std::vector<Label> inverse(size, 0);
  std::vector<bool> seen(size, false);
  for (std::size_t i = 0; i < size; ++i) {
    const Label image = perm[i];
    if (image < 1 || image > size || seen[image - 1]) {
      throw Error(ErrorKind::NotAPermutation,
                  "value " + std::to_string(image) + " at position " +
                      std::to_string(i + 1) + " breaks bijectivity on 1.." +
                      std::to_string(size));
    }
    seen[image - 1] = true;
    inverse[image - 1] = static_cast<Label>(i);
  }
  std::vector<Label> partner(size);
  for (std::size_t i = 0; i < size; ++i) {
    const Label image = perm[i] - 1;  // 0-based
    const Label toothpick = image ^ 1u; // 0<->1, 2<->3, ...
    partner[i] = inverse[toothpick];
  }
  return Gluing::from_zero_based(std::move(partner));
}

inline Gluing gluing_from_permutation(std::initializer_list<Label> perm) {
  return gluing_from_permutation(
      std::span<const Label>(perm.begin(), perm.size()));
}

} // namespace ofm

#endif // OFM_GLUING_HPP
