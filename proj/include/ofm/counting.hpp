#ifndef OFM_COUNTING_HPP
#define OFM_COUNTING_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ofm/error.hpp"

namespace ofm {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Grows on demand under a lock; callers get copies.
class CatalanMemo {
public:
  BigCount get(std::size_t n) {
    std::lock_guard<std::mutex> lock(mutex_);
    while (values_.size() <= n) {
      const std::size_t k = values_.size();
      // C_k = (4k - 2) C_{k-1} / (k + 1), exact at every step.
      values_.push_back(values_.back() * (4 * k - 2) / (k + 1));
    }
    return values_[n];
  }

private:
  std::mutex mutex_;
  std::vector<BigCount> values_{BigCount(1)};
};

inline CatalanMemo &catalan_memo() {
  static CatalanMemo memo;
  return memo;
}

inline BigCount factorial(std::size_t n) {
  BigCount out = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    out *= k;
  }
  return out;
}

} // namespace detail

/// Number of non-crossing pair partitions of 2n nodes.
inline BigCount catalan(std::size_t n) { return detail::catalan_memo().get(n); }

/// (2n - 1)!!, the number of perfect matchings of 2n labels. (-1)!! = 1.
inline BigCount odd_double_factorial(std::size_t n) {
  BigCount out = 1;
  for (std::size_t k = 3; k < 2 * n; k += 2) {
    out *= k;
  }
  return out;
}

/// Probability that node 1 pairs with node 2m in a uniform non-crossing pair
/// partition of 2n nodes: C_{m-1} C_{n-m} / C_n, exactly.
inline Rational pmf(std::int64_t m, std::int64_t n) {
  if (n < 1 || m < 1 || m > n) {
    throw Error(ErrorKind::OutOfRange,
                "pmf(m, n) needs 1 <= m <= n, got m=" + std::to_string(m) +
                    " n=" + std::to_string(n));
  }
  const auto um = static_cast<std::size_t>(m);
  const auto un = static_cast<std::size_t>(n);
  return Rational(catalan(um - 1) * catalan(un - um), catalan(un));
}

/*
 * Truncated power series in y = x^2 with exact rational coefficients, i.e.
 * an even series in x. coefficient(k) is the coefficient of y^k = x^{2k};
 * everything above order() is unknown and dropped by every operation.
 */
class RationalSeries {
public:
  RationalSeries() = default;
  explicit RationalSeries(std::vector<Rational> coefficients)
      : c_(std::move(coefficients)) {
    if (c_.empty()) {
      c_.push_back(0);
    }
  }

  static RationalSeries one(std::size_t order) {
    std::vector<Rational> c(order + 1, Rational(0));
    c[0] = 1;
    return RationalSeries(std::move(c));
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  const Rational &coefficient(std::size_t k) const { return c_.at(k); }

  /// Coefficient of x^power; odd powers vanish.
  Rational x_coefficient(std::size_t power) const {
    if (power % 2 != 0) {
      return 0;
    }
    return coefficient(power / 2);
  }

  friend RationalSeries operator*(const RationalSeries &a,
                                  const RationalSeries &b) {
    const std::size_t order = std::min(a.order(), b.order());
    std::vector<Rational> c(order + 1, Rational(0));
    for (std::size_t i = 0; i <= order; ++i) {
      if (a.c_[i] == 0) {
        continue;
      }
      for (std::size_t j = 0; i + j <= order; ++j) {
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return RationalSeries(std::move(c));
  }

  friend RationalSeries operator/(const RationalSeries &num,
                                  const RationalSeries &den) {
    if (den.c_[0] == 0) {
      throw Error(ErrorKind::OutOfRange,
                  "series division needs a nonzero constant term");
    }
    const std::size_t order = std::min(num.order(), den.order());
    std::vector<Rational> q(order + 1, Rational(0));
    for (std::size_t k = 0; k <= order; ++k) {
      Rational acc = num.c_[k];
      for (std::size_t j = 1; j <= k; ++j) {
        acc -= den.c_[j] * q[k - j];
      }
      q[k] = acc / den.c_[0];
    }
    return RationalSeries(std::move(q));
  }

  RationalSeries pow(std::uint64_t exponent) const {
    RationalSeries result = one(order());
    RationalSeries base = *this;
    while (exponent > 0) {
      if (exponent & 1u) {
        result = result * base;
      }
      exponent >>= 1;
      if (exponent > 0) {
        base = base * base;
      }
    }
    return result;
  }

private:
  std::vector<Rational> c_{Rational(0)};
};

/// (x/2) / tanh(x/2) to order x^{2 order}, as cosh(x/2) / (sinh(x/2)/(x/2)).
inline RationalSeries half_x_coth_series(std::size_t order) {
  std::vector<Rational> cosh_c(order + 1), sinhc_c(order + 1);
  BigCount fact = 1; // (2k)!
  BigCount four = 1; // 4^k
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) {
      fact *= (2 * k - 1) * (2 * k);
      four *= 4;
    }
    cosh_c[k] = Rational(BigCount(1), four * fact);
    sinhc_c[k] = Rational(BigCount(1), four * fact * (2 * k + 1));
  }
  return RationalSeries(std::move(cosh_c)) / RationalSeries(std::move(sinhc_c));
}

namespace detail {

inline BigCount harer_zagier_from_power(const RationalSeries &powered,
                                        std::size_t g, std::size_t n) {
  Rational value = Rational(factorial(2 * n),
                            factorial(n + 1) * factorial(n - 2 * g)) *
                   powered.coefficient(g);
  if (denominator(value) != 1 || value < 0) {
    throw Error(ErrorKind::ParityViolation,
                "genus count is not a non-negative integer for g=" +
                    std::to_string(g) + " n=" + std::to_string(n));
  }
  return numerator(value);
}

} // namespace detail

/*
 * Number of genus-g one-face maps with n edges:
 *
 *   (2n)! / ((n+1)! (n-2g)!) * [x^{2g}] ((x/2) / tanh(x/2))^{n+1}
 *
 * evaluated in exact rational arithmetic.
 */
inline BigCount harer_zagier(std::size_t g, std::size_t n) {
  if (n < 1 || 2 * g > n) {
    throw Error(ErrorKind::OutOfRange,
                "harer_zagier needs n >= 1 and 2g <= n, got g=" +
                    std::to_string(g) + " n=" + std::to_string(n));
  }
  const RationalSeries powered = half_x_coth_series(g + 1).pow(n + 1);
  return detail::harer_zagier_from_power(powered, g, n);
}

/// Entry g is harer_zagier(g, n), for g = 0..floor(n/2).
inline std::vector<BigCount> genus_distribution(std::size_t n) {
  if (n < 1) {
    throw Error(ErrorKind::OutOfRange, "genus_distribution needs n >= 1");
  }
  const std::size_t g_max = n / 2;
  const RationalSeries powered = half_x_coth_series(g_max + 1).pow(n + 1);
  std::vector<BigCount> out;
  out.reserve(g_max + 1);
  for (std::size_t g = 0; g <= g_max; ++g) {
    out.push_back(detail::harer_zagier_from_power(powered, g, n));
  }
  return out;
}

} // namespace ofm

#endif // OFM_COUNTING_HPP
