#ifndef OFM_STATISTICS_HPP
#define OFM_STATISTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ofm/error.hpp"
#include "ofm/spectra.hpp"

namespace ofm {

/// f_k(x) = k sqrt(4(k-1) - x^2) / (2 pi (k^2 - x^2)) on |x| <= 2 sqrt(k-1).
inline double mckay_density(double x, int k) {
  if (k < 2) {
    throw Error(ErrorKind::OutOfRange, "McKay density needs k >= 2");
  }
  const double kk = k;
  const double inside = 4.0 * (kk - 1.0) - x * x;
  if (inside < 0.0) {
    return 0.0;
  }
  if (k == 2 && inside == 0.0) {
    return std::numeric_limits<double>::infinity(); // arcsine edge
  }
  return kk * std::sqrt(inside) / (2.0 * std::numbers::pi * (kk * kk - x * x));
}

/// Wigner surmise for the GOE, (pi/2) s exp(-pi s^2 / 4); mean one.
inline double goe_surmise_density(double s) {
  if (s < 0.0) {
    return 0.0;
  }
  return 0.5 * std::numbers::pi * s * std::exp(-0.25 * std::numbers::pi * s * s);
}

inline double goe_surmise_cdf(double s) {
  if (s <= 0.0) {
    return 0.0;
  }
  return -std::expm1(-0.25 * std::numbers::pi * s * s);
}

inline double exponential_density(double s) { return s < 0.0 ? 0.0 : std::exp(-s); }

inline double exponential_cdf(double s) { return s <= 0.0 ? 0.0 : -std::expm1(-s); }

enum class ReferenceKind { mckay, goe_surmise, exponential };

/// A named reference law with pdf, cdf and support [lower, upper].
struct ReferenceDensity {
  ReferenceKind kind;
  int k = 3; // McKay degree
  double lower = 0.0;
  double upper = 0.0;

  static ReferenceDensity mckay(int k) {
    if (k < 2) {
      throw Error(ErrorKind::OutOfRange, "McKay density needs k >= 2");
    }
    const double edge = 2.0 * std::sqrt(static_cast<double>(k - 1));
    return {ReferenceKind::mckay, k, -edge, edge};
  }
  static ReferenceDensity goe_surmise() {
    return {ReferenceKind::goe_surmise, 0, 0.0, INFINITY};
  }
  static ReferenceDensity exponential() {
    return {ReferenceKind::exponential, 0, 0.0, INFINITY};
  }

  std::string name() const {
    switch (kind) {
    case ReferenceKind::mckay: return "mckay_" + std::to_string(k);
    case ReferenceKind::goe_surmise: return "goe_surmise";
    case ReferenceKind::exponential: return "exponential";
    }
    return "unknown";
  }

  double pdf(double x) const {
    switch (kind) {
    case ReferenceKind::mckay: return mckay_density(x, k);
    case ReferenceKind::goe_surmise: return goe_surmise_density(x);
    case ReferenceKind::exponential: return exponential_density(x);
    }
    return 0.0;
  }

  double cdf(double x) const {
    switch (kind) {
    case ReferenceKind::mckay: {
      if (x <= lower) {
        return 0.0;
      }
      if (x >= upper) {
        return 1.0;
      }
      // Square-root endpoints; adaptive Gauss-Kronrod copes fine.
      const auto f = [this](double t) { return mckay_density(t, k); };
      using boost::math::quadrature::gauss_kronrod;
      const double value =
          gauss_kronrod<double, 31>::integrate(f, lower, x, 15, 1e-12);
      return std::clamp(value, 0.0, 1.0);
    }
    case ReferenceKind::goe_surmise: return goe_surmise_cdf(x);
    case ReferenceKind::exponential: return exponential_cdf(x);
    }
    return 0.0;
  }
};

/*
 * Area-normalised histogram. Samples outside [edges.front(), edges.back()]
 * are counted in `outside` and excluded from the normalisation, so the
 * heights always integrate to one over the binned range.
 */
struct HistogramDensity {
  std::vector<double> bin_edges;
  std::vector<double> densities;
  std::size_t sample_count = 0;
  std::size_t outside = 0;

  std::size_t bins() const noexcept { return densities.size(); }
  double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
  double center(std::size_t i) const {
    return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  }
  std::vector<double> centers() const {
    std::vector<double> out(bins());
    for (std::size_t i = 0; i < bins(); ++i) {
      out[i] = center(i);
    }
    return out;
  }
  double integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i < bins(); ++i) {
      total += densities[i] * width(i);
    }
    return total;
  }
};

/// Uniform bins on [lo, hi]. Values within 1e-9 * (hi - lo) of the range are
/// clamped into the end bins (eigenvalues +-3 land on the edge).
inline HistogramDensity histogram_density(std::span<const double> samples,
                                          std::size_t bins, double lo,
                                          double hi) {
  if (bins < 1 || !(hi > lo)) {
    throw Error(ErrorKind::OutOfRange, "histogram needs bins >= 1 and lo < hi");
  }
  HistogramDensity h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(bins);
  }
  std::vector<std::size_t> counts(bins, 0);
  const double slack = 1e-9 * (hi - lo);
  for (double x : samples) {
    if (x < lo - slack || x > hi + slack) {
      ++h.outside;
      continue;
    }
    auto bin = static_cast<std::ptrdiff_t>(
        std::floor((x - lo) / (hi - lo) * static_cast<double>(bins)));
    bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
    ++counts[static_cast<std::size_t>(bin)];
    ++h.sample_count;
  }
  if (h.sample_count == 0) {
    throw Error(ErrorKind::EmptySample, "no samples fall inside the histogram");
  }
  h.densities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    h.densities[i] = static_cast<double>(counts[i]) /
                     (static_cast<double>(h.sample_count) * h.width(i));
  }
  return h;
}

inline constexpr double default_bulk_fraction = 0.8;
inline constexpr std::size_t default_bins = 100;

/// Pooled eigenvalue density over an ensemble, default 100 bins on [-3, 3].
inline HistogramDensity empirical_density(std::span<const Spectrum> spectra,
                                          std::size_t bins = default_bins,
                                          double lo = -3.0, double hi = 3.0) {
  if (spectra.empty()) {
    throw Error(ErrorKind::EmptyEnsemble, "empirical_density of no spectra");
  }
  std::vector<double> pooled;
  for (const auto &s : spectra) {
    pooled.insert(pooled.end(), s.values.begin(), s.values.end());
  }
  return histogram_density(pooled, bins, lo, hi);
}

/*
 * Consecutive differences of the central bulk_fraction of the ordered
 * values, divided by their mean. The window keeps round(fraction * L)
 * values, centred (extra value dropped from the top when L - kept is odd).
 */
inline std::vector<double> bulk_spacings(std::span<const double> sorted_values,
                                         double bulk_fraction = default_bulk_fraction) {
  if (!(bulk_fraction > 0.0 && bulk_fraction <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "bulk_fraction must lie in (0, 1]");
  }
  const std::size_t total = sorted_values.size();
  const auto kept = static_cast<std::size_t>(
      std::llround(bulk_fraction * static_cast<double>(total)));
  if (kept < 2) {
    throw Error(ErrorKind::DegenerateSpectrum,
                "bulk window holds fewer than two eigenvalues");
  }
  const std::size_t first = (total - kept) / 2;
  std::vector<double> spacings(kept - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < kept; ++i) {
    spacings[i] = sorted_values[first + i + 1] - sorted_values[first + i];
    if (spacings[i] < 0.0) {
      throw Error(ErrorKind::OutOfRange, "bulk_spacings needs sorted values");
    }
    sum += spacings[i];
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorKind::DegenerateSpectrum, "all bulk spacings are zero");
  }
  const double mean = sum / static_cast<double>(spacings.size());
  for (double &s : spacings) {
    s /= mean;
  }
  return spacings;
}

inline std::vector<double> bulk_spacings(const Spectrum &s,
                                         double bulk_fraction = default_bulk_fraction) {
  return bulk_spacings(std::span<const double>(s.values), bulk_fraction);
}

/// Per-graph scaled bulk spacings, pooled in ensemble order.
inline std::vector<double> pooled_spacings(std::span<const Spectrum> spectra,
                                           double bulk_fraction = default_bulk_fraction) {
  if (spectra.empty()) {
    throw Error(ErrorKind::EmptyEnsemble, "no spectra to take spacings from");
  }
  std::vector<double> pooled;
  for (const auto &s : spectra) {
    const auto one = bulk_spacings(s, bulk_fraction);
    pooled.insert(pooled.end(), one.begin(), one.end());
  }
  return pooled;
}

/// Histogram of pooled scaled spacings, default 100 bins on [0, 4].
inline HistogramDensity spacing_distribution(std::span<const Spectrum> spectra,
                                             double bulk_fraction = default_bulk_fraction,
                                             std::size_t bins = default_bins,
                                             double lo = 0.0, double hi = 4.0) {
  const auto pooled = pooled_spacings(spectra, bulk_fraction);
  return histogram_density(pooled, bins, lo, hi);
}

/// Entry j - 1 is the ensemble mean of lambda_{j+1} - lambda_j (unscaled).
inline std::vector<double> mean_jth_spacing(std::span<const Spectrum> spectra) {
  if (spectra.empty()) {
    throw Error(ErrorKind::EmptyEnsemble, "mean_jth_spacing of no spectra");
  }
  const std::size_t length = spectra.front().size();
  if (length < 2) {
    throw Error(ErrorKind::DegenerateSpectrum, "spectra need two values");
  }
  std::vector<double> mean(length - 1, 0.0);
  for (const auto &s : spectra) {
    if (s.size() != length) {
      throw Error(ErrorKind::MixedSizes,
                  "spectra of lengths " + std::to_string(length) + " and " +
                      std::to_string(s.size()) + " in one ensemble");
    }
    for (std::size_t j = 0; j + 1 < length; ++j) {
      mean[j] += s.values[j + 1] - s.values[j];
    }
  }
  for (double &m : mean) {
    m /= static_cast<double>(spectra.size());
  }
  return mean;
}

/// sup |F_n - F| for the empirical CDF F_n of `samples`.
template <class Cdf>
double ks_distance(std::span<const double> samples, Cdf &&cdf) {
  if (samples.empty()) {
    throw Error(ErrorKind::EmptySample, "ks_distance of no samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double gap = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double di = static_cast<double>(i);
    gap = std::max({gap, (di + 1.0) / n - f, f - di / n});
  }
  return gap;
}

/// sum |density - pdf(center)| * width.
template <class Pdf>
  requires std::is_invocable_r_v<double, Pdf, double>
double l1_histogram_distance(const HistogramDensity &h, Pdf &&pdf) {
  if (h.bins() == 0) {
    throw Error(ErrorKind::EmptySample, "empty histogram");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < h.bins(); ++i) {
    total += std::abs(h.densities[i] - pdf(h.center(i))) * h.width(i);
  }
  return total;
}

/// sum |a - b| * width for two histograms on identical bins.
inline double l1_histogram_distance(const HistogramDensity &a,
                                    const HistogramDensity &b) {
  if (a.bin_edges != b.bin_edges) {
    throw Error(ErrorKind::MixedSizes, "histograms have different bins");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.bins(); ++i) {
    total += std::abs(a.densities[i] - b.densities[i]) * a.width(i);
  }
  return total;
}

struct Peak {
  double location;
  double height;
  double prominence;
};

/*
 * Interior local maxima (plateaus count once, located at their midpoint) whose
 * topographic prominence reaches min_prominence, sorted by location.
 * Maxima touching either end of the histogram are not reported.
 */
inline std::vector<Peak> find_peaks(const HistogramDensity &h,
                                    double min_prominence) {
  const auto &d = h.densities;
  const std::size_t bins = d.size();
  if (bins < 3) {
    throw Error(ErrorKind::OutOfRange, "find_peaks needs at least 3 bins");
  }
  std::vector<Peak> peaks;
  std::size_t i = 1;
  while (i + 1 < bins) {
    if (!(d[i] > d[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < bins && d[j + 1] == d[i]) {
      ++j;
    }
    if (j + 1 >= bins || !(d[j + 1] < d[i])) {
      i = j + 1;
      continue;
    }
    const double height = d[i];
    double left_min = height;
    for (std::size_t k = i; k-- > 0;) {
      if (d[k] > height) {
        break;
      }
      left_min = std::min(left_min, d[k]);
    }
    double right_min = height;
    for (std::size_t k = j + 1; k < bins; ++k) {
      if (d[k] > height) {
        break;
      }
      right_min = std::min(right_min, d[k]);
    }
    const double prominence = height - std::max(left_min, right_min);
    if (prominence >= min_prominence) {
      peaks.push_back({0.5 * (h.center(i) + h.center(j)), height, prominence});
    }
    i = j + 1;
  }
  return peaks;
}

} // namespace ofm

#endif // OFM_STATISTICS_HPP
