#ifndef FLATSHARP_PLEIJEL_HPP
#define FLATSHARP_PLEIJEL_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatsharp/spectrum.hpp"
#include "flatsharp/surfaces.hpp"

namespace flatsharp {

/// J0 by its power series sum_k (-1)^k (x^2/4)^k / (k!)^2. Intended for |x| <= 5.
inline double bessel_j0(double x) {
  const double q = x * x / 4.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (double(k) * double(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

/// First positive zero of J0, by bisection on [2, 3].
inline double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;
  double f_lo = bessel_j0(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = bessel_j0(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct PleijelConstants {
  double j01 = 0.0;
  /// (2 / j01)^2, the asymptotic nodal-count ratio ceiling.
  double gamma2 = 0.0;
  double epsilon = 0.0;
};

inline PleijelConstants pleijel_constants(double epsilon = 0.0) {
  PleijelConstants c;
  c.j01 = bessel_j0_first_zero();
  c.gamma2 = (2.0 / c.j01) * (2.0 / c.j01);
  if (!(epsilon >= 0.0) || !(epsilon < 1.0 - 2.0 / c.j01)) {
    throw std::invalid_argument("pleijel_constants: epsilon must lie in [0, 1 - 2/j01)");
  }
  c.epsilon = epsilon;
  return c;
}

/// (1 - eps)^2 pi j01^2 / area: lower bound for lambda_k / k of a Courant-sharp
/// eigenvalue once k is past the Faber-Krahn label threshold.
inline double ratio_threshold(const SurfaceDescriptor& s, double epsilon = 0.0) {
  const auto c = pleijel_constants(epsilon);
  const double shrink = (1.0 - epsilon) * (1.0 - epsilon);
  return shrink * pi * c.j01 * c.j01 / s.area;
}

/// Smallest label for which some nodal domain of a k-domain eigenfunction is
/// small enough for Faber-Krahn: area / fk_area_threshold.
inline double k_threshold(const SurfaceDescriptor& s) { return s.area / s.fk_area_threshold; }

/// F(lambda) = leading lambda - sqrt_coeff sqrt(lambda) - constant.
struct BoundPolynomial {
  double leading = 0.0;
  double sqrt_coeff = 0.0;
  double constant = 0.0;

  double operator()(double lambda) const {
    return leading * lambda - sqrt_coeff * std::sqrt(lambda) - constant;
  }

  /// Square of the largest root in sqrt(lambda).
  double largest_root() const {
    if (!(leading > 0.0)) throw std::domain_error("BoundPolynomial: leading coefficient must be positive");
    const double disc = sqrt_coeff * sqrt_coeff + 4.0 * leading * constant;
    if (disc < 0.0) throw std::domain_error("BoundPolynomial: no real root");
    const double t = (sqrt_coeff + std::sqrt(disc)) / (2.0 * leading);
    if (!(t > 0.0)) throw std::domain_error("BoundPolynomial: no positive root");
    return t * t;
  }
};

/**
 * Combines k - 1 = W(lambda_k) >= leading lambda - A sqrt(lambda) - B with
 * k <= area lambda_k / ((1 - eps)^2 pi j01^2). A Courant-sharp lambda_k past
 * the label threshold satisfies F(lambda_k) <= 0.
 */
inline BoundPolynomial bound_polynomial(const SurfaceDescriptor& s, double epsilon = 0.0) {
  const auto c = pleijel_constants(epsilon);
  const WeylBound w = weyl_bound_constants(s);
  const double shrink = (1.0 - epsilon) * (1.0 - epsilon);
  BoundPolynomial f;
  f.leading = s.area / (4.0 * pi) * (1.0 - 4.0 / (shrink * c.j01 * c.j01));
  f.sqrt_coeff = w.sqrt_coeff;
  f.constant = w.constant - 1.0;
  return f;
}

inline double lambda_bound(const SurfaceDescriptor& s, double epsilon = 0.0) {
  return bound_polynomial(s, epsilon).largest_root();
}

/// Window endpoints as printed for the presets (K1 is strict: lambda < 25).
inline std::optional<double> stated_window(const SurfaceDescriptor& s) {
  if (!s.preset) return std::nullopt;
  switch (*s.preset) {
    case Preset::k1: return 25.0;
    case Preset::k2: return 47.0;
    case Preset::c_half: return 76.25;
    case Preset::c1: return 42.40;
  }
  return std::nullopt;
}

enum class FilterStatus { low_index, passes, ratio_excluded, bound_excluded };

inline const char* to_string(FilterStatus s) {
  switch (s) {
    case FilterStatus::low_index: return "low-index";
    case FilterStatus::passes: return "passes";
    case FilterStatus::ratio_excluded: return "ratio-excluded";
    case FilterStatus::bound_excluded: return "bound-excluded";
  }
  return "?";
}

struct CandidateRow {
  SpectrumEntry entry;
  double ratio = 0.0;
  FilterStatus status = FilterStatus::passes;
  bool survivor() const {
    return status == FilterStatus::low_index || status == FilterStatus::passes;
  }
};

struct PleijelReport {
  SurfaceDescriptor surface;
  double ratio_threshold = 0.0;
  /// Largest root of the bound polynomial.
  double lambda_bound = 0.0;
  /// Window used for exclusion: the stated preset window when known, else lambda_bound.
  double window = 0.0;
  /// K1's printed window excludes its endpoint.
  bool window_strict = false;
  double k_threshold = 0.0;

  bool in_window(double value) const { return window_strict ? value < window : value <= window; }
  std::vector<CandidateRow> rows;
  std::vector<SpectrumEntry> candidates;
  std::vector<SpectrumEntry> survivors;
};

/// Tolerance on the ratio test so that float noise never excludes a boundary case.
inline constexpr double ratio_slack = 1e-12;

/**
 * Finite-candidate reduction. An entry (its first label k_min) is excluded
 * when k_min >= k_threshold and either its ratio value / k_min is below the
 * threshold or the value lies beyond the window. `spectrum` must be a complete
 * prefix reaching the window.
 */
inline PleijelReport candidate_filter(const SurfaceDescriptor& s, const Spectrum& spectrum) {
  PleijelReport rep;
  rep.surface = s;
  rep.ratio_threshold = ratio_threshold(s);
  rep.lambda_bound = lambda_bound(s);
  rep.window = stated_window(s).value_or(rep.lambda_bound);
  rep.window_strict = s.preset == Preset::k1;
  rep.k_threshold = k_threshold(s);

  if (spectrum.empty() || spectrum.back().value < rep.window) {
    throw std::invalid_argument("candidate_filter: spectrum does not reach the window " +
                                std::to_string(rep.window));
  }
  for (const auto& e : spectrum) {
    CandidateRow row;
    row.entry = e;
    row.ratio = e.value / double(e.k_min);
    if (double(e.k_min) < rep.k_threshold) {
      row.status = rep.in_window(e.value) ? FilterStatus::low_index : FilterStatus::bound_excluded;
    } else if (row.ratio < rep.ratio_threshold - ratio_slack) {
      row.status = FilterStatus::ratio_excluded;
    } else if (!rep.in_window(e.value)) {
      row.status = FilterStatus::bound_excluded;
    } else {
      row.status = FilterStatus::passes;
    }
    if (rep.in_window(e.value)) rep.candidates.push_back(e);
    if (row.survivor()) rep.survivors.push_back(e);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Enumerates far enough past the window and filters.
inline PleijelReport candidate_filter(const SurfaceDescriptor& s) {
  const double window = stated_window(s).value_or(lambda_bound(s));
  double lambda_max = window + 1.0;
  for (;;) {
    auto spectrum = enumerate_spectrum(s, lambda_max);
    if (!spectrum.empty() && spectrum.back().value >= window) return candidate_filter(s, spectrum);
    lambda_max *= 2.0;
  }
}

}  // namespace flatsharp

#endif  // FLATSHARP_PLEIJEL_HPP
