#ifndef FLATSHARP_SPECTRUM_HPP
#define FLATSHARP_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "flatsharp/surfaces.hpp"

namespace flatsharp {

/// A lattice point (m, n) and the number of independent real eigenfunctions
/// it contributes to its eigenvalue.
struct Representation {
  long m = 0;
  long n = 0;
  int contribution = 0;

  friend bool operator==(const Representation&, const Representation&) = default;
};

/// One distinct eigenvalue, labels k_min..k_max (1-based, multiplicities counted).
struct SpectrumEntry {
  double value = 0.0;
  int multiplicity = 0;
  int k_min = 0;
  int k_max = 0;
  std::vector<Representation> reps;
};

using Spectrum = std::vector<SpectrumEntry>;

/// Klein bottle: m = 0 gives cos(2 pi n y / b) only; even m >= 2 gives a cos
/// and a sin in x for every n; odd m needs n >= 1. Cylinder: sin(m x) times
/// cos(n y / r) for n >= 0 and sin(n y / r) for n >= 1.
inline int contribution(const SurfaceDescriptor& s, long m, long n) {
  if (m < 0 || n < 0) return 0;
  if (s.is_klein()) {
    if (m == 0) return 1;
    if (n >= 1) return 2;
    return (m % 2 == 0) ? 2 : 0;
  }
  if (m == 0) return 0;
  return n == 0 ? 1 : 2;
}

namespace detail {

/// Non-negative integer if x is one to within rounding, else -1.
inline std::int64_t integral_coefficient(double x) {
  double rounded = std::round(x);
  if (rounded >= 1.0 && std::abs(x - rounded) <= 1e-12 * rounded) {
    return static_cast<std::int64_t>(rounded);
  }
  return -1;
}

inline void check_lambda(double lambda, const char* where) {
  if (!std::isfinite(lambda) || lambda < 0.0) {
    throw std::invalid_argument(std::string(where) + ": lambda must be finite and non-negative");
  }
}

}  // namespace detail

/**
 * All distinct eigenvalues strictly below lambda_max, sorted, with
 * multiplicities, label ranges and the lattice points producing them.
 *
 * When both eigenvalue coefficients are integers (every preset) values are
 * grouped by exact integer keys; otherwise by a relative tolerance of 1e-12.
 */
inline Spectrum enumerate_spectrum(const SurfaceDescriptor& s, double lambda_max) {
  if (!std::isfinite(lambda_max) || lambda_max <= 0.0) {
    throw std::invalid_argument("enumerate_spectrum: lambda_max must be positive and finite");
  }
  const double xc = s.x_coefficient();
  const double yc = s.y_coefficient();
  const std::int64_t xi = detail::integral_coefficient(xc);
  const std::int64_t yi = detail::integral_coefficient(yc);
  const bool exact = xi > 0 && yi > 0;

  struct Point {
    std::int64_t key;
    double value;
    Representation rep;
  };
  std::vector<Point> points;
  for (long m = 0; xc * double(m) * double(m) < lambda_max; ++m) {
    for (long n = 0;; ++n) {
      const double value = s.eigenvalue_of(m, n);
      if (value >= lambda_max) break;
      const int c = contribution(s, m, n);
      if (c == 0) continue;
      const std::int64_t key = exact ? xi * m * m + yi * n * n : 0;
      points.push_back({key, exact ? double(key) : value, {m, n, c}});
    }
  }
  std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) {
    if (p.value != q.value) return p.value < q.value;
    if (p.rep.m != q.rep.m) return p.rep.m < q.rep.m;
    return p.rep.n < q.rep.n;
  });

  Spectrum out;
  int next_label = 1;
  for (std::size_t i = 0; i < points.size();) {
    std::size_t j = i;
    SpectrumEntry e;
    e.value = points[i].value;
    while (j < points.size() &&
           (exact ? points[j].key == points[i].key
                  : std::abs(points[j].value - points[i].value) <=
                        1e-12 * std::max(1.0, points[i].value))) {
      e.reps.push_back(points[j].rep);
      e.multiplicity += points[j].rep.contribution;
      ++j;
    }
    e.k_min = next_label;
    e.k_max = next_label + e.multiplicity - 1;
    next_label = e.k_max + 1;
    out.push_back(std::move(e));
    i = j;
  }
  return out;
}

/// Number of labels j with lambda_j < lambda in an enumerated spectrum.
inline long count_below(const Spectrum& spectrum, double lambda) {
  long count = 0;
  for (const auto& e : spectrum) {
    if (e.value >= lambda) break;
    count += e.multiplicity;
  }
  return count;
}

/// L(lambda) = #{(m, n) in N^2 : x_coefficient m^2 + y_coefficient n^2 < lambda}.
inline long lattice_count(const SurfaceDescriptor& s, double lambda) {
  detail::check_lambda(lambda, "lattice_count");
  long count = 0;
  for (long m = 0; s.eigenvalue_of(m, 0) < lambda; ++m) {
    for (long n = 0; s.eigenvalue_of(m, n) < lambda; ++n) ++count;
  }
  return count;
}

/// Weyl counting function W(lambda) = #{j : lambda_j < lambda}, by enumeration.
inline long weyl_exact(const SurfaceDescriptor& s, double lambda) {
  detail::check_lambda(lambda, "weyl_exact");
  if (lambda == 0.0) return 0;
  return count_below(enumerate_spectrum(s, lambda), lambda);
}

/**
 * Klein-bottle Weyl count through the lattice count:
 *   W = 2 L - 2 P - Q + 2 E - 1
 * with P, Q, E the numbers of positive m, n, m' such that the points (m, 0),
 * (0, n), (2 m', 0) lie strictly below lambda. For lambda not on those axes'
 * eigenvalues, P = floor(sqrt(lambda)), Q = floor(sqrt(lambda)/c),
 * E = floor(sqrt(lambda)/2).
 */
inline long weyl_closed_form(const SurfaceDescriptor& s, double lambda) {
  if (!s.is_klein()) throw std::invalid_argument("weyl_closed_form: Klein bottles only");
  detail::check_lambda(lambda, "weyl_closed_form");
  if (lambda == 0.0) return 0;
  long p = 0, q = 0, e = 0;
  while (s.eigenvalue_of(p + 1, 0) < lambda) ++p;
  while (s.eigenvalue_of(0, q + 1) < lambda) ++q;
  while (s.eigenvalue_of(2 * (e + 1), 0) < lambda) ++e;
  return 2 * lattice_count(s, lambda) - 2 * p - q + 2 * e - 1;
}

/// W(lambda) >= leading lambda - sqrt_coeff sqrt(lambda) - constant.
struct WeylBound {
  double leading = 0.0;
  double sqrt_coeff = 0.0;
  double constant = 0.0;

  double operator()(double lambda) const {
    return leading * lambda - sqrt_coeff * std::sqrt(lambda) - constant;
  }
};

/// Explicit Weyl lower bounds: K1, K2 from the lattice-count argument;
/// cylinders (pi r / 2) lambda - (2 r + 1) sqrt(lambda) - 2.
inline WeylBound weyl_bound_constants(const SurfaceDescriptor& s) {
  if (s.is_cylinder()) return {pi * s.r / 2.0, 2.0 * s.r + 1.0, 2.0};
  if (s.preset == Preset::k1) return {pi / 2.0, 2.0, 3.0};
  if (s.preset == Preset::k2) return {pi / 4.0, 1.5, 2.0};
  throw std::invalid_argument("weyl_lower_bound: no explicit bound for " + describe(s));
}

inline double weyl_lower_bound(const SurfaceDescriptor& s, double lambda) {
  detail::check_lambda(lambda, "weyl_lower_bound");
  return weyl_bound_constants(s)(lambda);
}

struct WeylValue {
  double lambda = 0.0;
  long count_exact = 0;
  double count_lower_bound = 0.0;
};

inline WeylValue weyl_value(const SurfaceDescriptor& s, double lambda) {
  return {lambda, weyl_exact(s, lambda), weyl_lower_bound(s, lambda)};
}

/// The entry whose value matches `value` (relative 1e-9), if any.
inline const SpectrumEntry* find_entry(const Spectrum& spectrum, double value) {
  for (const auto& e : spectrum) {
    if (std::abs(e.value - value) <= 1e-9 * std::max(1.0, std::abs(value))) return &e;
  }
  return nullptr;
}

}  // namespace flatsharp

#endif  // FLATSHARP_SPECTRUM_HPP
