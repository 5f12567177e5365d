#ifndef FLATSHARP_EIGENFUNCTIONS_HPP
#define FLATSHARP_EIGENFUNCTIONS_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "flatsharp/spectrum.hpp"
#include "flatsharp/surfaces.hpp"

namespace flatsharp {

/// Trigonometric factor in x then y: cos-cos, sin-cos, cos-sin, sin-sin.
enum class ModeKind { cc, sc, cs, ss };

inline bool x_is_sin(ModeKind k) { return k == ModeKind::sc || k == ModeKind::ss; }
inline bool y_is_sin(ModeKind k) { return k == ModeKind::cs || k == ModeKind::ss; }

inline ModeKind make_kind(bool x_sin, bool y_sin) {
  if (x_sin) return y_sin ? ModeKind::ss : ModeKind::sc;
  return y_sin ? ModeKind::cs : ModeKind::cc;
}

inline std::string_view to_string(ModeKind k) {
  switch (k) {
    case ModeKind::cc: return "cc";
    case ModeKind::sc: return "sc";
    case ModeKind::cs: return "cs";
    case ModeKind::ss: return "ss";
  }
  return "?";
}

inline std::optional<ModeKind> parse_mode_kind(std::string_view s) {
  for (ModeKind k : {ModeKind::cc, ModeKind::sc, ModeKind::cs, ModeKind::ss}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// trig(m * x_frequency * x) * trig(n * y_frequency * y).
struct BasisMode {
  ModeKind kind = ModeKind::cc;
  long m = 0;
  long n = 0;

  friend auto operator<=>(const BasisMode&, const BasisMode&) = default;
};

struct Term {
  BasisMode mode;
  double coeff = 0.0;
};

/**
 * Finite combination of basis modes on one surface. Build through
 * make_eigenfunction to get admissibility and common-eigenvalue checks; the
 * aggregate form is left open so tests can express inadmissible combinations.
 */
struct Eigenfunction {
  SurfaceDescriptor surface;
  double eigenvalue = 0.0;
  std::vector<Term> terms;
};

/// Whether the mode belongs to the real eigenbasis of the surface.
inline bool is_admissible(const SurfaceDescriptor& s, const BasisMode& mode) {
  if (mode.m < 0 || mode.n < 0) return false;
  if (s.is_klein()) {
    if (mode.m == 0) return mode.kind == ModeKind::cc;
    if (mode.m % 2 == 0) return !y_is_sin(mode.kind);
    return y_is_sin(mode.kind) && mode.n >= 1;
  }
  if (mode.m < 1 || !x_is_sin(mode.kind)) return false;
  return !y_is_sin(mode.kind) || mode.n >= 1;
}

inline double mode_eigenvalue(const SurfaceDescriptor& s, const BasisMode& mode) {
  return s.eigenvalue_of(mode.m, mode.n);
}

inline double x_factor(const SurfaceDescriptor& s, const BasisMode& mode, double x) {
  const double arg = double(mode.m) * s.x_frequency() * x;
  return x_is_sin(mode.kind) ? std::sin(arg) : std::cos(arg);
}

inline double y_factor(const SurfaceDescriptor& s, const BasisMode& mode, double y) {
  const double arg = double(mode.n) * s.y_frequency() * y;
  return y_is_sin(mode.kind) ? std::sin(arg) : std::cos(arg);
}

inline double evaluate_mode(const SurfaceDescriptor& s, const BasisMode& mode, double x, double y) {
  return x_factor(s, mode, x) * y_factor(s, mode, y);
}

inline double evaluate(const Eigenfunction& f, double x, double y) {
  double sum = 0.0;
  for (const auto& t : f.terms) sum += t.coeff * evaluate_mode(f.surface, t.mode, x, y);
  return sum;
}

inline double coefficient_l1(const Eigenfunction& f) {
  double sum = 0.0;
  for (const auto& t : f.terms) sum += std::abs(t.coeff);
  return sum;
}

inline Eigenfunction make_eigenfunction(const SurfaceDescriptor& s, std::vector<Term> terms) {
  if (terms.empty()) throw std::invalid_argument("make_eigenfunction: no terms");
  bool any_nonzero = false;
  const double lambda = mode_eigenvalue(s, terms.front().mode);
  for (const auto& t : terms) {
    if (!is_admissible(s, t.mode)) {
      throw std::invalid_argument("make_eigenfunction: mode " + std::string(to_string(t.mode.kind)) +
                                  "(" + std::to_string(t.mode.m) + "," + std::to_string(t.mode.n) +
                                  ") is not admissible on " + describe(s));
    }
    if (std::abs(mode_eigenvalue(s, t.mode) - lambda) > 1e-9 * std::max(1.0, lambda)) {
      throw std::invalid_argument("make_eigenfunction: modes have different eigenvalues");
    }
    if (t.coeff != 0.0) any_nonzero = true;
  }
  if (!any_nonzero) throw std::invalid_argument("make_eigenfunction: all coefficients are zero");
  return {s, lambda, std::move(terms)};
}

/// Admissible real basis of the eigenspace of `entry`, in representation order.
inline std::vector<BasisMode> eigenspace_modes(const SurfaceDescriptor& s, const SpectrumEntry& entry) {
  std::vector<BasisMode> modes;
  for (const auto& rep : entry.reps) {
    if (s.is_klein()) {
      if (rep.m == 0) {
        modes.push_back({ModeKind::cc, 0, rep.n});
      } else if (rep.m % 2 == 0) {
        modes.push_back({ModeKind::cc, rep.m, rep.n});
        modes.push_back({ModeKind::sc, rep.m, rep.n});
      } else if (rep.n >= 1) {
        modes.push_back({ModeKind::cs, rep.m, rep.n});
        modes.push_back({ModeKind::ss, rep.m, rep.n});
      }
    } else if (rep.m >= 1) {
      modes.push_back({ModeKind::sc, rep.m, rep.n});
      if (rep.n >= 1) modes.push_back({ModeKind::ss, rep.m, rep.n});
    }
  }
  return modes;
}

/// Eigenfunction sum_i coeffs[i] modes[i]; sizes must match.
inline Eigenfunction combine(const SurfaceDescriptor& s, const std::vector<BasisMode>& modes,
                             const std::vector<double>& coeffs) {
  if (modes.size() != coeffs.size()) throw std::invalid_argument("combine: size mismatch");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < modes.size(); ++i) terms.push_back({modes[i], coeffs[i]});
  return make_eigenfunction(s, std::move(terms));
}

namespace detail {

inline Eigenfunction collect(const Eigenfunction& f, const std::map<BasisMode, double>& acc) {
  Eigenfunction out{f.surface, f.eigenvalue, {}};
  for (const auto& [mode, c] : acc) {
    if (c != 0.0) out.terms.push_back({mode, c});
  }
  return out;
}

}  // namespace detail

/// f(x + dx, y), re-expanded in the basis. An isometry of every Klein bottle.
inline Eigenfunction translate_x(const Eigenfunction& f, double dx) {
  if (!f.surface.is_klein()) throw std::invalid_argument("translate_x: Klein bottles only");
  std::map<BasisMode, double> acc;
  for (const auto& t : f.terms) {
    const double k = double(t.mode.m) * f.surface.x_frequency();
    const double c = std::cos(k * dx), sn = std::sin(k * dx);
    const bool ys = y_is_sin(t.mode.kind);
    const BasisMode cos_mode{make_kind(false, ys), t.mode.m, t.mode.n};
    const BasisMode sin_mode{make_kind(true, ys), t.mode.m, t.mode.n};
    if (t.mode.m == 0) {
      acc[t.mode] += t.coeff;
    } else if (x_is_sin(t.mode.kind)) {
      // sin(k(x+d)) = sin(kx) cos(kd) + cos(kx) sin(kd)
      acc[sin_mode] += t.coeff * c;
      acc[cos_mode] += t.coeff * sn;
    } else {
      // cos(k(x+d)) = cos(kx) cos(kd) - sin(kx) sin(kd)
      acc[cos_mode] += t.coeff * c;
      acc[sin_mode] -= t.coeff * sn;
    }
  }
  return detail::collect(f, acc);
}

/// f(x, y + dy) on a cylinder (rotation of the circle factor).
inline Eigenfunction rotate_y(const Eigenfunction& f, double dy) {
  if (!f.surface.is_cylinder()) throw std::invalid_argument("rotate_y: cylinders only");
  std::map<BasisMode, double> acc;
  for (const auto& t : f.terms) {
    const double k = double(t.mode.n) * f.surface.y_frequency();
    const double c = std::cos(k * dy), sn = std::sin(k * dy);
    const bool xs = x_is_sin(t.mode.kind);
    const BasisMode cos_mode{make_kind(xs, false), t.mode.m, t.mode.n};
    const BasisMode sin_mode{make_kind(xs, true), t.mode.m, t.mode.n};
    if (t.mode.n == 0) {
      acc[t.mode] += t.coeff;
    } else if (y_is_sin(t.mode.kind)) {
      acc[sin_mode] += t.coeff * c;
      acc[cos_mode] += t.coeff * sn;
    } else {
      acc[cos_mode] += t.coeff * c;
      acc[sin_mode] -= t.coeff * sn;
    }
  }
  return detail::collect(f, acc);
}

/// Checks f(x, y) == f(x + a/2, b - y) at pseudo-random points of the fundamental domain.
inline bool check_tau_invariance(const Eigenfunction& f, int samples, std::uint64_t seed = 0x5eed) {
  if (!f.surface.is_klein()) throw std::invalid_argument("check_tau_invariance: Klein bottles only");
  if (samples <= 0) throw std::invalid_argument("check_tau_invariance: samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, f.surface.domain_width());
  std::uniform_real_distribution<double> uy(0.0, f.surface.domain_height());
  for (int i = 0; i < samples; ++i) {
    const double x = ux(rng), y = uy(rng);
    const double lhs = evaluate(f, x, y);
    const double rhs = evaluate(f, x + f.surface.a / 2.0, f.surface.b - y);
    if (std::abs(lhs - rhs) >= 1e-10) return false;
  }
  return true;
}

/// sin(x - alpha) sin(y) on K1: eigenvalue 2.
inline Eigenfunction lambda3_family(double alpha) {
  const auto k1 = preset(Preset::k1);
  return make_eigenfunction(k1, {{{ModeKind::cs, 1, 1}, -std::sin(alpha)},
                                 {{ModeKind::ss, 1, 1}, std::cos(alpha)}});
}

/// cos(theta) cos(2x - alpha) + sin(theta) cos(2y) on K1: eigenvalue 4.
inline Eigenfunction lambda5_family(double theta, double alpha = 0.0) {
  const auto k1 = preset(Preset::k1);
  std::vector<Term> terms{{{ModeKind::cc, 2, 0}, std::cos(theta) * std::cos(alpha)}};
  if (alpha != 0.0) terms.push_back({{ModeKind::sc, 2, 0}, std::cos(theta) * std::sin(alpha)});
  terms.push_back({{ModeKind::cc, 0, 2}, std::sin(theta)});
  return make_eigenfunction(k1, std::move(terms));
}

/**
 * Points of [0, pi) x [0, 2 pi) where phi_theta and its gradient vanish:
 * sin 2x = sin 2y = 0 forces x in {0, pi/2}, y in {0, pi/2, pi, 3pi/2}, where
 * cos 2x and cos 2y are +-1; the function must vanish there too.
 */
inline std::vector<std::pair<double, double>> critical_zeros_lambda5(double theta) {
  std::vector<std::pair<double, double>> out;
  const double ct = std::cos(theta), st = std::sin(theta);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double cos2x = (i % 2 == 0) ? 1.0 : -1.0;
      const double cos2y = (j % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(ct * cos2x + st * cos2y) <= 1e-12) out.emplace_back(i * pi / 2.0, j * pi / 2.0);
    }
  }
  return out;
}

}  // namespace flatsharp

#endif  // FLATSHARP_EIGENFUNCTIONS_HPP
