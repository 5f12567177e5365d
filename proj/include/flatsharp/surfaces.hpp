#ifndef FLATSHARP_SURFACES_HPP
#define FLATSHARP_SURFACES_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatsharp {

inline constexpr double pi = std::numbers::pi;

enum class SurfaceKind { klein_bottle, cylinder_dirichlet };

/// The four surfaces with complete results: Klein bottles K1, K2 and the
/// Dirichlet cylinders of radius 1/2 and 1.
enum class Preset { k1, k2, c_half, c1 };

/**
 * A flat surface together with the geometric constants the rest of the
 * pipeline needs.
 *
 * Klein bottle K_{a,b}: quotient of R^2 by (x,y) -> (x, y+b) and
 * (x,y) -> (x + a/2, b - y). Fundamental domain (0, a/2) x (0, b).
 *
 * Cylinder C_r: (0, pi) x S^1_r with Dirichlet ends. Fundamental domain
 * (0, pi) x (0, 2 pi r), periodic in y.
 */
struct SurfaceDescriptor {
  SurfaceKind kind = SurfaceKind::klein_bottle;
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;
  double area = 0.0;
  double systole = 0.0;
  /// Largest area for which the Euclidean Faber-Krahn inequality is used.
  double fk_area_threshold = 0.0;
  std::optional<Preset> preset;

  bool is_klein() const { return kind == SurfaceKind::klein_bottle; }
  bool is_cylinder() const { return kind == SurfaceKind::cylinder_dirichlet; }

  /// Width of the fundamental domain (x direction).
  double domain_width() const { return is_klein() ? a / 2.0 : pi; }
  /// Height of the fundamental domain (y direction, always periodic).
  double domain_height() const { return is_klein() ? b : 2.0 * pi * r; }

  /// Angular frequency of index m in the x factor of a basis mode.
  double x_frequency() const { return is_klein() ? 2.0 * pi / a : 1.0; }
  /// Angular frequency of index n in the y factor of a basis mode.
  double y_frequency() const { return is_klein() ? 2.0 * pi / b : 1.0 / r; }

  /// Eigenvalue of lattice point (m, n): x_coefficient m^2 + y_coefficient n^2.
  double x_coefficient() const { return x_frequency() * x_frequency(); }
  double y_coefficient() const { return y_frequency() * y_frequency(); }

  double eigenvalue_of(long m, long n) const {
    return x_coefficient() * double(m) * double(m) + y_coefficient() * double(n) * double(n);
  }
};

/// Geometric equality; ignores the preset tag.
inline bool same_geometry(const SurfaceDescriptor& lhs, const SurfaceDescriptor& rhs) {
  return lhs.kind == rhs.kind && lhs.a == rhs.a && lhs.b == rhs.b && lhs.r == rhs.r &&
         lhs.area == rhs.area && lhs.systole == rhs.systole &&
         lhs.fk_area_threshold == rhs.fk_area_threshold;
}

namespace detail {

inline SurfaceDescriptor make_klein(double a, double b) {
  SurfaceDescriptor s;
  s.kind = SurfaceKind::klein_bottle;
  s.a = a;
  s.b = b;
  s.area = a * b / 2.0;
  s.systole = std::min(a / 2.0, b);
  // Conservative extrapolation: systole^2 / pi, which is pi when the systole is pi.
  s.fk_area_threshold = s.systole * s.systole / pi;
  return s;
}

inline SurfaceDescriptor make_cylinder(double r) {
  SurfaceDescriptor s;
  s.kind = SurfaceKind::cylinder_dirichlet;
  s.r = r;
  s.area = 2.0 * pi * pi * r;
  s.systole = 2.0 * pi * r;
  s.fk_area_threshold = 4.0 * pi * r * r;
  return s;
}

}  // namespace detail

inline SurfaceDescriptor preset(Preset name) {
  SurfaceDescriptor s;
  switch (name) {
    case Preset::k1: s = detail::make_klein(2.0 * pi, 2.0 * pi); break;
    case Preset::k2: s = detail::make_klein(2.0 * pi, pi); break;
    case Preset::c_half: s = detail::make_cylinder(0.5); break;
    case Preset::c1: s = detail::make_cylinder(1.0); break;
  }
  s.preset = name;
  return s;
}

/// Klein bottle K_{a,b} for arbitrary periods. Recognizes K1 and K2.
inline SurfaceDescriptor custom_klein(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("custom_klein: periods must be positive and finite");
  }
  SurfaceDescriptor s = detail::make_klein(a, b);
  if (a == 2.0 * pi && b == 2.0 * pi) s.preset = Preset::k1;
  if (a == 2.0 * pi && b == pi) s.preset = Preset::k2;
  return s;
}

inline std::string_view preset_name(Preset p) {
  switch (p) {
    case Preset::k1: return "k1";
    case Preset::k2: return "k2";
    case Preset::c_half: return "c-half";
    case Preset::c1: return "c1";
  }
  return "?";
}

inline std::optional<Preset> parse_preset(std::string_view name) {
  for (Preset p : {Preset::k1, Preset::k2, Preset::c_half, Preset::c1}) {
    if (preset_name(p) == name) return p;
  }
  return std::nullopt;
}

inline std::string describe(const SurfaceDescriptor& s) {
  if (s.preset) return std::string(preset_name(*s.preset));
  if (s.is_klein()) return "klein(a=" + std::to_string(s.a) + ", b=" + std::to_string(s.b) + ")";
  return "cylinder(r=" + std::to_string(s.r) + ")";
}

}  // namespace flatsharp

#endif  // FLATSHARP_SURFACES_HPP
