#ifndef FLATSHARP_NODAL_HPP
#define FLATSHARP_NODAL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "flatsharp/eigenfunctions.hpp"
#include "flatsharp/spectrum.hpp"
#include "flatsharp/surfaces.hpp"

namespace flatsharp {

/// Signs of an eigenfunction at the cell centers of an nx x ny grid over the
/// fundamental domain. Cell (i, j) has center ((i + 1/2) w / nx, (j + 1/2) h / ny).
struct SignGrid {
  SurfaceDescriptor surface;
  int nx = 0;
  int ny = 0;
  std::vector<std::int8_t> values;  // row-major in y: values[j * nx + i]

  std::int8_t at(int i, int j) const { return values[std::size_t(j) * nx + i]; }

  double zero_fraction() const {
    if (values.empty()) return 0.0;
    const auto zeros = std::count(values.begin(), values.end(), std::int8_t{0});
    return double(zeros) / double(values.size());
  }
};

struct NodalResult {
  int count = 0;
  int nx = 0;
  int ny = 0;
  bool stable = false;
  double zero_fraction = 0.0;
  /// Counts observed at each resolution tried, coarsest first.
  std::vector<int> history;
};

/// Raised when a grid has too many cells tagged zero to be trusted.
class NodalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double max_zero_fraction = 0.01;

/// 1e-9 times the l1 norm of the coefficients.
inline double default_zero_tol(const Eigenfunction& f) { return 1e-9 * coefficient_l1(f); }

inline SignGrid sample(const Eigenfunction& f, int nx, int ny, double zero_tol) {
  if (nx < 16 || ny < 16) throw std::invalid_argument("sample: nx and ny must be at least 16");
  if (!(zero_tol > 0.0)) throw std::invalid_argument("sample: zero_tol must be positive");
  if (f.surface.is_klein() && ny % 2 != 0) {
    throw std::invalid_argument("sample: ny must be even on a Klein bottle");
  }
  const double hx = f.surface.domain_width() / nx;
  const double hy = f.surface.domain_height() / ny;

  std::vector<double> field(std::size_t(nx) * ny, 0.0);
  std::vector<double> xs(nx), ys(ny);
  for (const auto& t : f.terms) {
    for (int i = 0; i < nx; ++i) xs[i] = x_factor(f.surface, t.mode, (i + 0.5) * hx);
    for (int j = 0; j < ny; ++j) ys[j] = t.coeff * y_factor(f.surface, t.mode, (j + 0.5) * hy);
    for (int j = 0; j < ny; ++j) {
      double* row = field.data() + std::size_t(j) * nx;
      for (int i = 0; i < nx; ++i) row[i] += ys[j] * xs[i];
    }
  }

  SignGrid g{f.surface, nx, ny, std::vector<std::int8_t>(field.size())};
  for (std::size_t k = 0; k < field.size(); ++k) {
    g.values[k] = std::abs(field[k]) <= zero_tol ? 0 : (field[k] > 0.0 ? 1 : -1);
  }
  return g;
}

inline SignGrid sample(const Eigenfunction& f, int nx, int ny) {
  return sample(f, nx, ny, default_zero_tol(f));
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  std::uint32_t parent(std::uint32_t x) const { return parent_[x]; }
  void set_parent(std::uint32_t x, std::uint32_t p) { parent_[x] = p; }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace detail

/**
 * Connected components of same-sign nonzero cells under 4-adjacency plus the
 * surface's edge identifications:
 *   both surfaces: (i, 0) ~ (i, ny - 1)             (y is periodic)
 *   Klein bottle:  (0, j) ~ (nx - 1, ny - 1 - j)     (orientation-reversing glue)
 * Cylinder ends are Dirichlet and never glued. Zero cells belong to no domain.
 */
inline NodalResult count_nodal_domains(const SignGrid& g) {
  const double zf = g.zero_fraction();
  if (zf >= max_zero_fraction) {
    throw NodalError("count_nodal_domains: " + std::to_string(100.0 * zf) +
                     "% of cells are zero; lower zero_tol or refine the grid");
  }
  const int nx = g.nx, ny = g.ny;
  const std::int8_t* v = g.values.data();
  detail::DisjointSets sets(std::size_t(nx) * ny);
  // Runs along a row point straight at their first cell.
  for (int j = 0; j < ny; ++j) {
    const std::uint32_t row = std::uint32_t(std::size_t(j) * nx);
    for (int i = 1; i < nx; ++i) {
      const std::uint32_t k = row + std::uint32_t(i);
      if (v[k] != 0 && v[k] == v[k - 1]) sets.set_parent(k, sets.parent(k - 1));
    }
  }
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    if (v[a] != 0 && v[a] == v[b]) sets.unite(a, b);
  };
  for (int j = 0; j < ny; ++j) {
    const std::uint32_t row = std::uint32_t(std::size_t(j) * nx);
    const std::uint32_t up = std::uint32_t(std::size_t((j + 1) % ny) * nx);
    for (int i = 0; i < nx; ++i) {
      // Skip when the left neighbour already carried the same vertical link.
      if (i > 0 && v[row + i] == v[row + i - 1] && v[up + i] == v[up + i - 1]) continue;
      link(row + std::uint32_t(i), up + std::uint32_t(i));
    }
  }
  if (g.surface.is_klein()) {
    for (int j = 0; j < ny; ++j) {
      link(std::uint32_t(std::size_t(j) * nx), std::uint32_t(std::size_t(ny - 1 - j) * nx + nx - 1));
    }
  }
  NodalResult res;
  res.nx = nx;
  res.ny = ny;
  res.zero_fraction = zf;
  for (std::uint32_t k = 0; k < std::uint32_t(g.values.size()); ++k) {
    if (v[k] != 0 && sets.find(k) == k) ++res.count;
  }
  res.history = {res.count};
  return res;
}

/// Grid size for `cells_per_pi` cells per length pi; ny rounded up to even.
inline std::pair<int, int> resolution(const SurfaceDescriptor& s, int cells_per_pi) {
  int nx = std::max(16, int(std::lround(cells_per_pi * s.domain_width() / pi)));
  int ny = std::max(16, int(std::lround(cells_per_pi * s.domain_height() / pi)));
  if (ny % 2 != 0) ++ny;
  return {nx, ny};
}

inline constexpr int default_base_resolution = 256;

/**
 * Counts at base_n cells per pi, then at 2x; stable when both agree. On
 * disagreement tries 4x and accepts if it matches 2x. Otherwise the result
 * carries stable = false and the finest count.
 */
inline NodalResult stable_count(const Eigenfunction& f, int base_n = default_base_resolution) {
  if (base_n < 64) throw std::invalid_argument("stable_count: base_n must be at least 64");
  const double tol = default_zero_tol(f);
  NodalResult prev;
  std::vector<int> history;
  for (int level = 0; level < 3; ++level) {
    const auto [nx, ny] = resolution(f.surface, base_n << level);
    NodalResult cur = count_nodal_domains(sample(f, nx, ny, tol));
    history.push_back(cur.count);
    if (level > 0 && cur.count == prev.count) {
      cur.stable = true;
      cur.history = history;
      return cur;
    }
    prev = cur;
  }
  prev.stable = false;
  prev.history = history;
  return prev;
}

/**
 * Unit vectors in R^d on a hyperspherical-angle grid, one representative per
 * {v, -v}. Every angle takes the values k pi / N, k = 0..N-1; duplicates that
 * arise at the poles are removed.
 */
inline std::vector<std::vector<double>> sphere_grid(int d, int samples_per_dim) {
  if (d < 1) throw std::invalid_argument("sphere_grid: dimension must be positive");
  if (samples_per_dim < 1) throw std::invalid_argument("sphere_grid: samples_per_dim must be positive");
  if (d == 1) return {{1.0}};
  const int n_angles = d - 1;
  std::vector<int> k(n_angles, 0);
  std::vector<std::vector<double>> out;
  std::map<std::vector<long long>, bool> seen;
  for (;;) {
    std::vector<double> v(d);
    double s = 1.0;
    for (int a = 0; a < n_angles; ++a) {
      const double phi = k[a] * pi / samples_per_dim;
      v[a] = s * std::cos(phi);
      s *= std::sin(phi);
    }
    v[d - 1] = s;
    // Canonical sign: first entry of magnitude > 1e-12 positive.
    std::vector<long long> key(d);
    double sign = 1.0;
    for (int i = 0; i < d; ++i) {
      if (std::abs(v[i]) > 1e-12) {
        sign = v[i] > 0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int i = 0; i < d; ++i) key[i] = std::llround(sign * v[i] * 1e10);
    if (!seen[key]) {
      seen[key] = true;
      out.push_back(std::move(v));
    }
    int a = n_angles - 1;
    while (a >= 0 && ++k[a] == samples_per_dim) k[a--] = 0;
    if (a < 0) break;
  }
  return out;
}

struct SweepResult {
  int dimension = 0;
  int samples = 0;
  int stable_samples = 0;
  int unstable_samples = 0;
  /// Maximum over stable samples; 0 when there were none.
  int max_count = 0;
  /// Largest count seen at any resolution among unstable samples.
  int max_unstable_count = 0;
  std::vector<double> argmax;
  std::vector<BasisMode> modes;
};

inline constexpr int max_sweep_dimension = 5;

/**
 * Maximum stable nodal count over unit coefficient vectors of the eigenspace
 * of `eigenvalue`, sampled by sphere_grid. Samples run on all hardware threads;
 * the reduction is in sample order so the result is deterministic.
 */
inline SweepResult eigenspace_sweep(const SurfaceDescriptor& s, double eigenvalue, int samples_per_dim,
                                    int base_n = default_base_resolution) {
  const auto spectrum = enumerate_spectrum(s, eigenvalue + 1.0);
  const SpectrumEntry* entry = find_entry(spectrum, eigenvalue);
  if (entry == nullptr) {
    throw std::invalid_argument("eigenspace_sweep: " + std::to_string(eigenvalue) +
                                " is not an eigenvalue of " + describe(s));
  }
  const auto modes = eigenspace_modes(s, *entry);
  const int d = int(modes.size());
  if (d > max_sweep_dimension) {
    throw std::invalid_argument("eigenspace_sweep: eigenspace dimension " + std::to_string(d) +
                                " exceeds " + std::to_string(max_sweep_dimension));
  }
  const auto grid = sphere_grid(d, samples_per_dim);

  std::vector<NodalResult> results(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) {
      try {
        results[k] = stable_count(combine(s, modes, grid[k]), base_n);
      } catch (const NodalError&) {
        results[k] = NodalResult{};
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult out;
  out.dimension = d;
  out.samples = int(grid.size());
  out.modes = modes;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto& r = results[k];
    if (r.stable) {
      ++out.stable_samples;
      if (r.count > out.max_count) {
        out.max_count = r.count;
        out.argmax = grid[k];
      }
    } else {
      ++out.unstable_samples;
      for (int c : r.history) out.max_unstable_count = std::max(out.max_unstable_count, c);
    }
  }
  return out;
}

/// Binary PPM (P6), top row = largest y. Positive red, negative blue, zero white.
inline void write_ppm(const SignGrid& g, std::ostream& os) {
  os << "P6\n" << g.nx << ' ' << g.ny << "\n255\n";
  for (int j = g.ny - 1; j >= 0; --j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto s = g.at(i, j);
      const unsigned char px[3] = {
          static_cast<unsigned char>(s > 0 ? 214 : (s < 0 ? 46 : 255)),
          static_cast<unsigned char>(s > 0 ? 64 : (s < 0 ? 94 : 255)),
          static_cast<unsigned char>(s > 0 ? 56 : (s < 0 ? 196 : 255)),
      };
      os.write(reinterpret_cast<const char*>(px), 3);
    }
  }
}

}  // namespace flatsharp

#endif  // FLATSHARP_NODAL_HPP
