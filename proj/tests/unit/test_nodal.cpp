#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "flatsharp/nodal.hpp"
#include "flatsharp/spectrum.hpp"
#include "oracles.hpp"

using namespace flatsharp;

namespace {

Eigenfunction random_eigenfunction(const SurfaceDescriptor& s, double lambda_max, std::mt19937_64& rng,
                                   const SpectrumEntry** entry_out = nullptr) {
  static thread_local Spectrum spectrum;
  spectrum = enumerate_spectrum(s, lambda_max);
  std::uniform_int_distribution<std::size_t> pick(1, spectrum.size() - 1);
  const auto& entry = spectrum[pick(rng)];
  if (entry_out) *entry_out = &entry;
  const auto modes = eigenspace_modes(s, entry);
  std::normal_distribution<double> g;
  std::vector<double> c(modes.size());
  for (auto& x : c) x = g(rng);
  return combine(s, modes, c);
}

Eigenfunction negate(Eigenfunction f) {
  for (auto& t : f.terms) t.coeff = -t.coeff;
  return f;
}

int grid_count(const Eigenfunction& f, int cells_per_pi) {
  const auto [nx, ny] = resolution(f.surface, cells_per_pi);
  return count_nodal_domains(sample(f, nx, ny)).count;
}

}  // namespace

TEST(Sample, ProductHasFewZeros) {
  const auto f = make_eigenfunction(preset(Preset::k1), {{{ModeKind::ss, 1, 1}, 1.0}});
  const auto g = sample(f, 64, 128);
  EXPECT_EQ(g.nx, 64);
  EXPECT_EQ(g.ny, 128);
  EXPECT_LT(g.zero_fraction(), 0.05);
}

TEST(Sample, ConstantIsPositive) {
  const auto f = make_eigenfunction(preset(Preset::k1), {{{ModeKind::cc, 0, 0}, 2.0}});
  const auto g = sample(f, 32, 64);
  for (auto v : g.values) EXPECT_EQ(v, 1);
  EXPECT_EQ(count_nodal_domains(g).count, 1);
}

TEST(Sample, DegenerateFamilyMemberHitsZeros) {
  // The nodal lines x + y = pi/2 (mod pi) pass exactly through cell centres.
  const auto f = lambda5_family(pi / 4);
  const auto [nx, ny] = resolution(f.surface, 256);
  const auto g = sample(f, nx, ny);
  EXPECT_GT(g.zero_fraction(), 0.0);
  EXPECT_LT(g.zero_fraction(), max_zero_fraction);
  const int i = 0, j = nx / 2 - 1;  // x_0 + y_j = (j + 1) h = pi / 2
  EXPECT_EQ(g.at(i, j), 0);
}

TEST(Sample, RejectsBadShapes) {
  const auto f = lambda3_family(0.1);
  EXPECT_THROW(sample(f, 32, 63), std::invalid_argument);
  EXPECT_THROW(sample(f, 8, 64), std::invalid_argument);
  EXPECT_THROW(sample(f, 32, 64, 0.0), std::invalid_argument);
  const auto c = make_eigenfunction(preset(Preset::c1), {{{ModeKind::sc, 2, 0}, 1.0}});
  EXPECT_NO_THROW(sample(c, 32, 63));
}

TEST(Count, RefusesTooManyZeros) {
  SignGrid g;
  g.surface = preset(Preset::k1);
  g.nx = 20;
  g.ny = 20;
  g.values.assign(400, 1);
  for (int i = 0; i < 4; ++i) g.values[i] = 0;  // exactly 1%
  EXPECT_THROW(count_nodal_domains(g), NodalError);
  g.values[0] = 1;
  EXPECT_NO_THROW(count_nodal_domains(g));
}

TEST(Count, KleinGlueIsOrientationReversing) {
  // Positive cells only at (0, 0) and (nx-1, ny-1), joined by the glue; the rest negative.
  SignGrid g;
  g.surface = preset(Preset::k1);
  g.nx = 200;
  g.ny = 200;
  g.values.assign(40000, -1);
  for (int j = 0; j < 50; ++j) g.values[j * 200 + 0] = 1;
  for (int j = 150; j < 200; ++j) g.values[j * 200 + 199] = 1;
  EXPECT_EQ(count_nodal_domains(g).count, 2);
  // Same strips on the same side of the glue would not meet.
  for (int j = 150; j < 200; ++j) g.values[j * 200 + 199] = -1;
  for (int j = 0; j < 50; ++j) g.values[j * 200 + 199] = 1;
  // column 0 rows 0..49 glue to column 199 rows 150..199, which are negative now
  EXPECT_EQ(count_nodal_domains(g).count, 3);
}

TEST(Count, CylinderEndsAreNotGlued) {
  SignGrid g;
  g.surface = preset(Preset::c1);
  g.nx = 100;
  g.ny = 100;
  g.values.assign(10000, -1);
  for (int j = 0; j < 100; ++j) g.values[j * 100] = 1, g.values[j * 100 + 99] = 1;
  EXPECT_EQ(count_nodal_domains(g).count, 3);
}

TEST(Count, Lambda3FamilyHasTwoDomains) {
  for (int k = 0; k < 16; ++k) {
    const auto r = stable_count(lambda3_family(k * pi / 16));
    EXPECT_TRUE(r.stable);
    EXPECT_EQ(r.count, 2) << "alpha = " << k << " pi/16";
  }
}

TEST(Count, Lambda5FamilyMatchesTorusOracle) {
  for (int k = 1; k <= 16; ++k) {
    const auto f = lambda5_family(k * pi / 32);
    const auto r = stable_count(f);
    ASSERT_TRUE(r.stable) << k;
    const auto [nx, ny] = resolution(f.surface, 512);
    EXPECT_EQ(r.count, oracle::klein_domains_via_torus(f, nx, ny)) << "theta = " << k << " pi/32";
    // two domains below pi/4, three above, four at the degenerate value
    EXPECT_EQ(r.count, k < 8 ? 2 : (k == 8 ? 4 : 3)) << "theta = " << k << " pi/32";
    EXPECT_LE(r.count, 4);
  }
}

TEST(Count, Cos2yOnK1) {
  const auto f = lambda5_family(pi / 2);
  const auto r = stable_count(f);
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.count, oracle::klein_domains_via_torus(f, 256, 512));
  EXPECT_EQ(r.count, 3);
}

TEST(Count, KleinMatchesTorusOracleOnRandomFunctions) {
  std::mt19937_64 rng(99);
  for (auto p : {Preset::k1, Preset::k2}) {
    const auto s = preset(p);
    for (int i = 0; i < 25; ++i) {
      const auto f = random_eigenfunction(s, 40, rng);
      const auto [nx, ny] = resolution(s, 128);
      EXPECT_EQ(count_nodal_domains(sample(f, nx, ny)).count, oracle::klein_domains_via_torus(f, nx, ny))
          << preset_name(p) << " eigenvalue " << f.eigenvalue;
    }
  }
}

TEST(Count, CylinderMatchesFloodFillOnRandomFunctions) {
  std::mt19937_64 rng(7);
  for (auto p : {Preset::c_half, Preset::c1}) {
    const auto s = preset(p);
    for (int i = 0; i < 25; ++i) {
      const auto f = random_eigenfunction(s, 40, rng);
      const auto [nx, ny] = resolution(s, 128);
      EXPECT_EQ(count_nodal_domains(sample(f, nx, ny)).count, oracle::cylinder_domains(f, nx, ny))
          << preset_name(p) << " eigenvalue " << f.eigenvalue;
    }
  }
}

TEST(Count, CylinderProducts) {
  for (auto p : {Preset::c_half, Preset::c1}) {
    const auto s = preset(p);
    for (long m = 1; m <= 4; ++m) {
      for (long n = 0; n <= 4; ++n) {
        for (auto kind : {ModeKind::sc, ModeKind::ss}) {
          if (kind == ModeKind::ss && n == 0) continue;
          // shift off the sample lattice so no cell centre sits on a nodal line
          const auto f = rotate_y(make_eigenfunction(s, {{{kind, m, n}, 1.0}}), 0.0123);
          const auto r = stable_count(f, 64);
          EXPECT_TRUE(r.stable);
          EXPECT_EQ(r.count, oracle::cylinder_product_domains(m, n))
              << preset_name(p) << " " << to_string(kind) << "(" << m << "," << n << ")";
        }
      }
    }
  }
}

TEST(Count, Sin2xOnC1) {
  const auto f = make_eigenfunction(preset(Preset::c1), {{{ModeKind::sc, 2, 0}, 1.0}});
  const auto r = stable_count(f);
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.count, 2);
}

TEST(Count, SignFlipAndIsometries) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> shift(0.0, 2 * pi);
  for (auto p : {Preset::k1, Preset::k2, Preset::c_half, Preset::c1}) {
    const auto s = preset(p);
    for (int i = 0; i < 8; ++i) {
      const auto f = random_eigenfunction(s, 30, rng);
      const auto base = stable_count(f, 128);
      if (!base.stable) continue;
      EXPECT_EQ(stable_count(negate(f), 128).count, base.count);
      const auto moved = s.is_klein() ? translate_x(f, shift(rng)) : rotate_y(f, shift(rng));
      const auto r = stable_count(moved, 128);
      if (r.stable) EXPECT_EQ(r.count, base.count) << preset_name(p) << " eigenvalue " << f.eigenvalue;
    }
  }
}

TEST(Count, CourantBound) {
  std::mt19937_64 rng(17);
  for (auto p : {Preset::k1, Preset::k2, Preset::c_half, Preset::c1}) {
    const auto s = preset(p);
    for (int i = 0; i < 12; ++i) {
      const SpectrumEntry* e = nullptr;
      const auto f = random_eigenfunction(s, 50, rng, &e);
      const auto r = stable_count(f, 128);
      if (!r.stable) continue;
      EXPECT_LE(r.count, e->k_max) << preset_name(p) << " eigenvalue " << e->value;
      EXPECT_LE(double(r.count) / e->k_min, 1.0);
    }
  }
}

TEST(StableCount, HistoryAndLimits) {
  const auto r = stable_count(lambda3_family(0.3), 64);
  EXPECT_EQ(r.history.size(), 2u);
  EXPECT_EQ(r.nx, 128);
  EXPECT_EQ(r.ny, 256);
  EXPECT_THROW(stable_count(lambda3_family(0.3), 32), std::invalid_argument);
}

TEST(StableCount, ResolutionIsEven) {
  for (auto p : {Preset::k1, Preset::k2, Preset::c_half, Preset::c1}) {
    for (int n : {64, 100, 255, 256}) {
      const auto [nx, ny] = resolution(preset(p), n);
      EXPECT_GE(nx, 16);
      EXPECT_EQ(ny % 2, 0);
    }
  }
}

TEST(SphereGrid, UnitAndSignQuotient) {
  for (int d = 1; d <= 5; ++d) {
    const auto g = sphere_grid(d, 8);
    std::set<std::vector<long long>> keys;
    for (const auto& v : g) {
      double n2 = 0;
      for (double x : v) n2 += x * x;
      EXPECT_NEAR(n2, 1.0, 1e-12);
      std::vector<long long> k, nk;
      for (double x : v) k.push_back(std::llround(x * 1e9)), nk.push_back(std::llround(-x * 1e9));
      EXPECT_EQ(keys.count(k), 0u);
      EXPECT_EQ(keys.count(nk), 0u);
      keys.insert(k);
    }
  }
  EXPECT_EQ(sphere_grid(2, 64).size(), 64u);
  EXPECT_THROW(sphere_grid(0, 4), std::invalid_argument);
}

TEST(Sweep, K1Eigenvalue2) {
  const auto r = eigenspace_sweep(preset(Preset::k1), 2.0, 32);
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.max_count, 2);
  EXPECT_EQ(r.unstable_samples, 0);
}

TEST(Sweep, K1Eigenvalue4) {
  const auto r = eigenspace_sweep(preset(Preset::k1), 4.0, 32);
  EXPECT_EQ(r.dimension, 3);
  EXPECT_EQ(r.max_count, 4);
}

TEST(Sweep, CHalfEigenvalue5) {
  const auto r = eigenspace_sweep(preset(Preset::c_half), 5.0, 32);
  EXPECT_EQ(r.dimension, 2);
  EXPECT_EQ(r.max_count, 2);
  EXPECT_EQ(r.stable_samples, r.samples);
}

TEST(Sweep, Deterministic) {
  const auto a = eigenspace_sweep(preset(Preset::c1), 4.0, 8, 64);
  const auto b = eigenspace_sweep(preset(Preset::c1), 4.0, 8, 64);
  EXPECT_EQ(a.max_count, b.max_count);
  EXPECT_EQ(a.argmax, b.argmax);
  EXPECT_EQ(a.stable_samples, b.stable_samples);
}

TEST(Sweep, Refusals) {
  const auto s = preset(Preset::k1);
  EXPECT_THROW(eigenspace_sweep(s, 3.0, 4), std::invalid_argument);
  double big = 0;
  for (const auto& e : enumerate_spectrum(s, 200)) {
    if (e.multiplicity > max_sweep_dimension) {
      big = e.value;
      break;
    }
  }
  ASSERT_GT(big, 0);
  EXPECT_THROW(eigenspace_sweep(s, big, 2), std::invalid_argument);
}

TEST(Ppm, HeaderAndSize) {
  const auto g = sample(lambda3_family(0.0), 32, 64);
  std::ostringstream os;
  write_ppm(g, os);
  const std::string out = os.str();
  const std::string header = "P6\n32 64\n255\n";
  ASSERT_EQ(out.substr(0, header.size()), header);
  EXPECT_EQ(out.size(), header.size() + 32u * 64u * 3u);
  // Three colours at most.
  std::set<std::string> colours;
  for (std::size_t i = header.size(); i < out.size(); i += 3) colours.insert(out.substr(i, 3));
  EXPECT_LE(colours.size(), 3u);
  EXPECT_GE(colours.size(), 2u);
}
