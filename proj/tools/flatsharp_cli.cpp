// Command-line front end: spectrum tables, candidate filtering, nodal counts,
// eigenspace sweeps, full verdicts and the table regression check.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flatsharp/flatsharp.hpp"

namespace fs = flatsharp;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

/// Preset name, or klein:<a>:<b> for a custom Klein bottle.
fs::SurfaceDescriptor parse_surface(const std::string& name) {
  if (auto p = fs::parse_preset(name)) return fs::preset(*p);
  const auto parts = split(name, ':');
  if (parts.size() == 3 && parts[0] == "klein") return fs::custom_klein(std::stod(parts[1]), std::stod(parts[2]));
  throw CLI::ValidationError("--surface", "expected k1, k2, c-half, c1 or klein:<a>:<b>, got '" + name + "'");
}

fs::Format parse_format_or_throw(const std::string& s) {
  if (auto f = fs::parse_format(s)) return *f;
  throw CLI::ValidationError("--format", "expected csv, json or md");
}

/// "kind:m:n:coeff,..." e.g. "cs:1:1:-0.5,ss:1:1:0.8".
fs::Eigenfunction parse_terms(const fs::SurfaceDescriptor& s, const std::string& text) {
  std::vector<fs::Term> terms;
  for (const auto& item : split(text, ',')) {
    const auto f = split(item, ':');
    if (f.size() != 4) throw CLI::ValidationError("--terms", "each term is kind:m:n:coeff, got '" + item + "'");
    const auto kind = fs::parse_mode_kind(f[0]);
    if (!kind) throw CLI::ValidationError("--terms", "unknown mode kind '" + f[0] + "'");
    terms.push_back({{*kind, std::stol(f[1]), std::stol(f[2])}, std::stod(f[3])});
  }
  return fs::make_eigenfunction(s, std::move(terms));
}

/// "lambda3:alpha", "lambda5:theta" or "lambda5:theta:alpha" (K1 only).
fs::Eigenfunction parse_family(const fs::SurfaceDescriptor& s, const std::string& text) {
  if (s.preset != fs::Preset::k1) throw CLI::ValidationError("--family", "families are defined on k1 only");
  const auto f = split(text, ':');
  if (f.size() == 2 && f[0] == "lambda3") return fs::lambda3_family(std::stod(f[1]));
  if (f.size() == 2 && f[0] == "lambda5") return fs::lambda5_family(std::stod(f[1]));
  if (f.size() == 3 && f[0] == "lambda5") return fs::lambda5_family(std::stod(f[1]), std::stod(f[2]));
  throw CLI::ValidationError("--family", "expected lambda3:<alpha> or lambda5:<theta>[:<alpha>]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Courant-sharp eigenvalues of flat Klein bottles and Dirichlet cylinders"};
  app.require_subcommand(1);

  std::string surface_name = "k1";
  std::string format_name = "md";

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalue table with multiplicities and labels");
  double lambda_max = 26.0;
  spectrum->add_option("--surface", surface_name, "k1, k2, c-half, c1 or klein:<a>:<b>")->required();
  spectrum->add_option("--lambda-max", lambda_max, "List eigenvalues strictly below this value")->required();
  spectrum->add_option("--format", format_name, "csv, json or md");

  auto* weyl = app.add_subcommand("weyl", "Weyl counting function and its explicit lower bound");
  double weyl_lambda = 0.0;
  weyl->add_option("--surface", surface_name)->required();
  weyl->add_option("--lambda", weyl_lambda)->required();

  auto* candidates = app.add_subcommand("candidates", "Finite-candidate reduction with survivors");
  candidates->add_option("--surface", surface_name)->required();
  candidates->add_option("--format", format_name, "csv, json or md");

  auto* nodal = app.add_subcommand("nodal", "Count nodal domains of one eigenfunction");
  std::string family, terms, ppm_path;
  int cells_per_pi = fs::default_base_resolution;
  nodal->add_option("--surface", surface_name)->required();
  auto* fam_opt = nodal->add_option("--family", family, "lambda3:<alpha> or lambda5:<theta>[:<alpha>]");
  auto* terms_opt = nodal->add_option("--terms", terms, "kind:m:n:coeff,... with kind in cc, sc, cs, ss");
  fam_opt->excludes(terms_opt);
  nodal->add_option("--n", cells_per_pi, "Base resolution in cells per length pi")->check(CLI::Range(64, 1 << 14));
  nodal->add_option("--emit-ppm", ppm_path, "Write the sign grid at base resolution as a PPM image");

  auto* sweep = app.add_subcommand("sweep", "Maximum nodal count over an eigenspace");
  double sweep_value = 0.0;
  int samples = 0;
  sweep->add_option("--surface", surface_name)->required();
  sweep->add_option("--eigenvalue", sweep_value)->required();
  sweep->add_option("--samples", samples, "Points per angular coordinate (default by dimension)");
  sweep->add_option("--n", cells_per_pi)->check(CLI::Range(64, 1 << 14));

  auto* decide = app.add_subcommand("decide", "Determine all Courant-sharp eigenvalues");
  decide->add_option("--surface", surface_name)->required();
  decide->add_option("--format", format_name, "csv, json or md");
  decide->add_option("--n", cells_per_pi)->check(CLI::Range(64, 1 << 14));

  auto* regress = app.add_subcommand("regress", "Compare generated tables with the reference tables");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*spectrum) {
      std::cout << fs::emit_table(parse_surface(surface_name), lambda_max, parse_format_or_throw(format_name));
    } else if (*weyl) {
      const auto s = parse_surface(surface_name);
      std::cout << "W(" << weyl_lambda << ") = " << fs::weyl_exact(s, weyl_lambda) << '\n';
      if (s.is_klein()) std::cout << "closed form: " << fs::weyl_closed_form(s, weyl_lambda) << '\n';
      std::cout << "lower bound: " << fs::weyl_lower_bound(s, weyl_lambda) << '\n';
    } else if (*candidates) {
      const auto rep = fs::candidate_filter(parse_surface(surface_name));
      std::cout << fs::emit_candidates(rep, parse_format_or_throw(format_name));
    } else if (*nodal) {
      const auto s = parse_surface(surface_name);
      if (family.empty() == terms.empty()) throw CLI::ValidationError("nodal", "give exactly one of --family, --terms");
      const auto f = family.empty() ? parse_terms(s, terms) : parse_family(s, family);
      const auto res = fs::stable_count(f, cells_per_pi);
      std::cout << "eigenvalue " << f.eigenvalue << ": " << res.count << " nodal domains at " << res.nx << "x"
                << res.ny << (res.stable ? " (stable)" : " (UNSTABLE)") << ", zero fraction " << res.zero_fraction
                << ", counts by resolution:";
      for (int c : res.history) std::cout << ' ' << c;
      std::cout << '\n';
      if (!ppm_path.empty()) {
        const auto [nx, ny] = fs::resolution(s, cells_per_pi);
        std::ofstream out(ppm_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + ppm_path);
        fs::write_ppm(fs::sample(f, nx, ny), out);
      }
      if (!res.stable) return 2;
    } else if (*sweep) {
      const auto s = parse_surface(surface_name);
      const auto spectrum = fs::enumerate_spectrum(s, sweep_value + 1.0);
      const auto* entry = fs::find_entry(spectrum, sweep_value);
      if (entry == nullptr) throw std::invalid_argument("not an eigenvalue");
      const int d = int(fs::eigenspace_modes(s, *entry).size());
      const int n = samples > 0 ? samples : fs::default_samples_per_dim(d);
      const auto res = fs::eigenspace_sweep(s, sweep_value, n, cells_per_pi);
      std::cout << "eigenvalue " << sweep_value << " (labels " << entry->k_min << ".." << entry->k_max
                << ", dimension " << res.dimension << "): max nodal count " << res.max_count << " over "
                << res.stable_samples << " stable of " << res.samples << " samples";
      if (res.unstable_samples > 0) {
        std::cout << ", " << res.unstable_samples << " unstable (max seen " << res.max_unstable_count << ")";
      }
      std::cout << '\n';
    } else if (*decide) {
      fs::DecideOptions opt;
      opt.base_n = cells_per_pi;
      const auto v = fs::decide(parse_surface(surface_name), opt);
      std::cout << fs::emit_verdict(v, parse_format_or_throw(format_name));
      return v.inconclusive ? 3 : 0;
    } else if (*regress) {
      const auto rep = fs::regression_check();
      std::cout << "rows checked: " << rep.rows_checked << ", discrepancies: " << rep.discrepancies.size() << '\n';
      for (const auto& d : rep.discrepancies) {
        std::cout << "  " << d.table << " row " << d.row << " " << d.field << ": expected " << d.expected
                  << ", got " << d.actual << '\n';
      }
      return rep.passed() ? 0 : 1;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
