#ifndef FLATSHARP_REPORT_HPP
#define FLATSHARP_REPORT_HPP

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flatsharp/pleijel.hpp"
#include "flatsharp/spectrum.hpp"
#include "flatsharp/surfaces.hpp"
#include "flatsharp/verdict.hpp"

namespace flatsharp {

enum class Format { csv, json, md };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "md") return Format::md;
  return std::nullopt;
}

/// How ratios are printed in the reference tables: K1 truncates to 4 decimals
/// and drops trailing zeros, K2 rounds to 4, the cylinders round to 5.
struct RatioStyle {
  int decimals = 5;
  bool truncate = false;
  bool trim_zeros = false;
};

inline RatioStyle ratio_style(const SurfaceDescriptor& s) {
  if (s.preset == Preset::k1) return {4, true, true};
  if (s.preset == Preset::k2) return {4, false, false};
  return {5, false, false};
}

inline std::string format_ratio(double ratio, const RatioStyle& style) {
  const double scale = std::pow(10.0, style.decimals);
  const double v = style.truncate ? std::floor(ratio * scale + 1e-9) / scale : ratio;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", style.decimals, v);
  std::string out(buf);
  if (style.trim_zeros && out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

inline std::string format_value(double v) {
  char buf[64];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.10g", v);
  }
  return buf;
}

struct TableRow {
  double value = 0.0;
  int multiplicity = 0;
  int k_min = 0;
  int k_max = 0;
  /// Printed ratio; empty where the label is below the Faber-Krahn threshold.
  std::string ratio_text;
};

/// Rows of the eigenvalue table below lambda_max. Klein tables skip lambda_1 = 0.
inline std::vector<TableRow> table_rows(const SurfaceDescriptor& s, double lambda_max) {
  const auto style = ratio_style(s);
  const double k_thr = k_threshold(s);
  std::vector<TableRow> rows;
  for (const auto& e : enumerate_spectrum(s, lambda_max)) {
    if (s.is_klein() && e.value == 0.0) continue;
    TableRow row{e.value, e.multiplicity, e.k_min, e.k_max, {}};
    if (double(e.k_min) >= k_thr) row.ratio_text = format_ratio(e.value / double(e.k_min), style);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string subscript(int k) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : std::to_string(k)) out += digits[c - '0'];
  return out;
}

}  // namespace detail

inline std::string emit_table(const SurfaceDescriptor& s, double lambda_max, Format format) {
  const auto rows = table_rows(s, lambda_max);
  std::ostringstream os;
  switch (format) {
    case Format::csv:
      os << "eigenvalue,multiplicity,k_min,k_max,ratio\n";
      for (const auto& r : rows) {
        os << format_value(r.value) << ',' << r.multiplicity << ',' << r.k_min << ',' << r.k_max << ','
           << r.ratio_text << '\n';
      }
      break;
    case Format::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["eigenvalue"] = r.value;
        row["multiplicity"] = r.multiplicity;
        row["k_min"] = r.k_min;
        row["k_max"] = r.k_max;
        if (r.ratio_text.empty()) {
          row["ratio"] = nullptr;
        } else {
          row["ratio"] = std::stod(r.ratio_text);
        }
        arr.push_back(std::move(row));
      }
      nlohmann::ordered_json doc;
      doc["surface"] = describe(s);
      doc["lambda_max"] = lambda_max;
      doc["rows"] = std::move(arr);
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::md:
      if (s.is_klein()) {
        os << "| " << describe(s) << " | λ_kmin | λ_kmax | λ_kmin/k_min |\n|---|---|---|---|\n";
        for (const auto& r : rows) {
          os << "| " << format_value(r.value) << " | λ" << detail::subscript(r.k_min) << " | λ"
             << detail::subscript(r.k_max) << " | " << (r.ratio_text.empty() ? "—" : r.ratio_text) << " |\n";
        }
      } else {
        os << "| λ(" << describe(s) << ") | k_min | k_max | λ_kmin/k_min |\n|---|---|---|---|\n";
        for (const auto& r : rows) {
          os << "| " << format_value(r.value) << " | " << r.k_min << " | " << r.k_max << " | "
             << (r.ratio_text.empty() ? "—" : r.ratio_text) << " |\n";
        }
      }
      break;
  }
  return os.str();
}

struct FixtureRow {
  double value = 0.0;
  int k_min = 0;
  int k_max = 0;
  std::optional<double> ratio;
};

struct TableFixture {
  Preset surface = Preset::k1;
  double lambda_max = 0.0;
  std::vector<FixtureRow> rows;
};

/// The published eigenvalue tables (decimal commas normalized to points).
inline std::vector<TableFixture> reference_tables() {
  using std::nullopt;
  return {
      {Preset::k1,
       26.0,
       {{1, 2, 2, nullopt},
        {2, 3, 4, nullopt},
        {4, 5, 7, nullopt},
        {5, 8, 11, 0.625},
        {8, 12, 13, 0.6666},
        {9, 14, 14, 0.6428},
        {10, 15, 18, 0.6666},
        {13, 19, 22, 0.6842},
        {16, 23, 25, 0.6956},
        {17, 26, 29, 0.6538},
        {18, 30, 31, 0.6},
        {20, 32, 35, 0.625},
        {25, 36, 40, 0.6944}}},
      {Preset::k2,
       53.0,
       {{4, 2, 4, nullopt},
        {5, 5, 6, 1.0},
        {8, 7, 8, 1.1429},
        {13, 9, 10, 1.4444},
        {16, 11, 13, 1.4545},
        {17, 14, 15, 1.2143},
        {20, 16, 19, 1.2500},
        {25, 20, 21, 1.2500},
        {29, 22, 23, 1.3182},
        {32, 24, 25, 1.3333},
        {36, 26, 28, 1.3846},
        {37, 29, 30, 1.2759},
        {40, 31, 34, 1.2903},
        {41, 35, 36, 1.1714},
        {45, 37, 38, 1.2162},
        {52, 39, 42, 1.3333}}},
      {Preset::c_half,
       81.0,
       {{1, 1, 1, nullopt},       {4, 2, 2, nullopt},       {5, 3, 4, nullopt},
        {8, 5, 6, 1.60000},       {9, 7, 7, 1.28571},       {13, 8, 9, 1.62500},
        {16, 10, 10, 1.60000},    {17, 11, 12, 1.54545},    {20, 13, 16, 1.53846},
        {25, 17, 19, 1.47059},    {29, 20, 21, 1.45000},    {32, 22, 23, 1.45455},
        {36, 24, 24, 1.50000},    {37, 25, 26, 1.48000},    {40, 27, 30, 1.48148},
        {41, 31, 32, 1.32258},    {45, 33, 34, 1.36364},    {49, 35, 35, 1.40000},
        {52, 36, 39, 1.44444},    {53, 40, 41, 1.32500},    {61, 42, 43, 1.45238},
        {64, 44, 44, 1.45455},    {65, 45, 48, 1.44444},    {68, 49, 52, 1.38776},
        {72, 53, 54, 1.35849},    {73, 55, 56, 1.32727},    {80, 57, 60, 1.40351}}},
      {Preset::c1,
       51.0,
       {{1, 1, 1, nullopt},       {2, 2, 3, 1.00000},       {4, 4, 4, 1.00000},
        {5, 5, 8, 1.00000},       {8, 9, 10, 0.88889},      {9, 11, 11, 0.81818},
        {10, 12, 15, 0.83333},    {13, 16, 19, 0.81250},    {16, 20, 20, 0.80000},
        {17, 21, 24, 0.80952},    {18, 25, 26, 0.72000},    {20, 27, 30, 0.74074},
        {25, 31, 35, 0.80645},    {26, 36, 39, 0.72222},    {29, 40, 43, 0.72500},
        {32, 44, 45, 0.72727},    {34, 46, 49, 0.73913},    {36, 50, 50, 0.72000},
        {37, 51, 54, 0.72549},    {40, 55, 58, 0.72727},    {41, 59, 62, 0.69492},
        {45, 63, 66, 0.71429},    {49, 67, 67, 0.73134},    {50, 68, 73, 0.73529}}},
  };
}

/// Printed ratios carry 4 or 5 decimals; this is the comparison tolerance.
inline constexpr double ratio_tolerance = 5e-5;

struct Discrepancy {
  std::string table;
  int row = 0;
  std::string field;
  std::string expected;
  std::string actual;
};

struct RegressionReport {
  int rows_checked = 0;
  std::vector<Discrepancy> discrepancies;
  bool passed() const { return discrepancies.empty(); }
};

inline RegressionReport regression_check(const std::vector<TableFixture>& fixtures) {
  RegressionReport rep;
  for (const auto& fx : fixtures) {
    const auto s = preset(fx.surface);
    const std::string name(preset_name(fx.surface));
    const auto rows = table_rows(s, fx.lambda_max);
    const std::size_t n = std::max(rows.size(), fx.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
      const int row = int(i);
      if (i >= rows.size()) {
        rep.discrepancies.push_back({name, row, "row", format_value(fx.rows[i].value), "missing"});
        continue;
      }
      if (i >= fx.rows.size()) {
        rep.discrepancies.push_back({name, row, "row", "missing", format_value(rows[i].value)});
        continue;
      }
      ++rep.rows_checked;
      const auto& want = fx.rows[i];
      const auto& got = rows[i];
      if (want.value != got.value) {
        rep.discrepancies.push_back({name, row, "eigenvalue", format_value(want.value), format_value(got.value)});
      }
      if (want.k_min != got.k_min) {
        rep.discrepancies.push_back({name, row, "k_min", std::to_string(want.k_min), std::to_string(got.k_min)});
      }
      if (want.k_max != got.k_max) {
        rep.discrepancies.push_back({name, row, "k_max", std::to_string(want.k_max), std::to_string(got.k_max)});
      }
      const std::string want_ratio = want.ratio ? format_value(*want.ratio) : "—";
      const std::string got_ratio = got.ratio_text.empty() ? "—" : got.ratio_text;
      if (want.ratio.has_value() != !got.ratio_text.empty() ||
          (want.ratio && std::abs(*want.ratio - std::stod(got.ratio_text)) > ratio_tolerance)) {
        rep.discrepancies.push_back({name, row, "ratio", want_ratio, got_ratio});
      }
    }
  }
  return rep;
}

inline RegressionReport regression_check() { return regression_check(reference_tables()); }

/// The candidate filter as a table with a SURVIVOR column.
inline std::string emit_candidates(const PleijelReport& rep, Format format) {
  std::ostringstream os;
  const auto style = ratio_style(rep.surface);
  switch (format) {
    case Format::csv:
      os << "eigenvalue,k_min,k_max,ratio,status,survivor\n";
      for (const auto& r : rep.rows) {
        os << format_value(r.entry.value) << ',' << r.entry.k_min << ',' << r.entry.k_max << ','
           << format_ratio(r.ratio, style) << ',' << to_string(r.status) << ',' << (r.survivor() ? "yes" : "no")
           << '\n';
      }
      break;
    case Format::json: {
      nlohmann::ordered_json doc;
      doc["surface"] = describe(rep.surface);
      doc["ratio_threshold"] = rep.ratio_threshold;
      doc["lambda_bound"] = rep.lambda_bound;
      doc["window"] = rep.window;
      doc["window_strict"] = rep.window_strict;
      doc["k_threshold"] = rep.k_threshold;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (const auto& r : rep.rows) {
        rows.push_back({{"eigenvalue", r.entry.value},
                        {"k_min", r.entry.k_min},
                        {"k_max", r.entry.k_max},
                        {"ratio", r.ratio},
                        {"status", to_string(r.status)},
                        {"survivor", r.survivor()}});
      }
      doc["rows"] = std::move(rows);
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::md: {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "surface %s: ratio threshold %.6f, bound root %.4f, window %s %.2f, label threshold %.4f\n\n",
                    describe(rep.surface).c_str(), rep.ratio_threshold, rep.lambda_bound,
                    rep.window_strict ? "<" : "<=", rep.window, rep.k_threshold);
      os << buf;
      os << "| eigenvalue | k_min | k_max | ratio | status | SURVIVOR |\n|---|---|---|---|---|---|\n";
      for (const auto& r : rep.rows) {
        os << "| " << format_value(r.entry.value) << " | " << r.entry.k_min << " | " << r.entry.k_max << " | "
           << format_ratio(r.ratio, style) << " | " << to_string(r.status) << " | " << (r.survivor() ? "yes" : "")
           << " |\n";
      }
      break;
    }
  }
  return os.str();
}

inline nlohmann::ordered_json to_json(const CourantSharpVerdict& v) {
  nlohmann::ordered_json doc;
  doc["surface"] = describe(v.surface);
  doc["courant_sharp_labels"] = std::vector<int>(v.courant_sharp_labels.begin(), v.courant_sharp_labels.end());
  doc["inconclusive"] = v.inconclusive;
  nlohmann::ordered_json evidence = nlohmann::ordered_json::array();
  for (const auto& e : v.evidence) {
    nlohmann::ordered_json item;
    item["eigenvalue"] = e.eigenvalue;
    item["k_min"] = e.k_min;
    item["k_max"] = e.k_max;
    item["ratio"] = e.ratio;
    item["decision"] = to_string(e.decision);
    item["reason"] = to_string(e.reason);
    if (e.max_nodal_count) item["max_nodal_count"] = *e.max_nodal_count;
    if (e.analytic_ceiling) item["analytic_ceiling"] = *e.analytic_ceiling;
    if (e.sweep) {
      nlohmann::ordered_json modes = nlohmann::ordered_json::array();
      for (const auto& m : e.sweep->modes) {
        modes.push_back(std::string(to_string(m.kind)) + ":" + std::to_string(m.m) + ":" + std::to_string(m.n));
      }
      item["sweep"] = {{"dimension", e.sweep->dimension},
                       {"samples", e.sweep->samples},
                       {"stable_samples", e.sweep->stable_samples},
                       {"unstable_samples", e.sweep->unstable_samples},
                       {"max_unstable_count", e.sweep->max_unstable_count},
                       {"modes", modes},
                       {"argmax", e.sweep->argmax}};
    }
    evidence.push_back(std::move(item));
  }
  doc["evidence"] = std::move(evidence);
  return doc;
}

inline std::string emit_verdict(const CourantSharpVerdict& v, Format format) {
  if (format == Format::json) return to_json(v).dump(2) + "\n";
  std::ostringstream os;
  if (format == Format::csv) {
    os << "eigenvalue,k_min,k_max,max_nodal_count,decision,reason\n";
    for (const auto& e : v.evidence) {
      os << format_value(e.eigenvalue) << ',' << e.k_min << ',' << e.k_max << ','
         << (e.max_nodal_count ? std::to_string(*e.max_nodal_count) : "") << ',' << to_string(e.decision) << ','
         << to_string(e.reason) << '\n';
    }
    return os.str();
  }
  os << "surface " << describe(v.surface) << ": Courant-sharp labels {";
  bool first = true;
  for (int k : v.courant_sharp_labels) {
    os << (first ? "" : ", ") << k;
    first = false;
  }
  os << "}" << (v.inconclusive ? " (INCONCLUSIVE)" : "") << "\n";
  os << "\n| eigenvalue | k_min | k_max | max nodal count | decision | reason |\n|---|---|---|---|---|---|\n";
  for (const auto& e : v.evidence) {
    os << "| " << format_value(e.eigenvalue) << " | " << e.k_min << " | " << e.k_max << " | "
       << (e.max_nodal_count ? std::to_string(*e.max_nodal_count) : "") << " | " << to_string(e.decision) << " | "
       << to_string(e.reason) << " |\n";
  }
  return os.str();
}

}  // namespace flatsharp

#endif  // FLATSHARP_REPORT_HPP
