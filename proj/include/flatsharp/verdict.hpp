#ifndef FLATSHARP_VERDICT_HPP
#define FLATSHARP_VERDICT_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatsharp/nodal.hpp"
#include "flatsharp/pleijel.hpp"
#include "flatsharp/spectrum.hpp"
#include "flatsharp/surfaces.hpp"

namespace flatsharp {

enum class Decision { courant_sharp, not_courant_sharp, inconclusive };

enum class Reason {
  always_sharp_low_index,
  ratio_excluded,
  bound_excluded,
  nodal_count_below_label,
  nodal_count_attains_label,
  sweep_inconclusive,
};

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::courant_sharp: return "courant-sharp";
    case Decision::not_courant_sharp: return "not-courant-sharp";
    case Decision::inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* to_string(Reason r) {
  switch (r) {
    case Reason::always_sharp_low_index: return "always-sharp-low-index";
    case Reason::ratio_excluded: return "ratio-excluded";
    case Reason::bound_excluded: return "bound-excluded";
    case Reason::nodal_count_below_label: return "nodal-count-below-label";
    case Reason::nodal_count_attains_label: return "nodal-count-attains-label";
    case Reason::sweep_inconclusive: return "sweep-inconclusive";
  }
  return "?";
}

struct Evidence {
  double eigenvalue = 0.0;
  int k_min = 0;
  int k_max = 0;
  double ratio = 0.0;
  std::optional<int> max_nodal_count;
  std::optional<int> analytic_ceiling;
  std::optional<SweepResult> sweep;
  Decision decision = Decision::not_courant_sharp;
  Reason reason = Reason::ratio_excluded;
};

struct CourantSharpVerdict {
  SurfaceDescriptor surface;
  std::set<int> courant_sharp_labels;
  std::vector<Evidence> evidence;
  bool inconclusive = false;
};

/// Known maxima of the nodal count over an eigenspace, for the preset
/// eigenvalues that survive the candidate filter.
inline std::optional<int> analytic_nodal_ceiling(const SurfaceDescriptor& s, double eigenvalue) {
  if (!s.preset) return std::nullopt;
  const auto is = [&](double v) { return std::abs(eigenvalue - v) < 1e-9; };
  switch (*s.preset) {
    case Preset::k1:
      if (is(2.0)) return 2;
      if (is(4.0)) return 4;
      break;
    case Preset::c_half:
      if (is(5.0)) return 2;
      break;
    case Preset::c1:
      if (is(4.0)) return 2;
      if (is(5.0)) return 4;
      break;
    case Preset::k2: break;
  }
  return std::nullopt;
}

/// Sweep resolution per eigenspace dimension.
inline int default_samples_per_dim(int dimension) {
  switch (dimension) {
    case 1: return 1;
    case 2: return 64;
    case 3: return 32;
    case 4: return 16;
    default: return 8;
  }
}

struct DecideOptions {
  int base_n = default_base_resolution;
  /// 0 selects default_samples_per_dim.
  int samples_per_dim = 0;
};

/**
 * Full determination for one surface: candidate filter, then an eigenspace
 * sweep for every survivor with k_min >= 3. A survivor is Courant-sharp iff
 * the sweep attains k_min domains. The sweep only bounds the maximum from
 * below, so "not sharp" also requires the measured maximum to stay within the
 * analytic ceiling when one is known, and no unstable sample may have reached
 * k_min. Anything else is flagged inconclusive.
 */
inline CourantSharpVerdict decide(const SurfaceDescriptor& s, const DecideOptions& opt = {}) {
  if (!s.preset) throw std::invalid_argument("decide: only preset surfaces are supported");
  const PleijelReport report = candidate_filter(s);

  CourantSharpVerdict v;
  v.surface = s;
  for (const auto& row : report.rows) {
    if (!report.in_window(row.entry.value) && !row.survivor()) continue;
    Evidence ev;
    ev.eigenvalue = row.entry.value;
    ev.k_min = row.entry.k_min;
    ev.k_max = row.entry.k_max;
    ev.ratio = row.ratio;

    if (!row.survivor()) {
      ev.decision = Decision::not_courant_sharp;
      ev.reason = row.status == FilterStatus::ratio_excluded ? Reason::ratio_excluded : Reason::bound_excluded;
      v.evidence.push_back(std::move(ev));
      continue;
    }
    if (row.entry.k_min <= 2) {
      ev.decision = Decision::courant_sharp;
      ev.reason = Reason::always_sharp_low_index;
      v.courant_sharp_labels.insert(row.entry.k_min);
      v.evidence.push_back(std::move(ev));
      continue;
    }

    const int d = int(eigenspace_modes(s, row.entry).size());
    const int n = opt.samples_per_dim > 0 ? opt.samples_per_dim : default_samples_per_dim(d);
    SweepResult sweep = eigenspace_sweep(s, row.entry.value, n, opt.base_n);
    ev.max_nodal_count = sweep.max_count;
    ev.analytic_ceiling = analytic_nodal_ceiling(s, row.entry.value);

    const bool within_ceiling = sweep.max_count <= row.entry.k_max &&
                                (!ev.analytic_ceiling || sweep.max_count <= *ev.analytic_ceiling);
    if (sweep.stable_samples == 0 || !within_ceiling || sweep.max_unstable_count >= row.entry.k_min) {
      ev.decision = Decision::inconclusive;
      ev.reason = Reason::sweep_inconclusive;
      v.inconclusive = true;
    } else if (sweep.max_count == row.entry.k_min) {
      ev.decision = Decision::courant_sharp;
      ev.reason = Reason::nodal_count_attains_label;
      v.courant_sharp_labels.insert(row.entry.k_min);
    } else {
      ev.decision = Decision::not_courant_sharp;
      ev.reason = Reason::nodal_count_below_label;
    }
    ev.sweep = std::move(sweep);
    v.evidence.push_back(std::move(ev));
  }
  return v;
}

}  // namespace flatsharp

#endif  // FLATSHARP_VERDICT_HPP
