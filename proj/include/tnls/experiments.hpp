// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tnls/dynamics.hpp"
#include "tnls/field.hpp"
#include "tnls/random_data.hpp"
#include "tnls/report.hpp"

namespace tnls::experiments {

/// Verdict thresholds. The shipped values live in fixtures/thresholds.json;
/// `defaults()` mirrors that file and a test keeps the two in sync.
struct Thresholds {
  int version = 1;
  double decay_spearman_max = -0.8;      ///< WNLS: trend of G(n) must be below this
  double decay_ratio_max = 0.2;          ///< WNLS: G(last) / G(first) at most this
  double plateau_min_fraction = 0.5;     ///< NLS: G(last) >= this * G(first)
  double plateau_rel_tol = 0.2;          ///< NLS plateau vs gauge prediction
  double strichartz_rel_change_max = 0.25;
  double apriori_bound = 2.0;            ///< C in sup_t ||u||_{H^s} <= C ||u0||_{H^s}
  double strang_order_min = 1.8, strang_order_max = 2.2;
  double rk4_order_min = 3.8, rk4_order_max = 4.2;
  double snapshots_per_period = 20.0;

  static Thresholds defaults() { return {}; }
  static Thresholds from_json(const Json& j);
  static Thresholds load(const std::filesystem::path& path);
  Json to_json() const;
};

/// u_{0,n} = base + bump * e^{inx} for n in `modes`, paired against `probe`.
struct WeakSequenceSpec {
  TorusField base;
  Complex bump{1.0, 0.0};
  std::vector<int> modes;
  TorusField probe;
  double horizon = 1.0;
  EquationSpec eq;
  IntegratorSpec integ;  ///< dt is an upper bound; t_end is replaced by the horizon
  int working_band = 256;
  unsigned threads = 1;

  /// Throws std::invalid_argument for an empty mode list, repeated or
  /// non-positive modes, a
  /// working band below 4 * max(modes), a zero probe or a non-positive horizon.
  void validate() const;
};

struct GapPoint {
  int n = 0;
  double gap = 0.0;          ///< sup_{|t| <= T} |<u_n(t) - u(t), probe>|
  double l4_weak_proxy = 0.0;  ///< |int w(t) <u_n(t) - u(t), probe> dt|, w = cos^2(pi t / 2T)
  double l4_norm_gap = 0.0;  ///< ||u_n - u||_{L^4([-T, T] x T)}; exploratory
  double l6_norm_gap = 0.0;  ///< same in L^6; exploratory, no verdict
  double predicted_defect = 0.0;  ///< sup_t |e^{-+2i|c|^2 t} - 1| |<u(t), probe>|
  double mu = 0.0;            ///< mean intensity of u_{0,n}
  double dt = 0.0;
  long long steps = 0;
  TorusField final_state;     ///< u_n at t = +T
};

struct WeakContinuityResult {
  Variant variant = Variant::WNLS;
  std::vector<GapPoint> points;  ///< in the order of spec.modes
  double spearman = 0.0;
  double ratio_last_first = 0.0;  ///< G at the highest mode over G at the lowest
  bool decay_verdict = false;    ///< Theorem-1 style decay
  bool plateau_verdict = false;  ///< NLS: gap stays bounded below
  bool verdict = false;          ///< decay for Wick variants, plateau otherwise
};

/// Evolves every u_{0,n} and u_0 forward and (through u(-t) = conj(w(t)),
/// w evolved from conj(u_0)) backward to the horizon and records the gaps.
WeakContinuityResult weak_continuity_run(const WeakSequenceSpec& spec,
                                         const Thresholds& th = Thresholds::defaults());

struct MolinetResult {
  WeakContinuityResult nls;
  WeakContinuityResult wnls;
  double nls_plateau = 0.0;         ///< NLS G at the highest mode
  double predicted_plateau = 0.0;   ///< gauge prediction at the highest mode
  double plateau_rel_error = 0.0;
  std::vector<double> gauge_residual;  ///< per n, L^2 distance at the horizon
  bool verdict = false;
};

/// Runs the same sequence under the cubic and the Wick-ordered equation.
MolinetResult molinet_gap_run(const WeakSequenceSpec& spec, const Thresholds& th = Thresholds::defaults());

/// int_{-T}^{T} int |S(t) f|^4 dx dt in closed form: the time integral of
/// every oscillation e^{i w t} is taken exactly.
double free_l4_fourth_power(const TorusField& f, double T);

struct StrichartzResult {
  int max_mode = 0;
  int doubled_mode = 0;
  double T = 0.0;
  std::size_t used_samples = 0;  ///< members with nonzero L^2 norm
  std::vector<double> ratios;          ///< at max_mode
  std::vector<double> ratios_doubled;  ///< at 2 * max_mode
  double max_ratio = 0.0;
  double max_ratio_doubled = 0.0;
  double rel_change = 0.0;
  bool verdict = false;
};

/// ||S(t) f||_{L^4([-T,T] x T)} / ||f||_{L^2} over an ensemble, at
/// max_mode and twice max_mode. Requires 0 < T <= 1 and samples >= 100.
StrichartzResult strichartz_ratio_probe(const RandomDataSpec& ensemble, double T, std::size_t samples,
                                        unsigned threads = 1, const Thresholds& th = Thresholds::defaults());

struct AprioriResult {
  double s = 0.0;
  double T = 0.0;
  int max_mode = 0;
  int doubled_mode = 0;
  std::vector<double> ratios;          ///< sup_t ||u(t)||_{H^s} / ||u0||_{H^s}
  std::vector<double> ratios_doubled;
  double p99 = 0.0, p99_doubled = 0.0;
  double median = 0.0, median_doubled = 0.0;
  bool verdict = false;
};

/// WNLS evolution of an ensemble with the split-step scheme at time step dt.
/// Requires s in [-1/2, 0].
AprioriResult apriori_growth_probe(const RandomDataSpec& ensemble, double s, double T, std::size_t samples,
                                   int sign = +1, double dt = 1e-3, unsigned threads = 1,
                                   const Thresholds& th = Thresholds::defaults());

struct OrderStudyResult {
  Scheme scheme = Scheme::StrangSplitStep;
  std::vector<double> dts;
  std::vector<double> errors;
  bool exact_reference = false;  ///< plane-wave closed form instead of a fine solve
  bool exact_to_roundoff = false;
  double order = 0.0;            ///< NaN when exact_to_roundoff
  bool verdict = false;
};

/// Errors at t_end against the closed-form plane wave (single-mode data) or a
/// reference solve at dts.back() / 8. Requires >= 3 decreasing dts, each
/// dividing t_end.
OrderStudyResult integrator_order_study(const TorusField& u0, const EquationSpec& eq, Scheme scheme,
                                        const std::vector<double>& dts, double t_end = 1.0,
                                        const Thresholds& th = Thresholds::defaults());

/// The exact single-mode solution, or nullopt when u0 is not a single mode.
std::optional<TorusField> plane_wave_solution(const TorusField& u0, const EquationSpec& eq, double t);

ExperimentReport to_report(const WeakContinuityResult& r, const Json& metadata);
ExperimentReport to_report(const MolinetResult& r, const Json& metadata);
ExperimentReport to_report(const StrichartzResult& r, const Json& metadata);
ExperimentReport to_report(const AprioriResult& r, const Json& metadata);
ExperimentReport to_report(const OrderStudyResult& r, const Json& metadata);

}  // namespace tnls::experiments
