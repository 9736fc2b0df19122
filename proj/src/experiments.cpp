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

#include "tnls/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "tnls/parallel.hpp"
#include "tnls/stats.hpp"
#include "tnls/wick.hpp"

namespace tnls::experiments {

// ---------------------------------------------------------------- thresholds

Thresholds Thresholds::from_json(const Json& j) {
  Thresholds t;
  t.version = j.value("version", t.version);
  t.decay_spearman_max = j.value("decay_spearman_max", t.decay_spearman_max);
  t.decay_ratio_max = j.value("decay_ratio_max", t.decay_ratio_max);
  t.plateau_min_fraction = j.value("plateau_min_fraction", t.plateau_min_fraction);
  t.plateau_rel_tol = j.value("plateau_rel_tol", t.plateau_rel_tol);
  t.strichartz_rel_change_max = j.value("strichartz_rel_change_max", t.strichartz_rel_change_max);
  t.apriori_bound = j.value("apriori_bound", t.apriori_bound);
  t.strang_order_min = j.value("strang_order_min", t.strang_order_min);
  t.strang_order_max = j.value("strang_order_max", t.strang_order_max);
  t.rk4_order_min = j.value("rk4_order_min", t.rk4_order_min);
  t.rk4_order_max = j.value("rk4_order_max", t.rk4_order_max);
  t.snapshots_per_period = j.value("snapshots_per_period", t.snapshots_per_period);
  return t;
}

Thresholds Thresholds::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open thresholds file " + path.string());
  return from_json(Json::parse(in));
}

Json Thresholds::to_json() const {
  Json j;
  j["version"] = version;
  j["decay_spearman_max"] = decay_spearman_max;
  j["decay_ratio_max"] = decay_ratio_max;
  j["plateau_min_fraction"] = plateau_min_fraction;
  j["plateau_rel_tol"] = plateau_rel_tol;
  j["strichartz_rel_change_max"] = strichartz_rel_change_max;
  j["apriori_bound"] = apriori_bound;
  j["strang_order_min"] = strang_order_min;
  j["strang_order_max"] = strang_order_max;
  j["rk4_order_min"] = rk4_order_min;
  j["rk4_order_max"] = rk4_order_max;
  j["snapshots_per_period"] = snapshots_per_period;
  return j;
}

// ---------------------------------------------------------- weak continuity

void WeakSequenceSpec::validate() const {
  if (modes.empty()) throw std::invalid_argument("weak sequence: empty mode list");
  std::vector<int> sorted = modes;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() <= 0) throw std::invalid_argument("weak sequence: modes must be positive");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("weak sequence: modes must be distinct");
  }
  const int top = sorted.back();
  if (working_band < 4 * top) {
    throw std::invalid_argument("weak sequence: working band " + std::to_string(working_band) +
                                " is below 4 * max(modes) = " + std::to_string(4 * top));
  }
  if (base.max_mode() > working_band || probe.max_mode() > working_band) {
    throw std::invalid_argument("weak sequence: base or probe exceeds the working band");
  }
  if (mean_intensity(probe) == 0.0) throw std::invalid_argument("weak sequence: probe must be nonzero");
  if (!(horizon > 0.0)) throw std::invalid_argument("weak sequence: horizon must be positive");
  eq.validate();
  if (eq.truncated() && *eq.truncation < 4 * top) {
    throw std::invalid_argument("weak sequence: truncation below 4 * max(modes)");
  }
}

namespace {

constexpr long long kMaxStoredSnapshots = 400;

/// One direction of one evolution: probe pairings at every step and a
/// uniformly subsampled copy of the field.
struct Observed {
  std::vector<Complex> pairings;
  std::vector<TorusField> fields;
};

Observed observe(const TorusField& u0, bool backward, const TorusField& probe, const EquationSpec& eq,
                 const IntegratorSpec& integ, long long subsample) {
  Observed out;
  long long k = 0;
  const TorusField start = backward ? conj(u0) : u0;
  evolve_observed(start, eq, integ, [&](double, const TorusField& w) {
    const TorusField u = backward ? conj(w) : w;
    out.pairings.push_back(pairing(u, probe));
    if (k % subsample == 0) out.fields.push_back(u);
    ++k;
  });
  return out;
}

GapPoint gap_for_mode(const WeakSequenceSpec& spec, int n, const Thresholds& th) {
  const int band = spec.eq.truncated() ? *spec.eq.truncation : spec.working_band;
  const TorusField base = spec.base.with_band(band);
  const TorusField bumped = base + TorusField::single_mode(band, n, spec.bump);
  const TorusField probe = spec.probe.with_band(band);
  const double mu = mean_intensity(bumped);

  // Resolve the fastest plane-wave phase n^2 +- A^2 of the data.
  const double period = kTwoPi / (static_cast<double>(n) * n + 2.0 * mu);
  const double h0 = std::min(spec.integ.dt, period / th.snapshots_per_period);
  const double T = spec.horizon;
  long long steps = static_cast<long long>(std::ceil(T / h0 - 1e-9));
  const long long sub = std::max(1LL, (steps + kMaxStoredSnapshots - 1) / kMaxStoredSnapshots);
  steps = sub * ((steps + sub - 1) / sub);
  IntegratorSpec integ = spec.integ;
  integ.dt = T / static_cast<double>(steps);
  integ.t_end = static_cast<double>(steps) * integ.dt;
  integ.snapshot_stride = 1;

  const Observed base_fwd = observe(base, false, probe, spec.eq, integ, sub);
  const Observed base_bwd = observe(base, true, probe, spec.eq, integ, sub);
  const Observed bump_fwd = observe(bumped, false, probe, spec.eq, integ, sub);
  const Observed bump_bwd = observe(bumped, true, probe, spec.eq, integ, sub);

  GapPoint p;
  p.n = n;
  p.mu = mu;
  p.dt = integ.dt;
  p.steps = steps;

  const double c2 = std::norm(spec.bump);
  const double sign = spec.eq.sign;
  Complex proxy{};
  auto accumulate = [&](const Observed& a, const Observed& b, double direction, bool skip_zero) {
    for (std::size_t k = skip_zero ? 1 : 0; k < a.pairings.size(); ++k) {
      const double t = direction * static_cast<double>(k) * integ.dt;
      const Complex d = b.pairings[k] - a.pairings[k];
      p.gap = std::max(p.gap, std::abs(d));
      const double w = std::cos(0.5 * M_PI * t / T);
      proxy += w * w * integ.dt * d;
      const double defect = std::abs(std::polar(1.0, -2.0 * sign * c2 * t) - 1.0) * std::abs(a.pairings[k]);
      p.predicted_defect = std::max(p.predicted_defect, defect);
    }
  };
  accumulate(base_fwd, bump_fwd, 1.0, false);
  accumulate(base_bwd, bump_bwd, -1.0, true);
  p.l4_weak_proxy = std::abs(proxy);

  Trajectory diff;
  const double h = integ.dt * static_cast<double>(sub);
  const long long stored = static_cast<long long>(base_bwd.fields.size());
  for (long long k = stored - 1; k >= 1; --k) {
    diff.times.push_back(-static_cast<double>(k) * h);
    diff.snapshots.push_back(bump_bwd.fields[static_cast<std::size_t>(k)] - base_bwd.fields[static_cast<std::size_t>(k)]);
  }
  for (std::size_t k = 0; k < base_fwd.fields.size(); ++k) {
    diff.times.push_back(static_cast<double>(k) * h);
    diff.snapshots.push_back(bump_fwd.fields[k] - base_fwd.fields[k]);
  }
  diff.ledger.resize(diff.times.size());
  p.l4_norm_gap = spacetime_l4_norm(diff);
  p.l6_norm_gap = spacetime_l6_norm(diff);
  p.final_state = bump_fwd.fields.back();
  return p;
}

const GapPoint& lowest_mode(const std::vector<GapPoint>& points) {
  return *std::min_element(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
}

const GapPoint& highest_mode(const std::vector<GapPoint>& points) {
  return *std::max_element(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
}

void apply_verdicts(WeakContinuityResult& r, const Thresholds& th) {
  std::vector<double> ns, gs;
  for (const auto& p : r.points) {
    ns.push_back(p.n);
    gs.push_back(p.gap);
  }
  const double gmax = *std::max_element(gs.begin(), gs.end());
  const bool all_zero = gmax == 0.0;
  const double first = lowest_mode(r.points).gap;
  const double last = highest_mode(r.points).gap;
  r.spearman = gs.size() >= 2 ? stats::spearman(ns, gs) : std::numeric_limits<double>::quiet_NaN();
  r.ratio_last_first = first > 0.0 ? last / first : 0.0;
  r.decay_verdict = all_zero || (r.spearman < th.decay_spearman_max && r.ratio_last_first <= th.decay_ratio_max);
  r.plateau_verdict = !all_zero && last >= th.plateau_min_fraction * first;
  const bool wick = r.variant == Variant::WNLS || r.variant == Variant::TruncatedWNLSGauged ||
                    r.variant == Variant::TruncatedWNLSHamiltonian;
  r.verdict = wick ? r.decay_verdict : r.plateau_verdict;
}

}  // namespace

WeakContinuityResult weak_continuity_run(const WeakSequenceSpec& spec, const Thresholds& th) {
  spec.validate();
  WeakContinuityResult r;
  r.variant = spec.eq.variant;
  r.points.resize(spec.modes.size());
  parallel_for(spec.modes.size(), spec.threads,
               [&](std::size_t i) { r.points[i] = gap_for_mode(spec, spec.modes[i], th); });
  apply_verdicts(r, th);
  return r;
}

MolinetResult molinet_gap_run(const WeakSequenceSpec& spec, const Thresholds& th) {
  WeakSequenceSpec nls = spec;
  WeakSequenceSpec wnls = spec;
  if (spec.eq.truncated()) {
    nls.eq.variant = Variant::TruncatedNLS;
    wnls.eq.variant = Variant::TruncatedWNLSGauged;
  } else {
    nls.eq.variant = Variant::NLS;
    wnls.eq.variant = Variant::WNLS;
  }
  MolinetResult r;
  r.nls = weak_continuity_run(nls, th);
  r.wnls = weak_continuity_run(wnls, th);
  r.nls_plateau = highest_mode(r.nls.points).gap;
  r.predicted_plateau = highest_mode(r.nls.points).predicted_defect;
  if (r.predicted_plateau > 0.0) {
    r.plateau_rel_error = std::abs(r.nls_plateau - r.predicted_plateau) / r.predicted_plateau;
  } else {
    r.plateau_rel_error = r.nls_plateau == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double T = spec.horizon;
  for (std::size_t i = 0; i < r.nls.points.size(); ++i) {
    const auto& a = r.nls.points[i];
    const auto& b = r.wnls.points[i];
    const TorusField gauged = std::polar(1.0, -2.0 * spec.eq.sign * a.mu * T) * a.final_state;
    r.gauge_residual.push_back(l2_physical(gauged - b.final_state));
  }
  r.verdict = r.plateau_rel_error <= th.plateau_rel_tol && r.wnls.decay_verdict;
  return r;
}

// ----------------------------------------------------------------- Strichartz

double free_l4_fourth_power(const TorusField& f, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("free_l4_fourth_power: T must be positive");
  const int band = f.max_mode();
  // |S(t)f|^2 = sum_m rho_m(t) e^{imx}, rho_m = sum_n c_{m,n} e^{i(m^2 + 2mn)t},
  // c_{m,n} = f_{n+m} conj(f_n); int |u|^4 dx = 2 pi sum_m |rho_m|^2 and
  // rho_{-m} = conj(rho_m).
  double total = 0.0;
  std::vector<Complex> c;
  std::vector<double> kernel;
  for (int m = 0; m <= 2 * band; ++m) {
    const int lo = -band;
    const int hi = band - m;
    const int len = hi - lo + 1;
    c.assign(static_cast<std::size_t>(len), Complex{});
    for (int n = lo; n <= hi; ++n) c[static_cast<std::size_t>(n - lo)] = f[n + m] * std::conj(f[n]);
    // int_{-T}^{T} e^{2imdt} dt = 2T sinc(2mdT)
    kernel.assign(static_cast<std::size_t>(len), 0.0);
    for (int d = 0; d < len; ++d) {
      const double x = 2.0 * m * d * T;
      kernel[static_cast<std::size_t>(d)] = x == 0.0 ? 2.0 * T : 2.0 * std::sin(x) / (2.0 * m * d);
    }
    double q = 0.0;
    for (int j = 0; j < len; ++j) {
      const Complex cj = c[static_cast<std::size_t>(j)];
      if (cj == Complex{}) continue;
      Complex acc{};
      for (int k = 0; k < len; ++k) acc += std::conj(c[static_cast<std::size_t>(k)]) * kernel[static_cast<std::size_t>(std::abs(j - k))];
      q += (cj * acc).real();
    }
    total += (m == 0 ? 1.0 : 2.0) * q;
  }
  return kTwoPi * total;
}

StrichartzResult strichartz_ratio_probe(const RandomDataSpec& ensemble, double T, std::size_t samples,
                                        unsigned threads, const Thresholds& th) {
  ensemble.validate();
  if (!(T > 0.0) || T > 1.0) throw std::invalid_argument("strichartz probe: T must lie in (0, 1]");
  if (samples < 100) throw std::invalid_argument("strichartz probe: need >= 100 samples");
  StrichartzResult r;
  r.T = T;
  r.max_mode = ensemble.max_mode;
  r.doubled_mode = 2 * ensemble.max_mode;
  std::vector<double> a(samples, -1.0), b(samples, -1.0);
  parallel_for(samples, threads, [&](std::size_t k) {
    RandomDataSpec m = ensemble.member(k);
    const TorusField f = sample(m);
    m.max_mode = r.doubled_mode;
    if (m.offset) m.offset = m.offset->with_band(m.max_mode);
    const TorusField g = sample(m);
    const double nf = l2_physical(f);
    const double ng = l2_physical(g);
    if (nf > 0.0) a[k] = std::pow(free_l4_fourth_power(f, T), 0.25) / nf;
    if (ng > 0.0) b[k] = std::pow(free_l4_fourth_power(g, T), 0.25) / ng;
  });
  for (std::size_t k = 0; k < samples; ++k) {
    if (a[k] < 0.0 || b[k] < 0.0) continue;
    r.ratios.push_back(a[k]);
    r.ratios_doubled.push_back(b[k]);
  }
  r.used_samples = r.ratios.size();
  if (r.used_samples == 0) return r;
  r.max_ratio = *std::max_element(r.ratios.begin(), r.ratios.end());
  r.max_ratio_doubled = *std::max_element(r.ratios_doubled.begin(), r.ratios_doubled.end());
  r.rel_change = std::abs(r.max_ratio_doubled - r.max_ratio) / r.max_ratio;
  r.verdict = r.rel_change <= th.strichartz_rel_change_max;
  return r;
}

// ------------------------------------------------------------------ a priori

AprioriResult apriori_growth_probe(const RandomDataSpec& ensemble, double s, double T, std::size_t samples,
                                   int sign, double dt, unsigned threads, const Thresholds& th) {
  ensemble.validate();
  if (s < -0.5 || s > 0.0) throw std::invalid_argument("a priori probe: s must lie in [-1/2, 0]");
  if (samples == 0) throw std::invalid_argument("a priori probe: samples must be positive");
  AprioriResult r;
  r.s = s;
  r.T = T;
  r.max_mode = ensemble.max_mode;
  r.doubled_mode = 2 * ensemble.max_mode;
  EquationSpec eq;
  eq.variant = Variant::WNLS;
  eq.sign = sign;
  IntegratorSpec integ;
  integ.scheme = Scheme::StrangSplitStep;
  const long long steps = std::max(1LL, std::llround(T / dt));
  integ.dt = T / static_cast<double>(steps);
  integ.t_end = T;
  integ.snapshot_stride = 1;
  const NormSpec ns = NormSpec::sobolev(s);

  auto sup_ratio = [&](const TorusField& u0) {
    const double n0 = norm(u0, ns);
    double sup = 0.0;
    evolve_observed(u0, eq, integ, [&](double, const TorusField& u) { sup = std::max(sup, norm(u, ns)); });
    return n0 > 0.0 ? sup / n0 : 1.0;
  };
  r.ratios.resize(samples);
  r.ratios_doubled.resize(samples);
  parallel_for(samples, threads, [&](std::size_t k) {
    RandomDataSpec m = ensemble.member(k);
    r.ratios[k] = sup_ratio(sample(m));
    m.max_mode = r.doubled_mode;
    if (m.offset) m.offset = m.offset->with_band(m.max_mode);
    r.ratios_doubled[k] = sup_ratio(sample(m));
  });
  r.p99 = stats::quantile(r.ratios, 0.99);
  r.p99_doubled = stats::quantile(r.ratios_doubled, 0.99);
  r.median = stats::median(r.ratios);
  r.median_doubled = stats::median(r.ratios_doubled);
  r.verdict = r.p99 <= th.apriori_bound && r.p99_doubled <= th.apriori_bound;
  return r;
}

// -------------------------------------------------------------- order study

std::optional<TorusField> plane_wave_solution(const TorusField& u0, const EquationSpec& eq, double t) {
  int mode = 0;
  int nonzero = 0;
  for (int n = -u0.max_mode(); n <= u0.max_mode(); ++n) {
    if (u0[n] != Complex{}) {
      mode = n;
      ++nonzero;
    }
  }
  if (nonzero != 1) return std::nullopt;
  const int band = working_band(u0, eq);
  if (std::abs(mode) > band) return TorusField(band);
  const Complex a = u0[mode];
  const double a2 = std::norm(a);
  const double s = eq.sign;
  double w = static_cast<double>(mode) * mode;
  switch (eq.variant) {
    case Variant::NLS:
    case Variant::TruncatedNLS: w += s * a2; break;
    case Variant::WNLS:
    case Variant::TruncatedWNLSGauged: w -= s * a2; break;
    case Variant::TruncatedWNLSHamiltonian: w += s * a2 - 2.0 * s * wick::a_N(band, eq.alpha); break;
  }
  return TorusField::single_mode(band, mode, a * std::polar(1.0, w * t));
}

OrderStudyResult integrator_order_study(const TorusField& u0, const EquationSpec& eq, Scheme scheme,
                                        const std::vector<double>& dts, double t_end, const Thresholds& th) {
  if (dts.size() < 3) throw std::invalid_argument("order study: need at least three time steps");
  for (std::size_t i = 1; i < dts.size(); ++i) {
    if (!(dts[i] < dts[i - 1])) throw std::invalid_argument("order study: time steps must decrease");
  }
  auto final_state = [&](double dt) {
    IntegratorSpec integ;
    integ.scheme = scheme;
    integ.dt = dt;
    integ.t_end = t_end;
    const long long steps = std::llround(t_end / dt);
    integ.snapshot_stride = static_cast<int>(std::max(1LL, steps));
    TorusField last;
    evolve_observed(u0, eq, integ, [&](double, const TorusField& u) { last = u; });
    return last;
  };
  OrderStudyResult r;
  r.scheme = scheme;
  r.dts = dts;
  std::optional<TorusField> ref = plane_wave_solution(u0, eq, t_end);
  r.exact_reference = ref.has_value();
  if (!ref) ref = final_state(dts.back() / 8.0);
  for (double dt : dts) r.errors.push_back(l2_physical(final_state(dt) - *ref));
  const double scale = std::max(1.0, l2_physical(*ref));
  const double worst = *std::max_element(r.errors.begin(), r.errors.end());
  r.exact_to_roundoff = worst <= 1e-11 * scale;
  if (r.exact_to_roundoff) {
    r.order = std::numeric_limits<double>::quiet_NaN();
    r.verdict = true;
  } else {
    r.order = stats::loglog_slope(r.dts, r.errors);
    const bool strang = scheme == Scheme::StrangSplitStep;
    const double lo = strang ? th.strang_order_min : th.rk4_order_min;
    const double hi = strang ? th.strang_order_max : th.rk4_order_max;
    r.verdict = r.order >= lo && r.order <= hi;
  }
  return r;
}

// ------------------------------------------------------------------ reports

namespace {

Series make_series(std::string name, std::string xu, std::string yu, std::vector<double> x, std::vector<double> y) {
  return {std::move(name), std::move(xu), std::move(yu), std::move(x), std::move(y)};
}

void add_weak_series(ExperimentReport& rep, const WeakContinuityResult& r, const std::string& prefix) {
  std::vector<double> n, g, proxy, l4, l6, pred;
  for (const auto& p : r.points) {
    n.push_back(p.n);
    g.push_back(p.gap);
    proxy.push_back(p.l4_weak_proxy);
    l4.push_back(p.l4_norm_gap);
    l6.push_back(p.l6_norm_gap);
    pred.push_back(p.predicted_defect);
  }
  rep.series.push_back(make_series(prefix + "pairing_gap", "mode", "L2 pairing", n, g));
  rep.series.push_back(make_series(prefix + "l4_weak_proxy", "mode", "space-time pairing", n, proxy));
  rep.series.push_back(make_series(prefix + "l4_norm_gap", "mode", "L4 space-time norm", n, l4));
  rep.series.push_back(make_series(prefix + "l6_norm_gap", "mode", "L6 space-time norm", n, l6));
  rep.series.push_back(make_series(prefix + "predicted_defect", "mode", "L2 pairing", n, pred));
  rep.scalars.emplace_back(prefix + "spearman", r.spearman);
  rep.scalars.emplace_back(prefix + "ratio_last_first", r.ratio_last_first);
  rep.verdicts.emplace_back(prefix + "decay", r.decay_verdict);
  rep.verdicts.emplace_back(prefix + "plateau", r.plateau_verdict);
}

}  // namespace

ExperimentReport to_report(const WeakContinuityResult& r, const Json& metadata) {
  ExperimentReport rep;
  rep.kind = "weak_continuity";
  rep.metadata = metadata;
  rep.metadata["variant"] = to_string(r.variant);
  add_weak_series(rep, r, "");
  rep.verdict = r.verdict;
  return rep;
}

ExperimentReport to_report(const MolinetResult& r, const Json& metadata) {
  ExperimentReport rep;
  rep.kind = "molinet_gap";
  rep.metadata = metadata;
  add_weak_series(rep, r.nls, "nls_");
  add_weak_series(rep, r.wnls, "wnls_");
  std::vector<double> n;
  for (const auto& p : r.nls.points) n.push_back(p.n);
  rep.series.push_back(make_series("gauge_residual", "mode", "L2 distance", n, r.gauge_residual));
  rep.scalars.emplace_back("nls_plateau_value", r.nls_plateau);
  rep.scalars.emplace_back("predicted_plateau", r.predicted_plateau);
  rep.scalars.emplace_back("plateau_rel_error", r.plateau_rel_error);
  rep.verdict = r.verdict;
  return rep;
}

ExperimentReport to_report(const StrichartzResult& r, const Json& metadata) {
  ExperimentReport rep;
  rep.kind = "strichartz_ratio";
  rep.metadata = metadata;
  std::vector<double> idx;
  for (std::size_t i = 0; i < r.ratios.size(); ++i) idx.push_back(static_cast<double>(i));
  rep.series.push_back(make_series("ratio_max_mode", "sample", "L4/L2", idx, r.ratios));
  rep.series.push_back(make_series("ratio_doubled_mode", "sample", "L4/L2", idx, r.ratios_doubled));
  rep.scalars.emplace_back("max_ratio", r.max_ratio);
  rep.scalars.emplace_back("max_ratio_doubled", r.max_ratio_doubled);
  rep.scalars.emplace_back("rel_change", r.rel_change);
  rep.scalars.emplace_back("used_samples", static_cast<double>(r.used_samples));
  rep.verdicts.emplace_back("max_ratio_stable", r.verdict);
  rep.verdict = r.verdict;
  return rep;
}

ExperimentReport to_report(const AprioriResult& r, const Json& metadata) {
  ExperimentReport rep;
  rep.kind = "apriori_growth";
  rep.metadata = metadata;
  std::vector<double> idx;
  for (std::size_t i = 0; i < r.ratios.size(); ++i) idx.push_back(static_cast<double>(i));
  rep.series.push_back(make_series("sup_ratio_max_mode", "sample", "Hs ratio", idx, r.ratios));
  rep.series.push_back(make_series("sup_ratio_doubled_mode", "sample", "Hs ratio", idx, r.ratios_doubled));
  rep.scalars.emplace_back("p99", r.p99);
  rep.scalars.emplace_back("p99_doubled", r.p99_doubled);
  rep.scalars.emplace_back("median", r.median);
  rep.scalars.emplace_back("median_doubled", r.median_doubled);
  rep.verdicts.emplace_back("p99_bounded", r.verdict);
  rep.verdict = r.verdict;
  return rep;
}

ExperimentReport to_report(const OrderStudyResult& r, const Json& metadata) {
  ExperimentReport rep;
  rep.kind = "order_study";
  rep.metadata = metadata;
  rep.metadata["scheme"] = to_string(r.scheme);
  rep.series.push_back(make_series("error_at_t_end", "time step", "L2 distance", r.dts, r.errors));
  rep.scalars.emplace_back("order", r.order);
  rep.verdicts.emplace_back("exact_reference", r.exact_reference);
  rep.verdicts.emplace_back("exact_to_roundoff", r.exact_to_roundoff);
  rep.verdicts.emplace_back("order_in_range", r.verdict);
  rep.verdict = r.verdict;
  return rep;
}

}  // namespace tnls::experiments
