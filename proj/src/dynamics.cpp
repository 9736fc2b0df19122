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

#include "tnls/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tnls/fft.hpp"
#include "tnls/wick.hpp"

namespace tnls {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::NLS: return "NLS";
    case Variant::WNLS: return "WNLS";
    case Variant::TruncatedNLS: return "TruncatedNLS";
    case Variant::TruncatedWNLSHamiltonian: return "TruncatedWNLS_Hamiltonian";
    case Variant::TruncatedWNLSGauged: return "TruncatedWNLS_Gauged";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  for (auto v : {Variant::NLS, Variant::WNLS, Variant::TruncatedNLS, Variant::TruncatedWNLSHamiltonian,
                 Variant::TruncatedWNLSGauged}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown equation variant '" + s + "'");
}

std::string to_string(Scheme s) { return s == Scheme::RK4 ? "RK4" : "StrangSplitStep"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "RK4" || s == "rk4") return Scheme::RK4;
  if (s == "StrangSplitStep" || s == "strang") return Scheme::StrangSplitStep;
  throw std::invalid_argument("unknown integrator scheme '" + s + "'");
}

bool EquationSpec::truncated() const noexcept {
  return variant == Variant::TruncatedNLS || variant == Variant::TruncatedWNLSHamiltonian ||
         variant == Variant::TruncatedWNLSGauged;
}

bool EquationSpec::wick_mean_term() const noexcept {
  return variant == Variant::WNLS || variant == Variant::TruncatedWNLSGauged;
}

void EquationSpec::validate() const {
  if (sign != 1 && sign != -1) throw std::invalid_argument("equation sign must be +1 or -1");
  if (truncated() && !truncation) throw std::invalid_argument(to_string(variant) + " requires a truncation");
  if (!truncated() && truncation) throw std::invalid_argument(to_string(variant) + " takes no truncation");
  if (truncation && *truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
}

void IntegratorSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be >= 0");
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
  if (!(amplitude_cap > 0.0)) throw std::invalid_argument("amplitude_cap must be positive");
}

namespace {

std::size_t slot(int n, std::size_t m) {
  const auto mm = static_cast<long long>(m);
  long long r = n % mm;
  if (r < 0) r += mm;
  return static_cast<std::size_t>(r);
}

/// Exact modes |k| <= out_band of |u|^2 u, using a grid large enough that no
/// alias of the band-3N product lands in the requested range.
std::vector<Complex> cubic_modes(std::span<const Complex> coeffs, int band, int out_band,
                                 double* grid_max = nullptr) {
  const std::size_t m = fast_fft_size(static_cast<std::size_t>(3 * band + out_band + 1));
  std::vector<Complex> grid(m);
  for (int n = -band; n <= band; ++n) grid[slot(n, m)] = coeffs[static_cast<std::size_t>(n + band)];
  fft::backward(grid);
  double peak = 0.0;
  for (auto& u : grid) {
    const double a = std::norm(u);
    peak = std::max(peak, a);
    u *= a;
  }
  if (grid_max) *grid_max = std::sqrt(peak);
  fft::forward(grid);
  const double inv = 1.0 / static_cast<double>(m);
  std::vector<Complex> out(static_cast<std::size_t>(2 * out_band + 1));
  for (int k = -out_band; k <= out_band; ++k) out[static_cast<std::size_t>(k + out_band)] = grid[slot(k, m)] * inv;
  return out;
}

double linear_frequency(int n, const EquationSpec& eq, double a_n) {
  double w = static_cast<double>(n) * n;
  if (eq.variant == Variant::TruncatedWNLSHamiltonian) w -= 2.0 * eq.sign * a_n;
  return w;
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Strang splitting on the (2N+1)-point collocation grid. The DFT on that
/// grid is unitary, the linear substep is a unit-modulus multiplier and the
/// nonlinear substep is a pointwise unit-modulus phase, so mass is conserved
/// to rounding. The state is carried in long double: in double the transform
/// pair loses about one ulp of mass per step, which over 1e4 steps is 1e-12.
class SplitStepper {
  using LComplex = std::complex<long double>;

public:
  SplitStepper(const TorusField& u0, const EquationSpec& eq, double dt, double cap)
      : eq_(eq), band_(u0.max_mode()), m_(static_cast<std::size_t>(2 * band_ + 1)), dt_(dt), cap_(cap),
        state_(m_), half_(m_), full_(m_) {
    const double a = eq.variant == Variant::TruncatedWNLSHamiltonian ? wick::a_N(band_, eq.alpha) : 0.0;
    const long double dt_l = dt;
    for (int n = -band_; n <= band_; ++n) {
      const auto s = slot(n, m_);
      state_[s] = LComplex(u0[n]);
      const long double w = linear_frequency(n, eq, a);
      half_[s] = std::polar(1.0L, 0.5L * w * dt_l);
      full_[s] = std::polar(1.0L, w * dt_l);
    }
  }

  /// Advances `steps` steps, merging adjacent half linear substeps. Returns
  /// false on divergence with `completed` counting the steps that finished.
  bool advance(int steps, int& completed) {
    completed = 0;
    if (steps <= 0) return true;
    multiply(half_);
    for (int s = 0; s < steps; ++s) {
      if (!nonlinear_substep()) return false;
      multiply(s + 1 == steps ? half_ : full_);
      ++completed;
    }
    return true;
  }

  TorusField field() const {
    std::vector<Complex> c(m_);
    for (int n = -band_; n <= band_; ++n) c[static_cast<std::size_t>(n + band_)] = Complex(state_[slot(n, m_)]);
    return TorusField(band_, std::move(c));
  }

  double peak() const { return peak_; }

private:
  void multiply(const std::vector<LComplex>& phase) {
    for (std::size_t i = 0; i < m_; ++i) state_[i] *= phase[i];
  }

  bool nonlinear_substep() {
    std::vector<LComplex> grid = state_;
    fft::backward(grid);
    long double mean = 0.0L;
    long double peak = 0.0L;
    for (const auto& u : grid) {
      const long double a = std::norm(u);
      mean += a;
      peak = std::max(peak, a);
    }
    const long double m = static_cast<long double>(m_);
    mean /= m;
    peak_ = std::sqrt(static_cast<double>(peak));
    if (!std::isfinite(mean) || peak_ > cap_) return false;
    const long double shift = eq_.wick_mean_term() ? 2.0L * mean : 0.0L;
    const long double k = eq_.sign * static_cast<long double>(dt_);
    for (auto& u : grid) u *= std::polar(1.0L, k * (std::norm(u) - shift));
    fft::forward(grid);
    for (std::size_t i = 0; i < m_; ++i) {
      const LComplex v = grid[i] / m;
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      state_[i] = v;
    }
    return true;
  }

  EquationSpec eq_;
  int band_;
  std::size_t m_;
  double dt_;
  double cap_;
  double peak_ = 0.0;
  std::vector<LComplex> state_, half_, full_;
};

/// Classical RK4 on the exact Galerkin right-hand side.
class RK4Stepper {
public:
  RK4Stepper(const TorusField& u0, const EquationSpec& eq, double dt, double cap)
      : eq_(eq), band_(u0.max_mode()), dt_(dt), cap_(cap),
        state_(u0.coeffs().begin(), u0.coeffs().end()), omega_(state_.size()) {
    const double a = eq.variant == Variant::TruncatedWNLSHamiltonian ? wick::a_N(band_, eq.alpha) : 0.0;
    for (int n = -band_; n <= band_; ++n) omega_[static_cast<std::size_t>(n + band_)] = linear_frequency(n, eq, a);
  }

  bool advance(int steps, int& completed) {
    completed = 0;
    const std::size_t sz = state_.size();
    std::vector<Complex> k1, k2, k3, k4, tmp(sz);
    for (int s = 0; s < steps; ++s) {
      double peak = 0.0;
      k1 = rhs(state_, &peak);
      peak_ = peak;
      if (!(peak <= cap_)) return false;
      for (std::size_t i = 0; i < sz; ++i) tmp[i] = state_[i] + 0.5 * dt_ * k1[i];
      k2 = rhs(tmp);
      for (std::size_t i = 0; i < sz; ++i) tmp[i] = state_[i] + 0.5 * dt_ * k2[i];
      k3 = rhs(tmp);
      for (std::size_t i = 0; i < sz; ++i) tmp[i] = state_[i] + dt_ * k3[i];
      k4 = rhs(tmp);
      for (std::size_t i = 0; i < sz; ++i) {
        tmp[i] = state_[i] + dt_ / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!finite(tmp[i])) return false;
      }
      state_.swap(tmp);
      ++completed;
    }
    // Amplitude of the final state, so a blow-up on the last step is caught.
    double peak = 0.0;
    (void)cubic_modes(state_, band_, 0, &peak);
    peak_ = peak;
    return peak <= cap_;
  }

  TorusField field() const { return TorusField(band_, state_); }
  double peak() const { return peak_; }

private:
  std::vector<Complex> rhs(const std::vector<Complex>& c, double* peak = nullptr) const {
    std::vector<Complex> f = cubic_modes(c, band_, band_, peak);
    double mu = 0.0;
    if (eq_.wick_mean_term()) {
      for (const auto& x : c) mu += std::norm(x);
    }
    const Complex i_unit(0.0, 1.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      f[k] = i_unit * (omega_[k] * c[k] + static_cast<double>(eq_.sign) * (f[k] - 2.0 * mu * c[k]));
    }
    return f;
  }

  EquationSpec eq_;
  int band_;
  double dt_;
  double cap_;
  double peak_ = 0.0;
  std::vector<Complex> state_;
  std::vector<double> omega_;
};

template <typename Stepper>
void run(Stepper& stepper, long long total_steps, int stride, double dt, const SnapshotObserver& observer) {
  observer(0.0, stepper.field());
  long long done = 0;
  while (done < total_steps) {
    const int block = static_cast<int>(std::min<long long>(stride, total_steps - done));
    int completed = 0;
    const bool ok = stepper.advance(block, completed);
    if (!ok) {
      const double last = static_cast<double>(done + completed) * dt;
      throw IntegrationDiverged("integration diverged after t = " + std::to_string(last) +
                                    " (grid max |u| = " + std::to_string(stepper.peak()) + ")",
                                last);
    }
    done += block;
    observer(static_cast<double>(done) * dt, stepper.field());
  }
}

}  // namespace

TorusField cubic_term(const TorusField& field) {
  const int band = field.max_mode();
  return TorusField(3 * band, cubic_modes(field.coeffs(), band, 3 * band));
}

TorusField nonlinearity(const TorusField& field, const EquationSpec& spec) {
  switch (spec.variant) {
    case Variant::NLS:
      return cubic_term(field);
    case Variant::WNLS:
      return cubic_term(field) - (2.0 * mean_intensity(field)) * field;
    case Variant::TruncatedNLS:
    case Variant::TruncatedWNLSHamiltonian:
    case Variant::TruncatedWNLSGauged: {
      const int n = spec.truncation.value_or(field.max_mode());
      const TorusField u = project(field, n);
      TorusField out(n, cubic_modes(u.coeffs(), n, n));
      if (spec.variant == Variant::TruncatedWNLSGauged) out = out - (2.0 * mean_intensity(u)) * u;
      if (spec.variant == Variant::TruncatedWNLSHamiltonian) out = out - (2.0 * wick::a_N(n, spec.alpha)) * u;
      return out;
    }
  }
  return field;
}

std::pair<TorusField, TorusField> resonant_split(const TorusField& field) {
  const TorusField full = cubic_term(field);
  const int band = full.max_mode();
  const double mu = mean_intensity(field);
  std::vector<Complex> n1(full.coeffs().begin(), full.coeffs().end());
  std::vector<Complex> n2(n1.size());
  for (int n = -band; n <= band; ++n) {
    const auto i = static_cast<std::size_t>(n + band);
    const Complex u = field[n];
    const Complex diag = std::norm(u) * u;
    n1[i] += -2.0 * mu * u + diag;
    n2[i] = -diag;
  }
  return {TorusField(band, std::move(n1)), TorusField(band, std::move(n2))};
}

TorusField linear_propagator(const TorusField& field, double t) {
  const int band = field.max_mode();
  std::vector<Complex> c(field.size());
  for (int n = -band; n <= band; ++n) {
    c[static_cast<std::size_t>(n + band)] = field[n] * std::polar(1.0, static_cast<double>(n) * n * t);
  }
  return TorusField(band, std::move(c));
}

Conserved conserved(const TorusField& field, int sign) {
  const int band = field.max_mode();
  double mass = 0.0, mom = 0.0, kin = 0.0;
  for (int n = -band; n <= band; ++n) {
    const double a = std::norm(field[n]);
    mass += a;
    mom += n * a;
    kin += static_cast<double>(n) * n * a;
  }
  Conserved c;
  c.mass = kTwoPi * mass;
  c.momentum = kTwoPi * mom;
  c.hamiltonian = 0.5 * kTwoPi * kin + 0.25 * sign * integral_abs_pow(field, 4);
  return c;
}

LedgerRow ledger_row(const TorusField& field, const EquationSpec& eq) {
  const auto c = conserved(field, eq.sign);
  LedgerRow row;
  row.mass = c.mass;
  row.momentum = c.momentum;
  row.hamiltonian = c.hamiltonian;
  row.mu = mean_intensity(field);
  if (eq.variant == Variant::TruncatedWNLSHamiltonian) {
    row.wick_hamiltonian = wick::wick_hamiltonian(field, field.max_mode(), eq.alpha, eq.sign);
  }
  return row;
}

int working_band(const TorusField& u0, const EquationSpec& eq) {
  return eq.truncated() ? *eq.truncation : u0.max_mode();
}

void evolve_observed(const TorusField& u0, const EquationSpec& eq, const IntegratorSpec& integ,
                     const SnapshotObserver& observer) {
  eq.validate();
  integ.validate();
  const long long steps = std::llround(integ.t_end / integ.dt);
  if (std::abs(static_cast<double>(steps) * integ.dt - integ.t_end) > 1e-9 * std::max(1.0, integ.t_end)) {
    throw std::invalid_argument("t_end must be an integer multiple of dt");
  }
  if (steps % integ.snapshot_stride != 0) {
    throw std::invalid_argument("the step count must be a multiple of snapshot_stride");
  }
  const TorusField start = project(u0, working_band(u0, eq));
  if (integ.scheme == Scheme::StrangSplitStep) {
    SplitStepper stepper(start, eq, integ.dt, integ.amplitude_cap);
    run(stepper, steps, integ.snapshot_stride, integ.dt, observer);
  } else {
    RK4Stepper stepper(start, eq, integ.dt, integ.amplitude_cap);
    run(stepper, steps, integ.snapshot_stride, integ.dt, observer);
  }
}

Trajectory evolve(const TorusField& u0, const EquationSpec& eq, const IntegratorSpec& integ) {
  Trajectory traj;
  evolve_observed(u0, eq, integ, [&](double t, const TorusField& u) {
    traj.times.push_back(t);
    traj.ledger.push_back(ledger_row(u, eq));
    traj.snapshots.push_back(u);
  });
  return traj;
}

namespace {

Trajectory phase_rotate(const Trajectory& traj, double rate) {
  Trajectory out = traj;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.snapshots[k] = std::polar(1.0, -rate * out.times[k]) * out.snapshots[k];
  }
  return out;
}

}  // namespace

Trajectory gauge_transform(const Trajectory& traj, double mu0, int sign) {
  return phase_rotate(traj, 2.0 * sign * mu0);
}

Trajectory truncation_gauge(const Trajectory& traj, int N, double alpha, int sign, bool check_constancy) {
  if (traj.empty()) return traj;
  const double c0 = wick::c_N(traj.snapshots.front(), N, alpha);
  if (check_constancy) {
    for (const auto& s : traj.snapshots) {
      if (std::abs(wick::c_N(s, N, alpha) - c0) > 1e-10) {
        throw std::logic_error("truncation_gauge: c_N not constant along the trajectory");
      }
    }
  }
  return phase_rotate(traj, 2.0 * sign * c0);
}

TorusField galilean_boost(const TorusField& field, int beta) {
  if (beta % 2 != 0) throw std::invalid_argument("galilean_boost: beta must be even on the torus");
  const int shift = beta / 2;
  const int band = field.max_mode() + std::abs(shift);
  std::vector<Complex> c(static_cast<std::size_t>(2 * band + 1));
  for (int n = -field.max_mode(); n <= field.max_mode(); ++n) {
    c[static_cast<std::size_t>(n + shift + band)] = field[n];
  }
  return TorusField(band, std::move(c));
}

}  // namespace tnls
