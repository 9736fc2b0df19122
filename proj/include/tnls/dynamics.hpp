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

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tnls/field.hpp"
#include "tnls/trajectory.hpp"

namespace tnls {

/// Equations of the form i u_t - u_xx + sign * F(u) = 0 on the torus, with
/// sign = +1 defocusing and sign = -1 focusing.
enum class Variant {
  NLS,                       ///< F = |u|^2 u
  WNLS,                      ///< F = (|u|^2 - 2 mean|u|^2) u
  TruncatedNLS,              ///< F = P_N(|u|^2 u)
  TruncatedWNLSHamiltonian,  ///< F = P_N(|u|^2 u) - 2 a_N u
  TruncatedWNLSGauged,       ///< F = P_N(|u|^2 u) - 2 mean|u|^2 u
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct EquationSpec {
  Variant variant = Variant::NLS;
  int sign = +1;
  std::optional<int> truncation;  ///< required iff the variant is truncated
  double alpha = 1.0;             ///< enters a_N for TruncatedWNLSHamiltonian

  bool truncated() const noexcept;
  bool wick_mean_term() const noexcept;
  /// Throws std::invalid_argument when sign is not +-1 or the truncation
  /// presence does not match the variant.
  void validate() const;
};

enum class Scheme { StrangSplitStep, RK4 };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct IntegratorSpec {
  Scheme scheme = Scheme::StrangSplitStep;
  double dt = 1e-3;
  double t_end = 1.0;
  int snapshot_stride = 1;
  double amplitude_cap = 1e6;  ///< abort once the grid max of |u| exceeds this

  void validate() const;
};

/// Raised when the solution becomes non-finite or exceeds the amplitude cap.
class IntegrationDiverged : public std::runtime_error {
public:
  IntegrationDiverged(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

private:
  double last_valid_time_;
};

/// Exact cubic |u|^2 u of a band-N field, band 3N.
TorusField cubic_term(const TorusField& field);

/// The variant's F(u). Untruncated variants return the exact band-3N
/// product; truncated variants project the field and the result to N.
TorusField nonlinearity(const TorusField& field, const EquationSpec& spec);

/// (N1, N2): the non-resonant part (n2 != n1, n3) and the diagonal
/// -|u_n|^2 u_n of the Wick nonlinearity. N1 + N2 == nonlinearity(WNLS).
std::pair<TorusField, TorusField> resonant_split(const TorusField& field);

/// Free flow u_n -> e^{i n^2 t} u_n.
TorusField linear_propagator(const TorusField& field, double t);

struct Conserved {
  double mass = 0.0;
  double momentum = 0.0;
  double hamiltonian = 0.0;
};

/// N = int |u|^2, P = Im int conj(u) u_x, H = 1/2 int |u_x|^2 + sign/4 int |u|^4.
Conserved conserved(const TorusField& field, int sign);

LedgerRow ledger_row(const TorusField& field, const EquationSpec& eq);

/// Band the solver works at for this data and equation.
int working_band(const TorusField& u0, const EquationSpec& eq);

using SnapshotObserver = std::function<void(double t, const TorusField& u)>;

/// Integrates from t = 0 to integ.t_end and hands every snapshot (including
/// t = 0 and t_end) to `observer` without storing it.
void evolve_observed(const TorusField& u0, const EquationSpec& eq, const IntegratorSpec& integ,
                     const SnapshotObserver& observer);

/// Integrates and stores every snapshot with its ledger row.
Trajectory evolve(const TorusField& u0, const EquationSpec& eq, const IntegratorSpec& integ);

/// Multiplies snapshot k by e^{-2 i sign mu0 t_k}; maps NLS solutions with
/// mean intensity mu0 onto WNLS solutions.
Trajectory gauge_transform(const Trajectory& traj, double mu0, int sign);

/// Multiplies snapshot k by e^{-2 i sign c_N t_k}, c_N from the first
/// snapshot. Maps TruncatedWNLSHamiltonian onto TruncatedWNLSGauged. With
/// `check_constancy`, c_N is re-evaluated per snapshot and std::logic_error is
/// thrown if it moves by more than 1e-10.
Trajectory truncation_gauge(const Trajectory& traj, int N, double alpha, int sign = +1,
                            bool check_constancy = false);

/// u(x) -> e^{i beta x / 2} u(x) for even beta: a shift of every mode by
/// beta/2. The band grows by |beta|/2 so no mode is lost.
TorusField galilean_boost(const TorusField& field, int beta);

}  // namespace tnls
