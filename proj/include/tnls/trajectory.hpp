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

#include <optional>
#include <vector>

#include "tnls/field.hpp"

namespace tnls {

/// Conserved-quantity ledger entry recorded with every snapshot.
struct LedgerRow {
  double mass = 0.0;
  double momentum = 0.0;
  double hamiltonian = 0.0;
  std::optional<double> wick_hamiltonian;
  double mu = 0.0;
};

/// Time-stamped snapshots of one evolution. Times are strictly increasing,
/// all snapshots share one band, and there is one ledger row per snapshot.
struct Trajectory {
  std::vector<double> times;
  std::vector<TorusField> snapshots;
  std::vector<LedgerRow> ledger;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
};

/// (sum_k dt * int |u(t_k)|^4 dx)^{1/4}, left rectangle rule in time over the
/// snapshot intervals, exact quadrature in space.
/// Throws std::invalid_argument for fewer than two snapshots or a
/// non-uniform time grid.
double spacetime_l4_norm(const Trajectory& traj);

/// Same construction with |u|^6; used for exploratory series only.
double spacetime_l6_norm(const Trajectory& traj);

}  // namespace tnls
