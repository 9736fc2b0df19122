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

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tnls/field.hpp"
#include "tnls/trajectory.hpp"

namespace tnls {

using Json = nlohmann::ordered_json;

/// {"max_mode": N, "coeffs": [[re, im], ...]} ordered n = -N..N. Doubles are
/// written in shortest round-trip form, so reading back is bit-exact.
Json field_to_json(const TorusField& field);

/// Throws std::invalid_argument on a malformed record.
TorusField field_from_json(const Json& j);

void write_field_file(const std::filesystem::path& path, const TorusField& field);
TorusField read_field_file(const std::filesystem::path& path);

struct NamedNorm {
  std::string name;
  NormSpec spec;
};

/// l2, h1 and h^{-1/6}: the norms exported when a config names none.
std::vector<NamedNorm> default_ledger_norms();

/// Parses {"name": ..., "kind": "l2"|"sobolev"|"fourier_lebesgue", "s": .., "p": ..}.
NamedNorm named_norm_from_json(const Json& j);

/// One ledger record {t, mass, momentum, hamiltonian, wick_hamiltonian?, mu,
/// norms} for newline-delimited trajectory export.
Json ledger_record(double t, const LedgerRow& row, const TorusField& snapshot,
                   std::span<const NamedNorm> norms);

}  // namespace tnls
