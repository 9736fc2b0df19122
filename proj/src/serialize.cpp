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

#include "tnls/serialize.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace tnls {

Json field_to_json(const TorusField& field) {
  Json coeffs = Json::array();
  for (const auto& c : field.coeffs()) coeffs.push_back(Json::array({c.real(), c.imag()}));
  Json j;
  j["max_mode"] = field.max_mode();
  j["coeffs"] = std::move(coeffs);
  return j;
}

TorusField field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("max_mode") || !j.contains("coeffs")) {
    throw std::invalid_argument("field record needs max_mode and coeffs");
  }
  if (!j["max_mode"].is_number_integer()) throw std::invalid_argument("field: max_mode must be an integer");
  const int band = j["max_mode"].get<int>();
  if (band < 0) throw std::invalid_argument("field: negative max_mode");
  const auto& arr = j["coeffs"];
  if (!arr.is_array()) throw std::invalid_argument("field: coeffs must be an array");
  std::vector<Complex> c;
  c.reserve(arr.size());
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw std::invalid_argument("field: each coefficient must be [re, im]");
    }
    c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return TorusField(band, std::move(c));
}

void write_field_file(const std::filesystem::path& path, const TorusField& field) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << field_to_json(field).dump() << '\n';
}

TorusField read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open field file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("field file " + path.string() + ": " + e.what());
  }
  return field_from_json(j);
}

std::vector<NamedNorm> default_ledger_norms() {
  return {{"l2", NormSpec::l2()},
          {"h1", NormSpec::sobolev(1.0)},
          {"h_minus_sixth", NormSpec::sobolev(-1.0 / 6.0)}};
}

NamedNorm named_norm_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("norm needs a kind");
  const auto kind = j["kind"].get<std::string>();
  NamedNorm out;
  const double s = j.value("s", 0.0);
  if (kind == "l2") {
    out.spec = NormSpec::l2();
  } else if (kind == "sobolev") {
    out.spec = NormSpec::sobolev(s);
  } else if (kind == "fourier_lebesgue") {
    const double p = j.contains("p") && j["p"].is_string() && j["p"].get<std::string>() == "inf"
                         ? std::numeric_limits<double>::infinity()
                         : j.value("p", 2.0);
    if (!(p >= 1.0)) throw std::invalid_argument("norm: p must be >= 1");
    out.spec = NormSpec::fourier_lebesgue(s, p);
  } else {
    throw std::invalid_argument("unknown norm kind '" + kind + "'");
  }
  out.name = j.value("name", kind);
  return out;
}

Json ledger_record(double t, const LedgerRow& row, const TorusField& snapshot,
                   std::span<const NamedNorm> norms) {
  Json j;
  j["t"] = t;
  j["mass"] = row.mass;
  j["momentum"] = row.momentum;
  j["hamiltonian"] = row.hamiltonian;
  if (row.wick_hamiltonian) j["wick_hamiltonian"] = *row.wick_hamiltonian;
  j["mu"] = row.mu;
  Json n = Json::object();
  for (const auto& item : norms) n[item.name] = norm(snapshot, item.spec);
  j["norms"] = std::move(n);
  return j;
}

}  // namespace tnls
