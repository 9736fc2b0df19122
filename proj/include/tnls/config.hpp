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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tnls/dynamics.hpp"
#include "tnls/field.hpp"
#include "tnls/random_data.hpp"
#include "tnls/serialize.hpp"

namespace tnls::config {

inline constexpr int kSchemaVersion = 1;

/// A malformed or inconsistent configuration. `where` is either a dotted
/// field path ("equation.sign") or "line L, column C" for syntax errors.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

private:
  std::string where_;
};

/// Parses JSON text. A syntax error reports the line and column.
Json parse_text(const std::string& text, const std::string& origin);

/// Loads a config file. Besides plain JSON configs this accepts any output
/// file of the tool: the embedded config of an NDJSON header record or of a
/// "# config: " line in a CSV comment block is returned. Relative paths inside the
/// config are resolved against the file's directory.
Json load(const std::filesystem::path& path);

/// "a.b.c=value": value is parsed as JSON when possible and taken as a
/// string otherwise. Missing intermediate objects are created.
void apply_override(Json& config, const std::string& assignment);

/// Requires schema_version == kSchemaVersion.
void check_schema(const Json& config);

/// Rewrites every "path"/"*_file" string under `config` to an absolute path
/// against `base`.
void resolve_paths(Json& config, const std::filesystem::path& base);

// Field accessors. `path` is the dotted location of `obj`; errors name the
// full path of the offending key.
void expect_object(const Json& obj, const std::string& path);
void allow_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> keys);
double get_double(const Json& obj, const std::string& path, const char* key, std::optional<double> fallback = {});
int get_int(const Json& obj, const std::string& path, const char* key, std::optional<int> fallback = {});
std::uint64_t get_u64(const Json& obj, const std::string& path, const char* key,
                      std::optional<std::uint64_t> fallback = {});
bool get_bool(const Json& obj, const std::string& path, const char* key, std::optional<bool> fallback = {});
std::string get_string(const Json& obj, const std::string& path, const char* key,
                       std::optional<std::string> fallback = {});
std::vector<double> get_doubles(const Json& obj, const std::string& path, const char* key,
                                std::optional<std::vector<double>> fallback = {});
std::vector<int> get_ints(const Json& obj, const std::string& path, const char* key,
                          std::optional<std::vector<int>> fallback = {});
/// [re, im] or a bare real number.
Complex get_complex(const Json& obj, const std::string& path, const char* key, std::optional<Complex> fallback = {});
std::string join(const std::string& path, const std::string& key);

EquationSpec read_equation(const Json& j, const std::string& path);
Json to_json(const EquationSpec& spec);

IntegratorSpec read_integrator(const Json& j, const std::string& path);
Json to_json(const IntegratorSpec& spec);

/// {"alpha", "max_mode", "seed", "gaussian_scale", "offset" | "offset_file"}.
/// The seed defaults to `default_seed`.
RandomDataSpec read_random_data(const Json& j, const std::string& path, std::uint64_t default_seed);
Json to_json(const RandomDataSpec& spec);

/// Initial data or probe functions:
///   {"kind": "modes", "max_mode": M, "modes": [{"n": 1, "c": [re, im]}, ...]}
///   {"kind": "field", "max_mode": M, "coeffs": [[re, im], ...]}
///   {"kind": "file", "path": "..."}
///   {"kind": "random", <random data fields>}
struct DataSpec {
  std::string kind = "modes";
  int max_mode = 0;
  std::vector<std::pair<int, Complex>> modes;
  std::optional<TorusField> field;
  std::string path;
  RandomDataSpec random;

  TorusField realize() const;
};

DataSpec read_data(const Json& j, const std::string& path, std::uint64_t default_seed);
Json to_json(const DataSpec& spec);

std::vector<NamedNorm> read_norms(const Json& j, const std::string& path);
Json to_json(const std::vector<NamedNorm>& norms);

}  // namespace tnls::config
