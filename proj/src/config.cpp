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

#include "tnls/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tnls::config {

namespace {

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json* find(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

[[noreturn]] void missing(const std::string& path, const char* key) {
  throw ConfigError(join(path, key), "required field is missing");
}

[[noreturn]] void wrong_type(const std::string& path, const char* key, const char* expected) {
  throw ConfigError(join(path, key), std::string("expected ") + expected);
}

bool is_path_key(const std::string& key) {
  return key == "path" || (key.size() > 5 && key.compare(key.size() - 5, 5, "_file") == 0);
}

}  // namespace

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

Json parse_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(origin + ": " + line_column(text, e.byte), "syntax error (" + std::string(e.what()) + ")");
  }
}

Json load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  static const std::string kCsvPrefix = "# config: ";
  Json config;
  if (text.rfind("# ", 0) == 0) {
    std::istringstream lines(text);
    std::string line;
    bool found = false;
    while (std::getline(lines, line) && line.rfind("#", 0) == 0) {
      if (line.rfind(kCsvPrefix, 0) == 0) {
        config = parse_text(line.substr(kCsvPrefix.size()), path.string());
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError(path.string(), "no '# config: ' line in the comment block");
  } else {
    const auto first_line = text.substr(0, text.find('\n'));
    Json head;
    bool header = false;
    try {
      head = Json::parse(first_line);
      header = head.is_object() && head.value("type", "") == "header";
    } catch (const Json::parse_error&) {
    }
    if (header) {
      const Json* embedded = head.contains("config") ? &head["config"]
                             : head.contains("metadata") && head["metadata"].contains("config")
                                 ? &head["metadata"]["config"]
                                 : nullptr;
      if (embedded == nullptr) throw ConfigError(path.string(), "header record carries no config");
      config = *embedded;
    } else {
      config = parse_text(text, path.string());
      if (config.is_object() && config.contains("config") && config.contains("tool") && config.contains("coeffs")) {
        config = Json(config["config"]);
      }
    }
  }
  if (!config.is_object()) throw ConfigError(path.string(), "config must be a JSON object");
  resolve_paths(config, std::filesystem::absolute(path).parent_path());
  return config;
}

void resolve_paths(Json& config, const std::filesystem::path& base) {
  if (config.is_object()) {
    for (auto it = config.begin(); it != config.end(); ++it) {
      if (it->is_string() && is_path_key(it.key())) {
        std::filesystem::path p(it->get<std::string>());
        if (p.is_relative()) *it = (base / p).lexically_normal().string();
      } else {
        resolve_paths(*it, base);
      }
    }
  } else if (config.is_array()) {
    for (auto& item : config) resolve_paths(item, base);
  }
}

void apply_override(Json& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set", "expected path=value, got '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::parse_error&) {
    value = text;
  }
  Json* node = &config;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("--set", "empty component in '" + path + "'");
    if (!node->is_object()) throw ConfigError(path.substr(0, start ? start - 1 : 0), "is not an object");
    if (dot == std::string::npos) {
      (*node)[key] = std::move(value);
      return;
    }
    node = &(*node)[key];
    if (node->is_null()) *node = Json::object();
    start = dot + 1;
  }
}

void check_schema(const Json& config) {
  expect_object(config, "");
  const int v = get_int(config, "", "schema_version");
  if (v != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + std::to_string(v) + " (this build reads " +
                                            std::to_string(kSchemaVersion) + ")");
  }
}

void expect_object(const Json& obj, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

void allow_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw ConfigError(join(path, it.key()), "unknown field");
  }
}

double get_double(const Json& obj, const std::string& path, const char* key, std::optional<double> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (v->is_string()) {
    const auto s = v->get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  if (!v->is_number()) wrong_type(path, key, "a number");
  return v->get<double>();
}

int get_int(const Json& obj, const std::string& path, const char* key, std::optional<int> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (v->is_number_float()) {
    const double d = v->get<double>();
    if (d == std::floor(d) && std::abs(d) < 2e9) return static_cast<int>(d);
  }
  if (!v->is_number_integer()) wrong_type(path, key, "an integer");
  const auto i = v->get<long long>();
  if (i < std::numeric_limits<int>::min() || i > std::numeric_limits<int>::max()) wrong_type(path, key, "a 32-bit integer");
  return static_cast<int>(i);
}

std::uint64_t get_u64(const Json& obj, const std::string& path, const char* key, std::optional<std::uint64_t> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (v->is_number_float()) {
    const double d = v->get<double>();
    if (d >= 0.0 && d == std::floor(d) && d < 9e15) return static_cast<std::uint64_t>(d);
  }
  if (v->is_number_unsigned()) return v->get<std::uint64_t>();
  if (v->is_number_integer() && v->get<long long>() >= 0) return static_cast<std::uint64_t>(v->get<long long>());
  wrong_type(path, key, "a non-negative integer");
}

bool get_bool(const Json& obj, const std::string& path, const char* key, std::optional<bool> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (!v->is_boolean()) wrong_type(path, key, "true or false");
  return v->get<bool>();
}

std::string get_string(const Json& obj, const std::string& path, const char* key, std::optional<std::string> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (!v->is_string()) wrong_type(path, key, "a string");
  return v->get<std::string>();
}

std::vector<double> get_doubles(const Json& obj, const std::string& path, const char* key,
                                std::optional<std::vector<double>> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (!v->is_array()) wrong_type(path, key, "an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) throw ConfigError(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back((*v)[i].get<double>());
  }
  return out;
}

std::vector<int> get_ints(const Json& obj, const std::string& path, const char* key,
                          std::optional<std::vector<int>> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (!v->is_array()) wrong_type(path, key, "an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number_integer()) {
      throw ConfigError(join(path, key) + "[" + std::to_string(i) + "]", "expected an integer");
    }
    out.push_back((*v)[i].get<int>());
  }
  return out;
}

Complex get_complex(const Json& obj, const std::string& path, const char* key, std::optional<Complex> fallback) {
  const Json* v = find(obj, key);
  if (v == nullptr) {
    if (!fallback) missing(path, key);
    return *fallback;
  }
  if (v->is_number()) return {v->get<double>(), 0.0};
  if (v->is_array() && v->size() == 2 && (*v)[0].is_number() && (*v)[1].is_number()) {
    return {(*v)[0].get<double>(), (*v)[1].get<double>()};
  }
  wrong_type(path, key, "a number or [re, im]");
}

// ------------------------------------------------------------------ specs

EquationSpec read_equation(const Json& j, const std::string& path) {
  expect_object(j, path);
  allow_keys(j, path, {"variant", "sign", "truncation", "alpha"});
  EquationSpec spec;
  const auto variant = get_string(j, path, "variant");
  try {
    spec.variant = variant_from_string(variant);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "variant"), e.what());
  }
  spec.sign = get_int(j, path, "sign", 1);
  if (spec.sign != 1 && spec.sign != -1) throw ConfigError(join(path, "sign"), "must be +1 or -1");
  if (find(j, "truncation")) spec.truncation = get_int(j, path, "truncation");
  spec.alpha = get_double(j, path, "alpha", 1.0);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

Json to_json(const EquationSpec& spec) {
  Json j;
  j["variant"] = to_string(spec.variant);
  j["sign"] = spec.sign;
  if (spec.truncation) j["truncation"] = *spec.truncation;
  j["alpha"] = spec.alpha;
  return j;
}

IntegratorSpec read_integrator(const Json& j, const std::string& path) {
  expect_object(j, path);
  allow_keys(j, path, {"scheme", "dt", "t_end", "snapshot_stride", "amplitude_cap"});
  IntegratorSpec spec;
  const auto scheme = get_string(j, path, "scheme", "strang");
  try {
    spec.scheme = scheme_from_string(scheme);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "scheme"), e.what());
  }
  spec.dt = get_double(j, path, "dt", spec.dt);
  spec.t_end = get_double(j, path, "t_end", spec.t_end);
  spec.snapshot_stride = get_int(j, path, "snapshot_stride", spec.snapshot_stride);
  spec.amplitude_cap = get_double(j, path, "amplitude_cap", spec.amplitude_cap);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

Json to_json(const IntegratorSpec& spec) {
  Json j;
  j["scheme"] = to_string(spec.scheme);
  j["dt"] = spec.dt;
  j["t_end"] = spec.t_end;
  j["snapshot_stride"] = spec.snapshot_stride;
  j["amplitude_cap"] = spec.amplitude_cap;
  return j;
}

RandomDataSpec read_random_data(const Json& j, const std::string& path, std::uint64_t default_seed) {
  expect_object(j, path);
  allow_keys(j, path, {"kind", "alpha", "max_mode", "seed", "gaussian_scale", "offset", "offset_file"});
  RandomDataSpec spec;
  spec.alpha = get_double(j, path, "alpha");
  spec.max_mode = get_int(j, path, "max_mode");
  spec.seed = get_u64(j, path, "seed", default_seed);
  spec.gaussian_scale = get_double(j, path, "gaussian_scale", 1.0);
  if (find(j, "offset") && find(j, "offset_file")) throw ConfigError(path, "give offset or offset_file, not both");
  try {
    if (const Json* o = find(j, "offset")) spec.offset = field_from_json(*o);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(join(path, "offset"), e.what());
  }
  if (find(j, "offset_file")) {
    const auto file = get_string(j, path, "offset_file");
    if (!std::filesystem::exists(file)) throw ConfigError(join(path, "offset_file"), "file not found: " + file);
    try {
      spec.offset = read_field_file(file);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(join(path, "offset_file"), e.what());
    }
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

Json to_json(const RandomDataSpec& spec) {
  Json j;
  j["kind"] = "random";
  j["alpha"] = spec.alpha;
  j["max_mode"] = spec.max_mode;
  j["seed"] = spec.seed;
  j["gaussian_scale"] = spec.gaussian_scale;
  if (spec.offset) j["offset"] = field_to_json(*spec.offset);
  return j;
}

TorusField DataSpec::realize() const {
  if (kind == "random") return sample(random);
  if (kind == "field" || kind == "file") return *field;
  TorusField out(max_mode);
  for (const auto& [n, c] : modes) out = out + TorusField::single_mode(max_mode, n, c);
  return out;
}

DataSpec read_data(const Json& j, const std::string& path, std::uint64_t default_seed) {
  expect_object(j, path);
  DataSpec spec;
  spec.kind = get_string(j, path, "kind", "modes");
  if (spec.kind == "modes") {
    allow_keys(j, path, {"kind", "max_mode", "modes"});
    spec.max_mode = get_int(j, path, "max_mode");
    if (spec.max_mode < 0) throw ConfigError(join(path, "max_mode"), "must be >= 0");
    const Json* arr = find(j, "modes");
    if (arr == nullptr) missing(path, "modes");
    if (!arr->is_array()) wrong_type(path, "modes", "an array");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const std::string p = join(path, "modes") + "[" + std::to_string(i) + "]";
      expect_object((*arr)[i], p);
      allow_keys((*arr)[i], p, {"n", "c"});
      const int n = get_int((*arr)[i], p, "n");
      if (std::abs(n) > spec.max_mode) throw ConfigError(join(p, "n"), "outside the band max_mode");
      spec.modes.emplace_back(n, get_complex((*arr)[i], p, "c"));
    }
  } else if (spec.kind == "field") {
    allow_keys(j, path, {"kind", "max_mode", "coeffs"});
    try {
      spec.field = field_from_json(j);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
    spec.max_mode = spec.field->max_mode();
  } else if (spec.kind == "file") {
    allow_keys(j, path, {"kind", "path"});
    spec.path = get_string(j, path, "path");
    if (!std::filesystem::exists(spec.path)) throw ConfigError(join(path, "path"), "file not found: " + spec.path);
    try {
      spec.field = read_field_file(spec.path);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(join(path, "path"), e.what());
    }
    spec.max_mode = spec.field->max_mode();
  } else if (spec.kind == "random") {
    spec.random = read_random_data(j, path, default_seed);
    spec.max_mode = spec.random.max_mode;
  } else {
    throw ConfigError(join(path, "kind"), "unknown data kind '" + spec.kind + "' (modes, field, file, random)");
  }
  return spec;
}

Json to_json(const DataSpec& spec) {
  if (spec.kind == "random") return to_json(spec.random);
  Json j;
  j["kind"] = spec.kind;
  if (spec.kind == "file") {
    j["path"] = spec.path;
  } else if (spec.kind == "field") {
    const Json f = field_to_json(*spec.field);
    j["max_mode"] = f["max_mode"];
    j["coeffs"] = f["coeffs"];
  } else {
    j["max_mode"] = spec.max_mode;
    Json arr = Json::array();
    for (const auto& [n, c] : spec.modes) arr.push_back({{"n", n}, {"c", Json::array({c.real(), c.imag()})}});
    j["modes"] = std::move(arr);
  }
  return j;
}

std::vector<NamedNorm> read_norms(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of norms");
  std::vector<NamedNorm> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(named_norm_from_json(j[i]));
    } catch (const std::exception& e) {
      throw ConfigError(path + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return out;
}

Json to_json(const std::vector<NamedNorm>& norms) {
  Json arr = Json::array();
  for (const auto& n : norms) {
    Json j;
    j["name"] = n.name;
    switch (n.spec.kind) {
      case NormSpec::Kind::L2: j["kind"] = "l2"; break;
      case NormSpec::Kind::Sobolev:
        j["kind"] = "sobolev";
        j["s"] = n.spec.s;
        break;
      case NormSpec::Kind::FourierLebesgue:
        j["kind"] = "fourier_lebesgue";
        j["s"] = n.spec.s;
        if (std::isinf(n.spec.p)) {
          j["p"] = "inf";
        } else {
          j["p"] = n.spec.p;
        }
        break;
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace tnls::config
