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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "tnls/config.hpp"

using namespace tnls;
using namespace tnls::config;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tnls_config_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string where_of(const auto& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("syntax errors report line and column") {
  const std::string where = where_of([] { parse_text("{\n  \"a\": 1,\n  \"b\": ]\n}", "cfg.json"); });
  CHECK(where == "cfg.json: line 3, column 8");
}

TEST_CASE("overrides") {
  Json c{{"schema_version", 1}, {"integrator", {{"dt", 0.01}}}};
  apply_override(c, "integrator.dt=0.002");
  apply_override(c, "equation.variant=WNLS");
  apply_override(c, "data.modes=[{\"n\": 1, \"c\": [1, 0]}]");
  apply_override(c, "output.snapshots=true");
  CHECK(c["integrator"]["dt"] == 0.002);
  CHECK(c["equation"]["variant"] == "WNLS");
  CHECK(c["data"]["modes"][0]["n"] == 1);
  CHECK(c["output"]["snapshots"] == true);
  CHECK_THROWS_AS(apply_override(c, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "a..b=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "integrator.dt.x=1"), ConfigError);
}

TEST_CASE("schema version") {
  CHECK_NOTHROW(check_schema(Json{{"schema_version", 1}}));
  CHECK(where_of([] { check_schema(Json{{"schema_version", 2}}); }) == "schema_version");
  CHECK(where_of([] { check_schema(Json::object()); }) == "schema_version");
  CHECK(where_of([] { check_schema(Json::array()); }) == "<root>");
}

TEST_CASE("field errors name the dotted path") {
  const Json eq{{"variant", "NLS"}, {"sign", 2}};
  CHECK(where_of([&] { read_equation(eq, "equation"); }) == "equation.sign");
  CHECK(where_of([] { read_equation(Json{{"variant", "KdV"}}, "equation"); }) == "equation.variant");
  CHECK(where_of([] { read_equation(Json{{"variant", "NLS"}, {"colour", 1}}, "equation"); }) == "equation.colour");
  CHECK(where_of([] { read_integrator(Json{{"scheme", "strang"}, {"dt", "fast"}}, "integrator"); }) == "integrator.dt");
  CHECK(where_of([] { read_integrator(Json{{"scheme", "strang"}, {"dt", -1.0}}, "integrator"); }) == "integrator");
  CHECK(get_double(Json{{"cap", "inf"}}, "", "cap") == std::numeric_limits<double>::infinity());
  CHECK(get_int(Json{{"n", 4.0}}, "", "n") == 4);
  CHECK(where_of([] { get_int(Json{{"n", 4.5}}, "x", "n"); }) == "x.n");
  CHECK(get_complex(Json{{"c", 2.0}}, "", "c") == Complex(2.0, 0.0));
  CHECK(get_complex(Json{{"c", {0.5, -1}}}, "", "c") == Complex(0.5, -1.0));
}

TEST_CASE("equation and integrator round trip") {
  const auto eq = read_equation(Json{{"variant", "TruncatedWNLS_Hamiltonian"}, {"sign", -1}, {"truncation", 16}}, "e");
  CHECK(eq.variant == Variant::TruncatedWNLSHamiltonian);
  CHECK(read_equation(to_json(eq), "e").truncation == 16);
  const auto in = read_integrator(Json{{"scheme", "rk4"}, {"dt", 0.01}, {"t_end", 2.0}}, "i");
  CHECK(in.scheme == Scheme::RK4);
  CHECK(to_json(read_integrator(to_json(in), "i")) == to_json(in));
}

TEST_CASE("data specs") {
  const Json modes{{"kind", "modes"}, {"max_mode", 3}, {"modes", {{{"n", -2}, {"c", {0.0, 1.0}}}}}};
  const TorusField u = read_data(modes, "data", 0).realize();
  CHECK(u.max_mode() == 3);
  CHECK(u[-2] == Complex(0.0, 1.0));
  CHECK(read_data(to_json(read_data(modes, "data", 0)), "data", 0).realize() == u);

  const Json random{{"kind", "random"}, {"alpha", 1.0}, {"max_mode", 8}};
  CHECK(read_data(random, "data", 5).realize() == read_data(random, "data", 5).realize());
  CHECK(!(read_data(random, "data", 5).realize() == read_data(random, "data", 6).realize()));

  CHECK(where_of([] { read_data(Json{{"kind", "modes"}, {"max_mode", 1}, {"modes", {{{"n", 4}, {"c", 1}}}}}, "data", 0); })
            .rfind("data.modes", 0) == 0);
  CHECK(where_of([] { read_data(Json{{"kind", "noise"}}, "data", 0); }) == "data.kind");
}

TEST_CASE("relative paths resolve against the config file") {
  const fs::path dir = scratch("paths");
  fs::create_directories(dir / "sub");
  write(dir / "sub" / "c.json",
        R"({"schema_version": 1, "data": {"kind": "random", "alpha": 1.0, "max_mode": 2, "offset_file": "off.json"}})");
  const Json c = load(dir / "sub" / "c.json");
  CHECK(fs::path(c["data"]["offset_file"].get<std::string>()) == (dir / "sub" / "off.json").lexically_normal());
  CHECK(where_of([&] { read_data(c["data"], "data", 0); }) == "data.offset_file");
}

TEST_CASE("configs load back from output files") {
  const fs::path dir = scratch("embedded");
  const Json cfg{{"schema_version", 1}, {"seed", 3}};
  write(dir / "a.ndjson", Json{{"type", "header"}, {"tool", "tnls"}, {"config", cfg}}.dump() + "\n{\"type\":\"ledger\"}\n");
  write(dir / "b.csv", "# tool: tnls 0.1.0\n# config: " + cfg.dump() + "\nname,value\n");
  write(dir / "c.json", Json{{"tool", "tnls"}, {"config", cfg}, {"max_mode", 0}, {"coeffs", {{1, 0}}}}.dump());
  write(dir / "d.ndjson", Json{{"type", "header"}, {"metadata", {{"config", cfg}}}}.dump() + "\n");
  for (const char* f : {"a.ndjson", "b.csv", "c.json", "d.ndjson"}) CHECK(load(dir / f) == cfg);
  write(dir / "e.csv", "# tool: tnls\nx\n");
  CHECK_THROWS_AS(load(dir / "e.csv"), ConfigError);
  CHECK_THROWS_AS(load(dir / "missing.json"), ConfigError);
}
