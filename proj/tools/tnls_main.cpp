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

#include <iostream>

#include <CLI11.hpp>

#include "tnls/cli.hpp"
#include "tnls/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spectral NLS / Wick-ordered NLS simulations on the torus"};
  app.set_version_flag("--version", std::string(tnls::cli::kToolName) + " " + tnls::cli::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool repro = false;
  std::vector<std::string> overrides;

  for (const auto& name : tnls::cli::command_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config, or any output file of this tool");
    sub->add_option("--out", out_dir, std::string("output directory (default $") + tnls::cli::kOutDirEnv +
                                          " or ./tnls-out)");
    sub->add_option("--seed", seed, "overrides the config seed");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--repro", repro, "reproducibility mode: one thread");
    sub->add_option("--set", overrides, "override a config field: dotted.path=value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tnls::cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  tnls::cli::RunOptions options;
  options.out_dir = out_dir;
  if (sub->count("--seed") > 0) options.seed = seed;
  if (sub->count("--threads") > 0) options.threads = threads;
  options.repro = repro;
  options.overrides = overrides;

  tnls::Json config = tnls::Json::object();
  if (!config_path.empty()) {
    try {
      config = tnls::config::load(config_path);
    } catch (const tnls::config::ConfigError& e) {
      std::cerr << "tnls " << command << ": config error: " << e.what() << '\n';
      return tnls::cli::kExitConfig;
    }
  } else {
    config["schema_version"] = tnls::config::kSchemaVersion;
  }
  return tnls::cli::run(command, std::move(config), options, std::cerr, std::cerr);
}
