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

#include "tnls/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "tnls/config.hpp"
#include "tnls/dynamics.hpp"
#include "tnls/experiments.hpp"
#include "tnls/montecarlo.hpp"
#include "tnls/random_data.hpp"
#include "tnls/report.hpp"
#include "tnls/rng.hpp"
#include "tnls/wick.hpp"

namespace tnls::cli {

namespace fs = std::filesystem;
using config::ConfigError;

namespace {

struct Context {
  std::string command;
  Json config;
  Json resolved;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  fs::path out;
  std::ostream& log;
  std::ostream& err;
};

Json section(const Json& root, const char* key, const Json& fallback = Json()) {
  auto it = root.find(key);
  if (it == root.end() || it->is_null()) {
    if (fallback.is_null()) throw ConfigError(key, "required section is missing");
    return fallback;
  }
  return *it;
}

Json header(const Context& c) {
  Json h;
  h["type"] = "header";
  h["tool"] = kToolName;
  h["version"] = kToolVersion;
  h["command"] = c.command;
  h["config"] = c.resolved;
  return h;
}

Json report_metadata(const Context& c) {
  Json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = c.command;
  m["config"] = c.resolved;
  return m;
}

std::string csv_preamble(const Context& c) {
  return fmt::format("# tool: {} {}\n# config: {}\n", kToolName, kToolVersion, c.resolved.dump());
}

std::ofstream open_output(const Context& c, const std::string& name) {
  std::ofstream out(c.out / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + (c.out / name).string() + " for writing");
  return out;
}

void write_output(const Context& c, const std::string& name, const std::string& content) {
  auto out = open_output(c, name);
  out << content;
  c.log << "wrote " << (c.out / name).string() << '\n';
}

std::string num(double v) { return fmt::format("{}", v); }

Json base_resolved(const Context& c) {
  Json r;
  r["schema_version"] = config::kSchemaVersion;
  r["seed"] = c.seed;
  return r;
}

experiments::Thresholds read_thresholds(const Json& root) {
  if (root.contains("thresholds") && root.contains("thresholds_file")) {
    throw ConfigError("thresholds", "give thresholds or thresholds_file, not both");
  }
  if (root.contains("thresholds_file")) {
    const auto file = config::get_string(root, "", "thresholds_file");
    if (!fs::exists(file)) throw ConfigError("thresholds_file", "file not found: " + file);
    try {
      return experiments::Thresholds::load(file);
    } catch (const std::exception& e) {
      throw ConfigError("thresholds_file", e.what());
    }
  }
  if (root.contains("thresholds")) {
    const Json& t = root["thresholds"];
    config::expect_object(t, "thresholds");
    try {
      return experiments::Thresholds::from_json(t);
    } catch (const Json::exception& e) {
      throw ConfigError("thresholds", e.what());
    }
  }
  return experiments::Thresholds::defaults();
}

double rel_drift(double x, double x0) {
  const double d = std::abs(x - x0);
  return x0 != 0.0 ? d / std::abs(x0) : d;
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "equation", "integrator", "data", "norms", "output"});
  const EquationSpec eq = config::read_equation(section(root, "equation"), "equation");
  const IntegratorSpec integ = config::read_integrator(section(root, "integrator"), "integrator");
  const config::DataSpec data = config::read_data(section(root, "data"), "data", c.seed);
  const auto norms = root.contains("norms") ? config::read_norms(root["norms"], "norms") : default_ledger_norms();
  const Json& output = section(root, "output", Json::object());
  config::expect_object(output, "output");
  config::allow_keys(output, "output", {"snapshots"});
  const bool snapshots = config::get_bool(output, "output", "snapshots", false);

  c.resolved = base_resolved(c);
  c.resolved["equation"] = config::to_json(eq);
  c.resolved["integrator"] = config::to_json(integ);
  c.resolved["data"] = config::to_json(data);
  c.resolved["norms"] = config::to_json(norms);
  c.resolved["output"] = {{"snapshots", snapshots}};

  const TorusField u0 = data.realize();
  auto ledger = open_output(c, "simulate_ledger.ndjson");
  std::ofstream snaps;
  if (snapshots) snaps = open_output(c, "simulate_snapshots.ndjson");
  ledger << header(c).dump() << '\n';
  if (snapshots) snaps << header(c).dump() << '\n';

  std::optional<LedgerRow> first;
  double mass_drift = 0.0, ham_drift = 0.0, wick_drift = 0.0, mom_drift = 0.0;
  double t_last = 0.0;
  std::size_t records = 0;
  std::string status = "completed";
  int code = kExitOk;
  try {
    evolve_observed(u0, eq, integ, [&](double t, const TorusField& u) {
      const LedgerRow row = ledger_row(u, eq);
      if (!first) first = row;
      mass_drift = std::max(mass_drift, rel_drift(row.mass, first->mass));
      ham_drift = std::max(ham_drift, rel_drift(row.hamiltonian, first->hamiltonian));
      mom_drift = std::max(mom_drift, std::abs(row.momentum - first->momentum));
      if (row.wick_hamiltonian) wick_drift = std::max(wick_drift, rel_drift(*row.wick_hamiltonian, *first->wick_hamiltonian));
      Json rec;
      rec["type"] = "ledger";
      rec.update(ledger_record(t, row, u, norms));
      ledger << rec.dump() << '\n';
      if (snapshots) {
        Json s;
        s["type"] = "snapshot";
        s["t"] = t;
        s["field"] = field_to_json(u);
        snaps << s.dump() << '\n';
      }
      t_last = t;
      ++records;
    });
  } catch (const IntegrationDiverged& e) {
    Json rec;
    rec["type"] = "diverged";
    rec["last_valid_time"] = e.last_valid_time();
    rec["message"] = e.what();
    ledger << rec.dump() << '\n';
    ledger.flush();
    if (snapshots) snaps.flush();
    c.err << "tnls simulate: integration diverged: " << e.what() << " (last valid time " << e.last_valid_time()
          << ")\n";
    status = "diverged";
    code = kExitDiverged;
  }

  std::ostringstream csv;
  csv << csv_preamble(c) << "name,value\n";
  csv << "status," << status << '\n';
  csv << "records," << records << '\n';
  csv << "t_last," << num(t_last) << '\n';
  csv << "mass_rel_drift," << num(mass_drift) << '\n';
  csv << "momentum_abs_drift," << num(mom_drift) << '\n';
  csv << "hamiltonian_rel_drift," << num(ham_drift) << '\n';
  if (first && first->wick_hamiltonian) csv << "wick_hamiltonian_rel_drift," << num(wick_drift) << '\n';
  write_output(c, "simulate_summary.csv", csv.str());
  c.log << "wrote " << (c.out / "simulate_ledger.ndjson").string() << '\n';
  return code;
}

// ---------------------------------------------------------------- weak-limit

int cmd_weak_limit(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "equation", "integrator", "experiment",
                                "thresholds", "thresholds_file"});
  const EquationSpec eq = config::read_equation(section(root, "equation"), "equation");
  const IntegratorSpec integ = config::read_integrator(section(root, "integrator", Json::object()), "integrator");
  const Json& ex = section(root, "experiment");
  const std::string p = "experiment";
  config::expect_object(ex, p);
  config::allow_keys(ex, p, {"kind", "base", "probe", "bump", "modes", "horizon", "working_band", "verdict"});
  const auto kind = config::get_string(ex, p, "kind", "weak_continuity");
  if (kind != "weak_continuity" && kind != "molinet") {
    throw ConfigError(config::join(p, "kind"), "expected weak_continuity or molinet");
  }
  const auto verdict = config::get_string(ex, p, "verdict", "decay");
  if (verdict != "decay" && verdict != "plateau" && verdict != "auto") {
    throw ConfigError(config::join(p, "verdict"), "expected decay, plateau or auto");
  }
  const config::DataSpec base = config::read_data(section(ex, "base"), config::join(p, "base"), c.seed);
  const config::DataSpec probe =
      ex.contains("probe") ? config::read_data(ex["probe"], config::join(p, "probe"), c.seed) : base;
  const auto th = read_thresholds(root);

  experiments::WeakSequenceSpec spec;
  spec.base = base.realize();
  spec.probe = probe.realize();
  spec.bump = config::get_complex(ex, p, "bump", Complex{1.0, 0.0});
  spec.modes = config::get_ints(ex, p, "modes");
  spec.horizon = config::get_double(ex, p, "horizon", 1.0);
  spec.working_band = config::get_int(ex, p, "working_band", 256);
  spec.eq = eq;
  spec.integ = integ;
  spec.threads = c.threads;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(p, e.what());
  }

  c.resolved = base_resolved(c);
  c.resolved["equation"] = config::to_json(eq);
  c.resolved["integrator"] = config::to_json(integ);
  Json rex;
  rex["kind"] = kind;
  rex["base"] = config::to_json(base);
  rex["probe"] = config::to_json(probe);
  rex["bump"] = Json::array({spec.bump.real(), spec.bump.imag()});
  rex["modes"] = spec.modes;
  rex["horizon"] = spec.horizon;
  rex["working_band"] = spec.working_band;
  rex["verdict"] = verdict;
  c.resolved["experiment"] = std::move(rex);
  c.resolved["thresholds"] = th.to_json();

  ExperimentReport report;
  if (kind == "molinet") {
    report = experiments::to_report(experiments::molinet_gap_run(spec, th), report_metadata(c));
  } else {
    const auto r = experiments::weak_continuity_run(spec, th);
    report = experiments::to_report(r, report_metadata(c));
    report.verdict = verdict == "decay" ? r.decay_verdict : verdict == "plateau" ? r.plateau_verdict : r.verdict;
  }
  write_output(c, "weak_limit.ndjson", report.to_ndjson());
  write_output(c, "weak_limit_summary.csv", csv_preamble(c) + report.summary_csv());
  c.log << "weak-limit verdict: " << (report.verdict ? "pass" : "fail") << '\n';
  return report.verdict ? kExitOk : kExitVerdict;
}

// ---------------------------------------------------------------- wick-check

Json default_hypercontractivity_cases() {
  return Json::parse(R"([
    {"terms": [{"coeff": 1.0, "orders": [2]}], "q": 4.0},
    {"terms": [{"coeff": 1.0, "orders": [1, 1]}], "q": 4.0},
    {"terms": [{"coeff": 1.0, "orders": [3]}], "q": 3.0},
    {"terms": [{"coeff": 1.0, "orders": [2, 1]}, {"coeff": 0.5, "orders": [1, 2]}], "q": 4.0},
    {"terms": [{"coeff": 1.0, "orders": [4]}], "q": 2.5},
    {"terms": [{"coeff": 1.0, "orders": [1, 1, 1]}], "q": 6.0}
  ])");
}

int cmd_wick_check(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "identity", "hypercontractivity"});
  const Json& id = section(root, "identity", Json::object());
  config::expect_object(id, "identity");
  config::allow_keys(id, "identity", {"variance", "samples"});
  const double variance = config::get_double(id, "identity", "variance", 2.0);
  if (!(variance > 0.0)) throw ConfigError("identity.variance", "must be positive");
  const std::uint64_t id_samples = config::get_u64(id, "identity", "samples", 1'000'000);
  if (id_samples < 100'000) throw ConfigError("identity.samples", "must be >= 100000");

  const Json cases_json = root.contains("hypercontractivity") ? root["hypercontractivity"] : default_hypercontractivity_cases();
  if (!cases_json.is_array()) throw ConfigError("hypercontractivity", "expected an array of cases");
  std::vector<wick::HypercontractivityConfig> cases;
  for (std::size_t k = 0; k < cases_json.size(); ++k) {
    const std::string p = "hypercontractivity[" + std::to_string(k) + "]";
    const Json& cj = cases_json[k];
    config::expect_object(cj, p);
    config::allow_keys(cj, p, {"terms", "q", "samples"});
    wick::HypercontractivityConfig hc;
    hc.q = config::get_double(cj, p, "q", 4.0);
    if (!(hc.q >= 2.0) || !std::isfinite(hc.q)) {
      throw ConfigError(config::join(p, "q"), "q must be a finite number >= 2 (got " + num(hc.q) + ")");
    }
    hc.samples = config::get_u64(cj, p, "samples", 1'000'000);
    if (hc.samples < 10'000) throw ConfigError(config::join(p, "samples"), "must be >= 10000");
    const Json& terms = section(cj, "terms");
    if (!terms.is_array() || terms.empty()) throw ConfigError(config::join(p, "terms"), "expected a non-empty array");
    int order = -1;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string tp = config::join(p, "terms") + "[" + std::to_string(i) + "]";
      config::expect_object(terms[i], tp);
      config::allow_keys(terms[i], tp, {"coeff", "orders"});
      wick::ChaosTerm t;
      t.coeff = config::get_double(terms[i], tp, "coeff", 1.0);
      t.orders = config::get_ints(terms[i], tp, "orders");
      int n = 0;
      for (int o : t.orders) {
        if (o < 0) throw ConfigError(config::join(tp, "orders"), "orders must be >= 0");
        n += o;
      }
      if (order >= 0 && n != order) throw ConfigError(tp, "terms must share one total chaos order");
      order = n;
      hc.terms.push_back(std::move(t));
    }
    hc.seed = rng::derive_seed(c.seed, k + 1);
    hc.threads = c.threads;
    cases.push_back(std::move(hc));
  }

  c.resolved = base_resolved(c);
  c.resolved["identity"] = {{"variance", variance}, {"samples", id_samples}};
  Json rcases = Json::array();
  for (const auto& hc : cases) {
    Json terms = Json::array();
    for (const auto& t : hc.terms) terms.push_back({{"coeff", t.coeff}, {"orders", t.orders}});
    rcases.push_back({{"terms", std::move(terms)}, {"q", hc.q}, {"samples", hc.samples}});
  }
  c.resolved["hypercontractivity"] = std::move(rcases);

  bool all = true;
  std::ostringstream nd, csv;
  nd << header(c).dump() << '\n';
  csv << csv_preamble(c) << "check,value,threshold,pass\n";
  for (const auto& r : wick::identity_suite(variance, id_samples, rng::derive_seed(c.seed, 0), c.threads)) {
    Json rec{{"type", "identity"}, {"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass}};
    nd << rec.dump() << '\n';
    csv << fmt::format("{},{},{},{}\n", r.name, r.value, r.threshold, r.pass ? "true" : "false");
    all = all && r.pass;
  }
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto r = wick::hypercontractivity_check(cases[k]);
    Json rec{{"type", "hypercontractivity"}, {"case", k},          {"n", r.n},       {"d", r.d},
             {"q", r.q},                     {"samples", r.samples}, {"seed", r.seed}, {"lhs", r.lhs},
             {"rhs", r.rhs},                 {"l2", r.l2},           {"std_error", r.std_error},
             {"pass", r.pass}};
    nd << rec.dump() << '\n';
    csv << fmt::format("hypercontractivity_{}_n{}_d{}_q{},{},{},{}\n", k, r.n, r.d, r.q, r.lhs, r.rhs,
                       r.pass ? "true" : "false");
    all = all && r.pass;
  }
  nd << Json{{"type", "summary"}, {"verdict", all}}.dump() << '\n';
  write_output(c, "wick_check.ndjson", nd.str());
  write_output(c, "wick_check_summary.csv", csv.str());
  c.log << "wick-check verdict: " << (all ? "pass" : "fail") << '\n';
  return all ? kExitOk : kExitVerdict;
}

// -------------------------------------------------------------------- sample

int cmd_sample(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "data", "output", "profile", "statistics",
                                "strichartz", "apriori", "thresholds", "thresholds_file"});
  const RandomDataSpec data = config::read_random_data(section(root, "data"), "data", c.seed);
  const Json& output = section(root, "output", Json::object());
  config::expect_object(output, "output");
  config::allow_keys(output, "output", {"field"});
  const bool write_field = config::get_bool(output, "output", "field", true);
  const auto th = read_thresholds(root);

  c.resolved = base_resolved(c);
  c.resolved["data"] = config::to_json(data);
  c.resolved["output"] = {{"field", write_field}};

  std::vector<double> s_values;
  std::vector<int> cutoffs;
  std::size_t profile_samples = 0;
  if (root.contains("profile")) {
    const Json& pj = root["profile"];
    config::expect_object(pj, "profile");
    config::allow_keys(pj, "profile", {"s", "cutoffs", "samples"});
    s_values = config::get_doubles(pj, "profile", "s", std::vector<double>{0.0});
    cutoffs = config::get_ints(pj, "profile", "cutoffs");
    profile_samples = config::get_u64(pj, "profile", "samples", 1000);
    if (profile_samples == 0) throw ConfigError("profile.samples", "must be positive");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
      if (cutoffs[i] < 0 || cutoffs[i] > data.max_mode || (i > 0 && cutoffs[i] <= cutoffs[i - 1])) {
        throw ConfigError("profile.cutoffs", "must increase within [0, data.max_mode]");
      }
    }
    c.resolved["profile"] = {{"s", s_values}, {"cutoffs", cutoffs}, {"samples", profile_samples}};
  }
  std::uint64_t stat_samples = 0;
  if (root.contains("statistics")) {
    const Json& sj = root["statistics"];
    config::expect_object(sj, "statistics");
    config::allow_keys(sj, "statistics", {"samples"});
    stat_samples = config::get_u64(sj, "statistics", "samples", 100'000);
    if (stat_samples < 2) throw ConfigError("statistics.samples", "must be >= 2");
    c.resolved["statistics"] = {{"samples", stat_samples}};
  }
  std::optional<std::pair<double, std::size_t>> strichartz;
  if (root.contains("strichartz")) {
    const Json& sj = root["strichartz"];
    config::expect_object(sj, "strichartz");
    config::allow_keys(sj, "strichartz", {"T", "samples"});
    strichartz.emplace(config::get_double(sj, "strichartz", "T", 1.0), config::get_u64(sj, "strichartz", "samples", 100));
    if (!(strichartz->first > 0.0 && strichartz->first <= 1.0)) throw ConfigError("strichartz.T", "must lie in (0, 1]");
    if (strichartz->second < 100) throw ConfigError("strichartz.samples", "must be >= 100");
    c.resolved["strichartz"] = {{"T", strichartz->first}, {"samples", strichartz->second}};
  }
  struct Apriori {
    double s, T, dt;
    std::size_t samples;
    int sign;
  };
  std::optional<Apriori> apriori;
  if (root.contains("apriori")) {
    const Json& aj = root["apriori"];
    const std::string p = "apriori";
    config::expect_object(aj, p);
    config::allow_keys(aj, p, {"s", "T", "samples", "sign", "dt"});
    apriori = Apriori{config::get_double(aj, p, "s", -1.0 / 6.0), config::get_double(aj, p, "T", 1.0),
                      config::get_double(aj, p, "dt", 1e-3), config::get_u64(aj, p, "samples", 20),
                      config::get_int(aj, p, "sign", 1)};
    if (apriori->s < -0.5 || apriori->s > 0.0) throw ConfigError("apriori.s", "must lie in [-1/2, 0]");
    if (apriori->sign != 1 && apriori->sign != -1) throw ConfigError("apriori.sign", "must be +1 or -1");
    if (!(apriori->T > 0.0) || !(apriori->dt > 0.0)) throw ConfigError("apriori", "T and dt must be positive");
    if (apriori->samples == 0) throw ConfigError("apriori.samples", "must be positive");
    c.resolved["apriori"] = {{"s", apriori->s},
                             {"T", apriori->T},
                             {"samples", apriori->samples},
                             {"sign", apriori->sign},
                             {"dt", apriori->dt}};
  }
  if (strichartz || apriori) c.resolved["thresholds"] = th.to_json();

  if (write_field) {
    Json f;
    f["tool"] = kToolName;
    f["version"] = kToolVersion;
    f["config"] = c.resolved;
    f.update(field_to_json(sample(data)));
    write_output(c, "sample_field.json", f.dump() + "\n");
  }
  if (!cutoffs.empty()) {
    const auto rows = regularity_profile(data, s_values, cutoffs, profile_samples, c.threads);
    write_output(c, "sample_profile.csv", csv_preamble(c) + profile_csv(rows));
  }
  if (stat_samples > 0) {
    const auto sums = mc::reduce<1>(stat_samples, c.threads, [&](std::uint64_t k) {
      return std::array<double, 1>{mean_intensity(sample(data.member(k)))};
    });
    const double expected = expected_mean_intensity(data);
    const double se = sums.std_error(0);
    std::ostringstream csv;
    csv << csv_preamble(c) << "name,value\n";
    csv << "samples," << stat_samples << '\n';
    csv << "mean_intensity," << num(sums.mean(0)) << '\n';
    csv << "std_error," << num(se) << '\n';
    csv << "expected," << num(expected) << '\n';
    csv << "z_score," << num(se > 0.0 ? (sums.mean(0) - expected) / se : 0.0) << '\n';
    write_output(c, "sample_statistics.csv", csv.str());
  }
  bool ok = true;
  if (strichartz) {
    const auto r = experiments::strichartz_ratio_probe(data, strichartz->first, strichartz->second, c.threads, th);
    const auto rep = experiments::to_report(r, report_metadata(c));
    write_output(c, "sample_strichartz.ndjson", rep.to_ndjson());
    ok = ok && r.verdict;
  }
  if (apriori) {
    const auto r = experiments::apriori_growth_probe(data, apriori->s, apriori->T, apriori->samples, apriori->sign,
                                                     apriori->dt, c.threads, th);
    const auto rep = experiments::to_report(r, report_metadata(c));
    write_output(c, "sample_apriori.ndjson", rep.to_ndjson());
    ok = ok && r.verdict;
  }
  return ok ? kExitOk : kExitVerdict;
}

// --------------------------------------------------------------------- norms

int cmd_norms(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "data", "norms", "integrals", "sign"});
  const config::DataSpec data = config::read_data(section(root, "data"), "data", c.seed);
  auto norms = root.contains("norms") ? config::read_norms(root["norms"], "norms") : default_ledger_norms();
  const std::vector<int> integrals = config::get_ints(root, "", "integrals", std::vector<int>{2, 4, 6});
  for (int p : integrals) {
    if (p < 2 || p % 2 != 0) throw ConfigError("integrals", "exponents must be even and >= 2");
  }
  const int sign = config::get_int(root, "", "sign", 1);
  if (sign != 1 && sign != -1) throw ConfigError("sign", "must be +1 or -1");

  c.resolved = base_resolved(c);
  c.resolved["data"] = config::to_json(data);
  c.resolved["norms"] = config::to_json(norms);
  c.resolved["integrals"] = integrals;
  c.resolved["sign"] = sign;

  const TorusField u = data.realize();
  const Conserved q = conserved(u, sign);
  std::vector<std::pair<std::string, double>> values;
  for (const auto& n : norms) values.emplace_back(n.name, norm(u, n.spec));
  values.emplace_back("mean_intensity", mean_intensity(u));
  values.emplace_back("mass", q.mass);
  values.emplace_back("momentum", q.momentum);
  values.emplace_back("hamiltonian", q.hamiltonian);
  for (int p : integrals) values.emplace_back(fmt::format("integral_abs_pow_{}", p), integral_abs_pow(u, p));

  std::ostringstream csv, nd;
  csv << csv_preamble(c) << "name,value\n";
  Json rec;
  rec["type"] = "norms";
  Json vals = Json::object();
  for (const auto& [k, v] : values) {
    csv << k << ',' << num(v) << '\n';
    vals[k] = v;
  }
  rec["values"] = std::move(vals);
  nd << header(c).dump() << '\n' << rec.dump() << '\n';
  write_output(c, "norms.csv", csv.str());
  write_output(c, "norms.ndjson", nd.str());
  return kExitOk;
}

// --------------------------------------------------------------- order-study

int cmd_order_study(Context& c) {
  const Json& root = c.config;
  config::allow_keys(root, "", {"schema_version", "seed", "threads", "equation", "scheme", "dts", "t_end", "data",
                                "thresholds", "thresholds_file"});
  const EquationSpec eq = config::read_equation(section(root, "equation"), "equation");
  const auto scheme_name = config::get_string(root, "", "scheme", "strang");
  Scheme scheme;
  try {
    scheme = scheme_from_string(scheme_name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scheme", e.what());
  }
  const auto dts = config::get_doubles(root, "", "dts");
  const double t_end = config::get_double(root, "", "t_end", 1.0);
  if (dts.size() < 3) throw ConfigError("dts", "need at least three time steps");
  for (std::size_t i = 0; i < dts.size(); ++i) {
    if (!(dts[i] > 0.0)) throw ConfigError("dts", "time steps must be positive");
    if (i > 0 && !(dts[i] < dts[i - 1])) throw ConfigError("dts", "time steps must decrease");
  }
  const config::DataSpec data = config::read_data(section(root, "data"), "data", c.seed);
  const auto th = read_thresholds(root);

  c.resolved = base_resolved(c);
  c.resolved["equation"] = config::to_json(eq);
  c.resolved["scheme"] = to_string(scheme);
  c.resolved["dts"] = dts;
  c.resolved["t_end"] = t_end;
  c.resolved["data"] = config::to_json(data);
  c.resolved["thresholds"] = th.to_json();

  const auto r = experiments::integrator_order_study(data.realize(), eq, scheme, dts, t_end, th);
  const auto rep = experiments::to_report(r, report_metadata(c));
  write_output(c, "order_study.ndjson", rep.to_ndjson());
  write_output(c, "order_study_summary.csv", csv_preamble(c) + rep.summary_csv());
  c.log << "order-study: order " << num(r.order) << (r.exact_to_roundoff ? " (exact to roundoff)" : "") << ", verdict "
        << (r.verdict ? "pass" : "fail") << '\n';
  return r.verdict ? kExitOk : kExitVerdict;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "weak-limit", "wick-check", "sample", "norms", "order-study"};
  return names;
}

fs::path default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  if (env != nullptr && *env != '\0') return env;
  return "tnls-out";
}

int run(const std::string& command, Json cfg, const RunOptions& options, std::ostream& log, std::ostream& err) {
  Context c{command, std::move(cfg), Json(), 0, 1, options.out_dir.empty() ? default_out_dir() : options.out_dir, log, err};
  try {
    for (const auto& o : options.overrides) config::apply_override(c.config, o);
    if (options.seed) c.config["seed"] = *options.seed;
    config::check_schema(c.config);
    c.seed = config::get_u64(c.config, "", "seed", 0);
    if (options.threads) {
      c.threads = std::max(1u, *options.threads);
    } else {
      c.threads = static_cast<unsigned>(std::max(1, config::get_int(c.config, "", "threads", 1)));
    }
    if (options.repro) c.threads = 1;
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) {
      err << "tnls " << command << ": cannot create output directory " << c.out.string() << ": " << ec.message()
          << '\n';
      return kExitConfig;
    }
    if (command == "simulate") return cmd_simulate(c);
    if (command == "weak-limit") return cmd_weak_limit(c);
    if (command == "wick-check") return cmd_wick_check(c);
    if (command == "sample") return cmd_sample(c);
    if (command == "norms") return cmd_norms(c);
    if (command == "order-study") return cmd_order_study(c);
    err << "tnls: unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "tnls " << command << ": config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IntegrationDiverged& e) {
    err << "tnls " << command << ": integration diverged: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::invalid_argument& e) {
    err << "tnls " << command << ": invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "tnls " << command << ": error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace tnls::cli
