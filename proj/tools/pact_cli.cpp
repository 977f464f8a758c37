// Command-line front end: run a scenario, compare proximity-informed vs
// uninformed runs, or execute the full acceptance suite.
//
// Exit codes: 0 success, 1 acceptance criterion failed, 2 bad usage/input.
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pact/acceptance.hpp"
#include "pact/scenario.hpp"
#include "pact/simworld.hpp"

#ifndef PACT_DATA_DIR
#define PACT_DATA_DIR "data"
#endif

namespace {

std::map<std::string, double> parse_sets(const std::vector<std::string>& kvs) {
  std::map<std::string, double> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return out;
}

void print_summary(const pact::Trace& trace, const pact::TraceSummary& s) {
  std::printf("scenario %s  model %s  seed %llu  rows %zu\n",
              trace.scenario_name.c_str(), trace.model_name.c_str(),
              static_cast<unsigned long long>(trace.seed), trace.rows.size());
  std::printf("  peak contact force    %.4g N over %d event(s)\n",
              s.peak_contact_force, s.contact_events);
  if (s.min_body_distance >= 0.0)
    std::printf("  min obstacle distance %.4g m\n", s.min_body_distance);
  else
    std::printf("  min obstacle distance n/a (empty scene)\n");
  if (s.slack_events > 0)
    std::printf("  relaxed-constraint cycles %d\n", s.slack_events);
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            std::optional<uint64_t> seed, bool no_proximity,
            bool no_restrictions, const std::vector<std::string>& sets) {
  const pact::Scenario sc = pact::load_scenario(scenario_path);
  pact::RunOptions opt;
  opt.seed = seed;
  opt.no_proximity = no_proximity;
  opt.no_restrictions = no_restrictions;
  opt.overrides = parse_sets(sets);
  const pact::Trace trace = pact::run_scenario(sc, opt);
  print_summary(trace, pact::summarize(trace));
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/" + sc.name;
    pact::write_trace_csv(trace, base + "_trace.csv");
    pact::write_trace_meta(trace, base + "_meta.json");
    std::printf("  wrote %s_trace.csv and %s_meta.json\n", base.c_str(),
                base.c_str());
  }
  return 0;
}

int cmd_compare(const std::string& scenario_path, std::optional<uint64_t> seed,
                const std::vector<std::string>& sets) {
  const pact::Scenario sc = pact::load_scenario(scenario_path);
  pact::RunOptions informed;
  informed.seed = seed;
  informed.overrides = parse_sets(sets);
  pact::RunOptions blind = informed;
  blind.no_proximity = true;

  const pact::TraceSummary si = pact::summarize(pact::run_scenario(sc, informed));
  const pact::TraceSummary sb = pact::summarize(pact::run_scenario(sc, blind));
  std::printf("uninformed: peak %.4g N, %d event(s), min distance %.4g m\n",
              sb.peak_contact_force, sb.contact_events, sb.min_body_distance);
  std::printf("informed:   peak %.4g N, %d event(s), min distance %.4g m\n",
              si.peak_contact_force, si.contact_events, si.min_body_distance);
  if (sb.peak_contact_force > 0.0)
    std::printf("peak force ratio informed/uninformed: %.4g\n",
                si.peak_contact_force / sb.peak_contact_force);
  else
    std::printf("peak force ratio informed/uninformed: n/a (no baseline contact)\n");
  return 0;
}

int cmd_suite(const std::string& data_dir, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto results = pact::run_acceptance(data_dir, out_dir);
  for (const auto& r : results)
    std::printf("[%2d] %s  %-28s %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
  const bool ok = pact::all_passed(results);
  std::printf("%s\n", ok ? "suite: all criteria passed"
                         : "suite: at least one criterion FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proximity-aware manipulator control scenario simulator"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, suite_out = "suite_out";
  std::string data_dir = PACT_DATA_DIR;
  std::optional<uint64_t> seed;
  bool no_proximity = false, no_restrictions = false;
  std::vector<std::string> sets;

  auto add_run_opts = [&](CLI::App* c, bool with_toggles) {
    c->add_option("--scenario", scenario_path, "scenario JSON file")
        ->required();
    c->add_option("--seed", seed, "override the scenario seed");
    c->add_option("--set", sets, "parameter override key=value (repeatable)");
    if (with_toggles) {
      c->add_flag("--no-proximity", no_proximity,
                  "ignore proximity sensing entirely");
      c->add_flag("--no-restrictions", no_restrictions,
                  "keep velocity scaling but drop movement restrictions");
    }
  };

  CLI::App* run = app.add_subcommand("run", "run one scenario, print a summary");
  add_run_opts(run, true);
  run->add_option("--out", out_dir, "directory for trace CSV + metadata JSON");

  CLI::App* compare = app.add_subcommand(
      "compare", "run informed and uninformed, print the peak-force ratio");
  add_run_opts(compare, false);

  CLI::App* suite = app.add_subcommand("suite", "run all acceptance criteria");
  suite->add_option("--data", data_dir, "data directory (models + scenarios)");
  suite->add_option("--out", suite_out, "output directory for suite traces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit clean, parse errors are 2
  }

  try {
    if (run->parsed())
      return cmd_run(scenario_path, out_dir, seed, no_proximity,
                     no_restrictions, sets);
    if (compare->parsed()) return cmd_compare(scenario_path, seed, sets);
    return cmd_suite(data_dir, suite_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
