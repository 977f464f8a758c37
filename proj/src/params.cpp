#include "pact/params.hpp"

namespace pact {
namespace {

// Single registry so set_param, param_keys and param_table cannot drift.
struct Entry {
  const char* key;
  void (*set)(SimParams&, double);
  double (*get)(const SimParams&);
};

const Entry kEntries[] = {
    {"mu", [](SimParams& p, double v) { p.gains.mu = v; },
     [](const SimParams& p) { return p.gains.mu; }},
    {"k", [](SimParams& p, double v) { p.gains.k = v; },
     [](const SimParams& p) { return p.gains.k; }},
    {"t_mid", [](SimParams& p, double v) { p.gains.t_mid = v; },
     [](const SimParams& p) { return p.gains.t_mid; }},
    {"d_max",
     [](SimParams& p, double v) {
       p.gains.d_max = v;
       p.thresh.d_max = v;
     },
     [](const SimParams& p) { return p.gains.d_max; }},
    {"d_min",
     [](SimParams& p, double v) {
       p.gains.d_min = v;
       p.thresh.d_min = v;
     },
     [](const SimParams& p) { return p.gains.d_min; }},
    {"l_max", [](SimParams& p, double v) { p.gains.l_max = static_cast<int>(v); },
     [](const SimParams& p) { return static_cast<double>(p.gains.l_max); }},
    {"V_max", [](SimParams& p, double v) { p.gains.V_max = v; },
     [](const SimParams& p) { return p.gains.V_max; }},
    {"d_repulse", [](SimParams& p, double v) { p.gains.d_repulse = v; },
     [](const SimParams& p) { return p.gains.d_repulse; }},
    {"d_crit", [](SimParams& p, double v) { p.gains.d_crit = v; },
     [](const SimParams& p) { return p.gains.d_crit; }},
    {"d_notice", [](SimParams& p, double v) { p.gains.d_notice = v; },
     [](const SimParams& p) { return p.gains.d_notice; }},
    {"beta", [](SimParams& p, double v) { p.gains.beta = v; },
     [](const SimParams& p) { return p.gains.beta; }},
    {"max_constraints",
     [](SimParams& p, double v) { p.gains.max_constraints = static_cast<int>(v); },
     [](const SimParams& p) { return static_cast<double>(p.gains.max_constraints); }},
    {"F_b", [](SimParams& p, double v) { p.thresh.F_b = v; },
     [](const SimParams& p) { return p.thresh.F_b; }},
    {"F_std", [](SimParams& p, double v) { p.thresh.F_std = v; },
     [](const SimParams& p) { return p.thresh.F_std; }},
    {"sigma_max", [](SimParams& p, double v) { p.thresh.sigma_max = v; },
     [](const SimParams& p) { return p.thresh.sigma_max; }},
    {"F_d", [](SimParams& p, double v) { p.thresh.F_d = v; },
     [](const SimParams& p) { return p.thresh.F_d; }},
    {"alpha", [](SimParams& p, double v) { p.alpha = v; },
     [](const SimParams& p) { return p.alpha; }},
    {"lambda", [](SimParams& p, double v) { p.lambda = v; },
     [](const SimParams& p) { return p.lambda; }},
    {"window", [](SimParams& p, double v) { p.window = static_cast<int>(v); },
     [](const SimParams& p) { return static_cast<double>(p.window); }},
    {"compliance", [](SimParams& p, double v) { p.compliance = v; },
     [](const SimParams& p) { return p.compliance; }},
    {"k_c", [](SimParams& p, double v) { p.plant.k_c = v; },
     [](const SimParams& p) { return p.plant.k_c; }},
    {"sigma0", [](SimParams& p, double v) { p.plant.sigma0 = v; },
     [](const SimParams& p) { return p.plant.sigma0; }},
    {"sigma_v", [](SimParams& p, double v) { p.plant.sigma_v = v; },
     [](const SimParams& p) { return p.plant.sigma_v; }},
    {"K_p", [](SimParams& p, double v) { p.plant.K_p = v; },
     [](const SimParams& p) { return p.plant.K_p; }},
    {"task_vmax", [](SimParams& p, double v) { p.plant.task_vmax = v; },
     [](const SimParams& p) { return p.plant.task_vmax; }},
};

}  // namespace

bool set_param(SimParams& p, const std::string& key, double value) {
  for (const auto& e : kEntries) {
    if (key == e.key) {
      e.set(p, value);
      return true;
    }
  }
  return false;
}

std::vector<std::string> param_keys() {
  std::vector<std::string> keys;
  for (const auto& e : kEntries) keys.push_back(e.key);
  return keys;
}

std::map<std::string, double> param_table(const SimParams& p) {
  std::map<std::string, double> out;
  for (const auto& e : kEntries) out[e.key] = e.get(p);
  return out;
}

}  // namespace pact
