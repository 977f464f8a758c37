#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "pact/contact.hpp"
#include "pact/controller.hpp"

namespace pact {

// Synthetic plant and tracking constants (documented defaults; all
// overridable per scenario or from the command line).
struct PlantParams {
  double k_c = 2000.0;    // contact spring stiffness, N/m
  double sigma0 = 0.3;    // force-noise floor, N
  double sigma_v = 3.0;   // velocity-proportional force noise, N*(s/m)
  double K_p = 25.0;      // task-space tracking feedback, 1/s
  double task_vmax = 0.3; // cap on the task velocity, m/s
};

struct SimParams {
  ControllerGains gains;
  ThresholdParams thresh;
  PlantParams plant;
  double alpha = 0.1;     // outlier influence
  double lambda = 0.75;   // outlier gate multiplier
  int window = 100;       // force window capacity, samples
  double compliance = 0.01;  // diagonal of C, (m/s)/N

  Eigen::Matrix3d C() const {
    return compliance * Eigen::Matrix3d::Identity();
  }
};

// Sets a parameter by name; returns false for unknown keys. Shared keys
// (d_max, d_min, l_max) write every struct that uses them.
bool set_param(SimParams& p, const std::string& key, double value);

std::vector<std::string> param_keys();

// Full key -> value table (for metadata sidecars and --set validation).
std::map<std::string, double> param_table(const SimParams& p);

}  // namespace pact
