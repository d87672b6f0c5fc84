#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rsfd/problem.hpp"
#include "rsfd/stepper.hpp"

namespace rsfd {

/// Coefficient functions expressible in config files:
///   r(x, t) = scale * ( sum_i quadratic_i x_i^2 + exp_decay e^{-t} + constant ).
struct CoefficientExpr {
  std::vector<double> quadratic;
  double exp_decay = 0.0;
  double constant = 0.0;
  double scale = 1.0;

  SpaceTimeFn function() const;
  bool operator==(const CoefficientExpr&) const = default;
};

/// A problem is either one of the built-ins ("example1"/"example2", which take
/// only the fractional orders) or an inline manufactured definition.
struct ProblemConfig {
  std::string name;  // empty for inline definitions
  std::vector<double> alphas;
  // inline fields
  std::vector<double> lower, upper;
  std::vector<double> diffusion;
  double final_time = 1.0;
  double exact_scale = 1.0;
  std::vector<std::vector<double>> exact_polynomials;
  CoefficientExpr coefficient;

  bool operator==(const ProblemConfig&) const = default;
};

struct GridConfig {
  std::vector<int> interior;
  int time_steps = 1;

  bool operator==(const GridConfig&) const = default;
};

struct SolverConfig {
  std::string method = "pcg";           // cg | pcg
  std::string preconditioner = "tau";   // tau | strang | chan | none
  double tol = 1e-9;
  int maxit = 0;                        // 0 = product of interior counts
  std::string average = "arithmetic";   // arithmetic | geometric

  bool operator==(const SolverConfig&) const = default;
};

struct ExperimentConfig {
  std::string experiment;  // solve | convergence-temporal | convergence-spatial |
                           // iterations | spectrum | stability
  ProblemConfig problem;
  std::vector<GridConfig> grids;     // iterations experiments run all; others use the first
  std::vector<SolverConfig> solvers; // iterations experiments run all; others use the first
  int levels = 1;                    // convergence experiments
  std::vector<int> stability_steps;  // empty = {0, M/2, M-1}
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Human-readable schema of the config file, printed by --print-schema.
std::string config_schema();

/// Materializes the problem described by a config entry.
ProblemSpec build_problem(const ProblemConfig& config);

MarchOptions build_march_options(const SolverConfig& config);

}  // namespace rsfd
