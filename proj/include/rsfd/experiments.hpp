#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rsfd/config.hpp"

namespace rsfd {

/// Runs the experiment described by the config and writes its CSV outputs
/// into out_dir (created if missing). Returns the paths written. Reruns with
/// the same config produce identical files except for wall-time columns.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir);

// Individual experiment drivers; run_experiment dispatches on config.experiment.
std::filesystem::path run_solve_experiment(const ExperimentConfig&,
                                           const std::filesystem::path& out_dir);
std::filesystem::path run_convergence_experiment(const ExperimentConfig&,
                                                 const std::filesystem::path& out_dir);
std::filesystem::path run_iterations_experiment(const ExperimentConfig&,
                                                const std::filesystem::path& out_dir);
std::filesystem::path run_spectrum_experiment(const ExperimentConfig&,
                                              const std::filesystem::path& out_dir);
std::filesystem::path run_stability_experiment(const ExperimentConfig&,
                                               const std::filesystem::path& out_dir);

/// Paper-style row label for a solver configuration: CG, Ptau-CG, PStrang-CG,
/// PChan-CG.
std::string solver_label(const SolverConfig& solver);

}  // namespace rsfd
