#include "rsfd/experiments.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "rsfd/oracle.hpp"

namespace rsfd {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string shape_label(const std::vector<int>& interior) {
  std::string s;
  for (size_t i = 0; i < interior.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(interior[i]);
  }
  return s;
}

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

const GridConfig& first_grid(const ExperimentConfig& config) { return config.grids.front(); }
const SolverConfig& first_solver(const ExperimentConfig& config) {
  return config.solvers.front();
}

}  // namespace

std::string solver_label(const SolverConfig& solver) {
  if (solver.method == "cg" || solver.preconditioner == "none") return "CG";
  if (solver.preconditioner == "tau") return "Ptau-CG";
  if (solver.preconditioner == "strang") return "PStrang-CG";
  return "PChan-CG";
}

std::filesystem::path run_solve_experiment(const ExperimentConfig& config,
                                           const std::filesystem::path& out_dir) {
  const ProblemSpec spec = build_problem(config.problem);
  const GridConfig& g = first_grid(config);
  const GridSpec grid = make_grid(spec, g.interior, g.time_steps);
  const MarchOptions options = build_march_options(first_solver(config));
  auto [u, report] = march(spec, grid, options);

  const auto path = out_dir / "solve.csv";
  auto out = open_csv(path);
  out << "step,iterations,final_relative_residual,converged\n";
  for (size_t m = 0; m < report.steps.size(); ++m)
    out << m << "," << report.steps[m].iterations << ","
        << fmt(report.steps[m].final_relative_residual) << ","
        << (report.steps[m].converged ? 1 : 0) << "\n";

  auto summary = open_csv(out_dir / "solve_summary.csv");
  summary << "grid,M,N,mean_iterations,max_iterations,final_error,wall_seconds\n";
  summary << shape_label(g.interior) << "," << g.time_steps << "," << grid.total() << ","
          << fmt(report.mean_iterations()) << "," << report.max_iterations() << ","
          << (report.final_error ? fmt(*report.final_error) : std::string()) << ","
          << fmt(report.wall_seconds) << "\n";
  return path;
}

std::filesystem::path run_convergence_experiment(const ExperimentConfig& config,
                                                 const std::filesystem::path& out_dir) {
  const ProblemSpec spec = build_problem(config.problem);
  const GridConfig& g = first_grid(config);
  const MarchOptions options = build_march_options(first_solver(config));
  const RefinementMode mode = config.experiment == "convergence-temporal"
                                  ? RefinementMode::temporal
                                  : RefinementMode::spatial;
  const auto rows = convergence_study(spec, g.interior, g.time_steps, mode,
                                      config.levels, options);

  const auto path = out_dir / "convergence.csv";
  auto out = open_csv(path);
  // For a spatial sweep the time step must be small enough that the O(dt^2)
  // part cannot hide the spatial error; report the coupling instead of
  // assuming it.
  const auto& finest = rows.back();
  out << "# mode=" << (mode == RefinementMode::temporal ? "temporal" : "spatial")
      << " dt=" << fmt(finest.dt) << " h_finest=" << fmt(finest.h)
      << " dt^2/h_finest^4=" << fmt(finest.dt * finest.dt / std::pow(finest.h, 4.0))
      << "\n";
  out << "level,n,M,h,dt,error,order\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out << i << "," << shape_label(row.interior) << "," << row.time_steps << ","
        << fmt(row.h) << "," << fmt(row.dt) << "," << fmt(row.error) << ","
        << (row.order ? fmt(*row.order) : std::string()) << "\n";
  }
  return path;
}

std::filesystem::path run_iterations_experiment(const ExperimentConfig& config,
                                                const std::filesystem::path& out_dir) {
  const ProblemSpec spec = build_problem(config.problem);
  const auto path = out_dir / "iterations.csv";
  auto out = open_csv(path);
  out << "method,grid,M,N,mean_iterations,max_iterations,wall_seconds,status\n";
  for (const GridConfig& g : config.grids) {
    for (const SolverConfig& solver : config.solvers) {
      const GridSpec grid = make_grid(spec, g.interior, g.time_steps);
      const MarchOptions options = build_march_options(solver);
      std::string status = "ok";
      MarchReport report;
      try {
        report = march(spec, grid, options).second;
      } catch (const MarchError& err) {
        report = err.partial();
        status = "nonconverged@step" + std::to_string(err.step());
      }
      out << solver_label(solver) << "," << shape_label(g.interior) << ","
          << g.time_steps << "," << grid.total() << "," << fmt(report.mean_iterations())
          << "," << report.max_iterations() << "," << fmt(report.wall_seconds) << ","
          << status << "\n";
    }
  }
  return path;
}

std::filesystem::path run_spectrum_experiment(const ExperimentConfig& config,
                                              const std::filesystem::path& out_dir) {
  const ProblemSpec spec = build_problem(config.problem);
  const GridConfig& g = first_grid(config);
  const GridSpec grid = make_grid(spec, g.interior, g.time_steps);
  if (grid.total() > oracle::kDenseGuard)
    throw std::invalid_argument("spectrum experiment: grid exceeds the dense guard");
  const MarchOptions options = build_march_options(first_solver(config));

  // The figure-style protocol: spectra at the final time step's coefficient.
  const int last = grid.time_steps() - 1;
  const GridField diag = sample_coefficient(spec, grid, last);
  const auto avg = average_coefficient(diag, options.average);
  const KroneckerSumOperator op = make_operator(spec, grid);
  Eigen::MatrixXd a = oracle::assemble_T_dense(op);
  for (long i = 0; i < grid.total(); ++i) a(i, i) += diag.values[i];

  const long n = grid.total();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  struct Entry {
    std::string label;
    Eigen::MatrixXd precond;
  };
  std::vector<Entry> entries;
  entries.push_back({"A", identity});
  entries.push_back({"Ptau_inv_A", oracle::assemble_ptau_dense(grid.etas(), spec.alphas,
                                                               grid.interior(), avg.rbar)});
  entries.push_back(
      {"PStrang_inv_A",
       oracle::assemble_circulant_sum_dense(CirculantVariant::strang, grid.etas(),
                                            spec.alphas, grid.interior(), avg.rbar)});
  entries.push_back(
      {"PChan_inv_A",
       oracle::assemble_circulant_sum_dense(CirculantVariant::chan, grid.etas(),
                                            spec.alphas, grid.interior(), avg.rbar)});

  const auto path = out_dir / "spectrum.csv";
  auto out = open_csv(path);
  out << "# rmin=" << fmt(avg.rmin) << " rmax=" << fmt(avg.rmax)
      << " rbar=" << fmt(avg.rbar) << "\n";
  out << "matrix,index,eigenvalue\n";
  for (const auto& entry : entries) {
    const auto spectrum = oracle::generalized_spectrum(a, entry.precond);
    for (size_t i = 0; i < spectrum.size(); ++i)
      out << entry.label << "," << i << "," << fmt(spectrum[i]) << "\n";
  }
  return path;
}

std::filesystem::path run_stability_experiment(const ExperimentConfig& config,
                                               const std::filesystem::path& out_dir) {
  const ProblemSpec spec = build_problem(config.problem);
  const GridConfig& g = first_grid(config);
  const GridSpec grid = make_grid(spec, g.interior, g.time_steps);
  std::vector<int> steps = config.stability_steps;
  if (steps.empty())
    steps = {0, grid.time_steps() / 2, grid.time_steps() - 1};

  const auto path = out_dir / "stability.csv";
  auto out = open_csv(path);
  out << "step,spectral_radius\n";
  for (int m : steps) out << m << "," << fmt(stability_witness(spec, grid, m)) << "\n";
  return path;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config,
                                                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  if (config.experiment == "solve") {
    written.push_back(run_solve_experiment(config, out_dir));
    written.push_back(out_dir / "solve_summary.csv");
  } else if (config.experiment == "convergence-temporal" ||
             config.experiment == "convergence-spatial") {
    written.push_back(run_convergence_experiment(config, out_dir));
  } else if (config.experiment == "iterations") {
    written.push_back(run_iterations_experiment(config, out_dir));
  } else if (config.experiment == "spectrum") {
    written.push_back(run_spectrum_experiment(config, out_dir));
  } else if (config.experiment == "stability") {
    written.push_back(run_stability_experiment(config, out_dir));
  } else {
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
  }
  return written;
}

}  // namespace rsfd
