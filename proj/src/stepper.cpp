#include "rsfd/stepper.hpp"

#include <chrono>
#include <cmath>

#include "rsfd/oracle.hpp"

namespace rsfd {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

double MarchReport::mean_iterations() const {
  if (steps.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : steps) sum += s.iterations;
  return sum / static_cast<double>(steps.size());
}

int MarchReport::max_iterations() const {
  int best = 0;
  for (const auto& s : steps) best = std::max(best, s.iterations);
  return best;
}

MarchError::MarchError(int step_index, MarchReport partial_report)
    : std::runtime_error("linear solve did not converge at time step " +
                         std::to_string(step_index)),
      step_(step_index),
      partial_(std::move(partial_report)) {}

KroneckerSumOperator make_operator(const ProblemSpec& spec, const GridSpec& grid) {
  std::vector<SymmetricToeplitz1D> blocks;
  blocks.reserve(grid.dimension());
  for (int i = 0; i < grid.dimension(); ++i) {
    const auto table = fcd4_coefficients(spec.alphas[i], grid.interior()[i] - 1);
    blocks.emplace_back(table.values);
  }
  return KroneckerSumOperator(std::move(blocks), grid.etas());
}

std::pair<GridField, MarchReport> march(const ProblemSpec& spec, const GridSpec& grid,
                                        const MarchOptions& options) {
  const auto start = Clock::now();
  const KroneckerSumOperator op = make_operator(spec, grid);
  const long n = grid.total();

  KrylovOptions solver_options;
  solver_options.tol = options.tol;
  solver_options.maxit = options.maxit > 0 ? options.maxit : static_cast<int>(n);
  solver_options.refresh_interval = options.refresh_interval;

  // The spatial part of either preconditioner is time-independent; build it
  // once with a placeholder rbar and swap the average in per step.
  std::optional<TauPreconditioner> tau;
  std::optional<CirculantPreconditioner> circulant;
  if (options.precond == PrecondChoice::tau) {
    tau.emplace(grid.etas(), spec.alphas, grid.interior(), 1.0);
  } else if (options.precond == PrecondChoice::strang ||
             options.precond == PrecondChoice::chan) {
    circulant.emplace(options.precond == PrecondChoice::strang ? CirculantVariant::strang
                                                               : CirculantVariant::chan,
                      grid.etas(), spec.alphas, grid.interior(), 1.0);
  }

  GridField u = sample_initial(spec, grid);
  MarchReport report;
  report.steps.reserve(grid.time_steps());
  std::vector<double> rhs(n), t_u(n);

  for (int m = 0; m < grid.time_steps(); ++m) {
    const GridField diag = sample_coefficient(spec, grid, m);
    const GridField f = sample_source(spec, grid, grid.midpoint_time(m));
    op.apply(u.values, t_u);
    const double dt = grid.dt();
    for (long i = 0; i < n; ++i)
      rhs[i] = diag.values[i] * u.values[i] - t_u[i] + dt * f.values[i];

    LinearOperator apply = [&](std::span<const double> in, std::span<double> out) {
      op.apply(in, out);
      for (long i = 0; i < n; ++i) out[i] += diag.values[i] * in[i];
    };

    SolveResult solve;
    if (options.precond == PrecondChoice::none) {
      solve = cg(apply, rhs, solver_options);
    } else {
      const auto avg = average_coefficient(diag, options.average);
      LinearOperator apply_pinv;
      if (tau) {
        tau->set_rbar(avg.rbar);
        apply_pinv = [&](std::span<const double> in, std::span<double> out) {
          tau->apply_inverse(in, out);
        };
      } else {
        circulant->set_rbar(avg.rbar);
        apply_pinv = [&](std::span<const double> in, std::span<double> out) {
          circulant->apply_inverse(in, out);
        };
      }
      solve = pcg(apply, apply_pinv, rhs, solver_options);
    }

    if (!options.keep_residual_histories) solve.stats.residual_history.clear();
    report.steps.push_back(std::move(solve.stats));
    if (!report.steps.back().converged) {
      report.wall_seconds = seconds_since(start);
      throw MarchError(m, std::move(report));
    }
    u.values = std::move(solve.solution);
  }

  if (spec.has_exact()) {
    const GridField exact = sample_exact(spec, grid, spec.final_time);
    GridField diff(grid.interior());
    for (long i = 0; i < n; ++i) diff.values[i] = u.values[i] - exact.values[i];
    report.final_error = discrete_l2_norm(diff, grid);
  }
  report.wall_seconds = seconds_since(start);
  return {std::move(u), std::move(report)};
}

std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<int>& base_interior,
                                              int base_steps, RefinementMode mode,
                                              int levels, const MarchOptions& options) {
  if (!spec.has_exact())
    throw std::invalid_argument("convergence_study requires an exact solution");
  if (levels < 1) throw std::invalid_argument("convergence_study: need at least one level");

  std::vector<ConvergenceRow> rows;
  std::vector<int> interior = base_interior;
  int steps = base_steps;
  for (int level = 0; level < levels; ++level) {
    const GridSpec grid = make_grid(spec, interior, steps);
    auto [u, report] = march(spec, grid, options);
    ConvergenceRow row{interior, steps, grid.h(0), grid.dt(), *report.final_error, {}};
    if (!rows.empty()) row.order = std::log2(rows.back().error / row.error);
    rows.push_back(std::move(row));
    if (mode == RefinementMode::temporal) {
      steps *= 2;
    } else {
      // halve every spacing exactly: h = L/(n+1) -> n' = 2(n+1) - 1
      for (int& ni : interior) ni = 2 * (ni + 1) - 1;
    }
  }
  return rows;
}

double stability_witness(const ProblemSpec& spec, const GridSpec& grid, int step) {
  if (grid.total() > oracle::kDenseGuard)
    throw std::invalid_argument("stability_witness: grid exceeds the dense guard");
  const Eigen::MatrixXd t_dense = oracle::assemble_T_dense(make_operator(spec, grid));
  const GridField diag = sample_coefficient(spec, grid, step);
  const long n = grid.total();
  // (I + D^{-1}T)^{-1}(I - D^{-1}T) is similar to the same rational function
  // of the SPD matrix W = D^{-1/2} T D^{-1/2}; its spectral radius is
  // max |1 - mu| / (1 + mu) over the eigenvalues mu > 0 of W.
  Eigen::VectorXd inv_sqrt(n);
  for (long i = 0; i < n; ++i) inv_sqrt(i) = 1.0 / std::sqrt(diag.values[i]);
  Eigen::MatrixXd w = inv_sqrt.asDiagonal() * t_dense * inv_sqrt.asDiagonal();
  w = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("stability_witness: eigensolver failed");
  double radius = 0.0;
  for (long i = 0; i < n; ++i) {
    const double mu = solver.eigenvalues()(i);
    radius = std::max(radius, std::abs((1.0 - mu) / (1.0 + mu)));
  }
  return radius;
}

}  // namespace rsfd
