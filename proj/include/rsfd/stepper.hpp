#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rsfd/krylov.hpp"
#include "rsfd/precond.hpp"
#include "rsfd/problem.hpp"
#include "rsfd/structured_ops.hpp"

namespace rsfd {

enum class PrecondChoice { none, tau, strang, chan };

struct MarchOptions {
  PrecondChoice precond = PrecondChoice::tau;
  double tol = 1e-9;
  int maxit = 0;  // 0 = product of interior point counts
  AverageRule average = AverageRule::arithmetic;
  int refresh_interval = 50;
  bool keep_residual_histories = false;
};

struct MarchReport {
  std::vector<SolveStats> steps;
  double wall_seconds = 0.0;
  std::optional<double> final_error;  // ||u(T) - U(T)|| when an exact solution exists

  double mean_iterations() const;
  int max_iterations() const;
};

/// A time step whose linear solve did not converge. Carries the failing step
/// index and the report accumulated so far.
class MarchError : public std::runtime_error {
 public:
  MarchError(int step_index, MarchReport partial_report);
  int step() const noexcept { return step_; }
  const MarchReport& partial() const noexcept { return partial_; }

 private:
  int step_;
  MarchReport partial_;
};

/// Assembles the implicit spatial operator sum_i eta_i I x S_i x I from the
/// fourth-order stencil tables of the problem's fractional orders.
KroneckerSumOperator make_operator(const ProblemSpec& spec, const GridSpec& grid);

/// Crank-Nicolson march: u^0 = psi on the grid, then per step solves
/// (D^{m+1/2} + T) u^{m+1} = (D^{m+1/2} - T) u^m + dt f^{m+1/2} by (P)CG with
/// the zero initial guess. The preconditioner's tau (or circulant) part is
/// built once; each step only refreshes the coefficient average rbar.
std::pair<GridField, MarchReport> march(const ProblemSpec& spec, const GridSpec& grid,
                                        const MarchOptions& options);

enum class RefinementMode { temporal, spatial };

struct ConvergenceRow {
  std::vector<int> interior;
  int time_steps;
  double h;   // spacing of the first dimension (sweeps keep spacings equal)
  double dt;
  double error;
  std::optional<double> order;  // log2(E_prev / E), absent on the first row
};

/// Runs `levels` marches, halving dt (temporal mode) or every h (spatial mode)
/// from the base grid, and reports errors with observed log2 orders.
/// Requires an exact solution.
std::vector<ConvergenceRow> convergence_study(const ProblemSpec& spec,
                                              const std::vector<int>& base_interior,
                                              int base_steps, RefinementMode mode,
                                              int levels, const MarchOptions& options);

/// Spectral radius of the dense Crank-Nicolson iteration matrix
/// (I + D^{-1}T)^{-1} (I - D^{-1}T) at step m; must be < 1. Dense and guarded,
/// small grids only.
double stability_witness(const ProblemSpec& spec, const GridSpec& grid, int step);

}  // namespace rsfd
