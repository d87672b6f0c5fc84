#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rsfd {

/// Matrix-free SPD operator: writes A*in into out. in and out never alias.
using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

struct SolveStats {
  int iterations = 0;
  std::vector<double> residual_history;  // ||r_k||_2 / ||r_0||_2 per iteration
  bool converged = false;
  double final_relative_residual = 0.0;
};

struct SolveResult {
  std::vector<double> solution;
  SolveStats stats;
};

struct KrylovOptions {
  double tol = 1e-9;
  int maxit = 1000;
  // The recursively updated residual is replaced by a freshly computed one
  // every this many iterations; guards drift on long ill-conditioned runs.
  int refresh_interval = 50;
};

/// Thrown when a direction of nonpositive curvature shows up: the operator
/// (or preconditioner) is not SPD, which is a bug upstream of the solver.
class KrylovBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conjugate gradients from the zero initial guess. Convergence is declared
/// on the relative 2-norm residual of the original system and confirmed with
/// a from-scratch residual before reporting; if the fresh residual disagrees,
/// the iteration continues with the fresh value.
SolveResult cg(const LinearOperator& apply, std::span<const double> rhs,
               const KrylovOptions& options);

/// Preconditioned conjugate gradients. precond_inverse applies the inverse of
/// an SPD preconditioner; convergence is still measured on the residual of
/// the original (unpreconditioned) system.
SolveResult pcg(const LinearOperator& apply, const LinearOperator& precond_inverse,
                std::span<const double> rhs, const KrylovOptions& options);

}  // namespace rsfd
