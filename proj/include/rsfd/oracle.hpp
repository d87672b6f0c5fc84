#pragma once

// Dense brute-force references for the structured fast paths. Everything here
// materializes matrices and is guarded to small orders; production code never
// calls into this module, tests and the spectrum/stability experiments do.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "rsfd/grid.hpp"
#include "rsfd/precond.hpp"
#include "rsfd/structured_ops.hpp"

namespace rsfd::oracle {

inline constexpr long kDenseGuard = 4096;

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Dense symmetric Toeplitz matrix from its first column.
Eigen::MatrixXd toeplitz_dense(std::span<const double> first_column);

/// Explicit sum_i eta_i I x S_i x I via Kronecker products.
Eigen::MatrixXd assemble_T_dense(const KroneckerSumOperator& op);

/// Same matrix filled entry by entry from the multi-index stencil; an
/// independent assembly order used to validate the Kronecker route.
Eigen::MatrixXd assemble_T_dense_entrywise(const KroneckerSumOperator& op);

/// Orthonormal DST-I matrix, S_jk = sqrt(2/(n+1)) sin(jk pi/(n+1)).
Eigen::MatrixXd dst_matrix(int n);

/// Tridiagonal I + (alpha/24) tridiag(-1, 2, -1). Takes a raw order so the
/// degenerate alpha = 0 identity check stays expressible.
Eigen::MatrixXd tridiagonal_q(double alpha, int n);

/// Dense 1D sine-transform preconditioner block: Q_n times the natural tau
/// approximation of the second-order stencil matrix, the latter assembled as
/// DST^T diag(sigma) DST from the truncated-symbol samples.
Eigen::MatrixXd assemble_tau_dense(FractionalOrder alpha, int n);

/// Dense rbar I + sum_i eta_i I x (Q tau(S2)) x I, the full preconditioner.
Eigen::MatrixXd assemble_ptau_dense(std::span<const double> etas,
                                    std::span<const FractionalOrder> alphas,
                                    std::span<const int> shape, double rbar);

/// Dense circulant matrix from its first column.
Eigen::MatrixXd circulant_dense(std::span<const double> first_column);

/// Dense rbar I + sum_i eta_i I x C_i x I with C_i the Strang or Chan
/// circulant of the fourth-order stencil matrix.
Eigen::MatrixXd assemble_circulant_sum_dense(CirculantVariant variant,
                                             std::span<const double> etas,
                                             std::span<const FractionalOrder> alphas,
                                             std::span<const int> shape, double rbar);

/// Eigenvalues of P^{-1} A computed through the symmetric form
/// P^{-1/2} A P^{-1/2}, sorted ascending. P must be SPD; a nonpositive
/// eigenvalue of P throws rather than being regularized away.
std::vector<double> generalized_spectrum(const Eigen::MatrixXd& a,
                                         const Eigen::MatrixXd& p);

struct CoercivityBound {
  double constant;  // C = (1 - 1/pi) (2/pi)^{alpha_max} sum_i 1/(2 L_i^{alpha_i})
  double bound;     // C * K_min * dt
};

/// Constant of the coercivity estimate u^T T u >= C K_min dt ||u||^2 (discrete
/// L2 norm on the right).
CoercivityBound lemma_constant(const Domain& domain,
                               std::span<const FractionalOrder> alphas,
                               std::span<const double> diffusion, double dt);

/// Closed-form lower bound [2/(pi(n+1))]^alpha (1 - 1/pi) for the smallest
/// eigenvalue of the fourth-order stencil matrix of order n.
double toeplitz_min_eigenvalue_bound(FractionalOrder alpha, int n);

}  // namespace rsfd::oracle
