#pragma once

#include <span>
#include <vector>

#include "rsfd/grid.hpp"

namespace rsfd {

enum class AverageRule { arithmetic, geometric };

struct CoefficientAverage {
  double rbar;
  double rmin;
  double rmax;
};

/// Scalar surrogate for the variable coefficient: arithmetic (rmin + rmax)/2
/// or geometric sqrt(rmin rmax) mean of the sampled extremes, returned
/// together with the extremes themselves for spectral-bound checks.
CoefficientAverage average_coefficient(const GridField& diag, AverageRule rule);

/// Eigenvalues of the 1D sine-transform preconditioner block Q_n tau(S2_n):
/// lambda_j = q(theta_j) sigma(theta_j) at theta_j = j pi/(n+1), where
/// q(theta) = 1 + (alpha/6) sin^2(theta/2) and sigma is the truncated
/// second-order symbol sum ghat_0 + 2 sum_{k<n} ghat_k cos(k theta).
/// O(n log n) via a cosine transform.
std::vector<double> tau_eigenvalues_1d(FractionalOrder alpha, int n);

/// Same values by direct O(n^2) summation; the cross-check for the fast path.
std::vector<double> tau_eigenvalues_1d_direct(FractionalOrder alpha, int n);

/// Sine-transform preconditioner rbar I + tau(T), applied in O(N log N) as
/// multi_dst(multi_dst(v) ./ Lambda). The tau eigen tensor is built once;
/// time stepping only swaps rbar.
class TauPreconditioner {
 public:
  TauPreconditioner(std::vector<double> etas, std::vector<FractionalOrder> alphas,
                    std::vector<int> shape, double rbar);

  const std::vector<int>& shape() const noexcept { return shape_; }
  double rbar() const noexcept { return rbar_; }
  std::span<const double> eigenvalues() const noexcept { return lambda_; }

  /// Replaces the coefficient average, reusing the cached tau part.
  void set_rbar(double rbar);

  void apply_inverse(std::span<const double> v, std::span<double> out) const;
  GridField apply_inverse(const GridField& v) const;

 private:
  std::vector<int> shape_;
  std::vector<double> tau_part_;  // sum_i eta_i lambda_i broadcast, time-independent
  std::vector<double> lambda_;    // rbar + tau_part, all positive
  double rbar_ = 0.0;
  double min_tau_ = 0.0;
};

enum class CirculantVariant { strang, chan };

/// First column of the circulant approximation of a symmetric Toeplitz
/// matrix: Strang copies c_k for k <= n/2 and wraps (for even n the k = n/2
/// entry is taken from the positive side); Chan uses the Frobenius-optimal
/// average ((n-k) c_k + k c_{n-k})/n.
std::vector<double> circulant_first_column(CirculantVariant variant,
                                           std::span<const double> toeplitz_column);

/// DFT eigenvalues of that circulant, in natural bin order (real by symmetry).
std::vector<double> circulant_eigenvalues_1d(CirculantVariant variant,
                                             std::span<const double> toeplitz_column);

/// Circulant comparison preconditioner rbar I + sum_i eta_i I x C_i x I,
/// applied through forward/inverse DFTs. Like the tau preconditioner, only
/// rbar changes between time steps.
class CirculantPreconditioner {
 public:
  CirculantPreconditioner(CirculantVariant variant, std::vector<double> etas,
                          std::vector<FractionalOrder> alphas, std::vector<int> shape,
                          double rbar);

  CirculantVariant variant() const noexcept { return variant_; }
  const std::vector<int>& shape() const noexcept { return shape_; }
  double rbar() const noexcept { return rbar_; }
  std::span<const double> eigenvalues() const noexcept { return lambda_; }

  void set_rbar(double rbar);

  /// DFT, entrywise divide, inverse DFT. Throws if any combined eigenvalue
  /// falls below 1e-14 in magnitude or if the imaginary residue of the result
  /// exceeds 1e-12 relative to the input.
  void apply_inverse(std::span<const double> v, std::span<double> out) const;
  GridField apply_inverse(const GridField& v) const;

 private:
  CirculantVariant variant_;
  std::vector<int> shape_;
  std::vector<double> base_part_;  // sum_i eta_i (circulant eigenvalues) broadcast
  std::vector<double> lambda_;
  double rbar_ = 0.0;
};

}  // namespace rsfd
