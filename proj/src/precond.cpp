#include "rsfd/precond.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fft_backend.hpp"
#include "rsfd/fcd.hpp"
#include "rsfd/structured_ops.hpp"

namespace rsfd {
namespace {

void check_positive_entries(const GridField& diag) {
  for (double v : diag.values)
    if (!(v > 0.0))
      throw std::invalid_argument("coefficient diagonal must be strictly positive");
}

double tridiagonal_symbol(double alpha, double theta) {
  const double sh = std::sin(theta / 2.0);
  return 1.0 + alpha / 6.0 * sh * sh;
}

// Broadcast rbar + sum_i eta_i per_dim[i][j_i] over the row-major tensor.
std::vector<double> broadcast_sum(std::span<const int> shape,
                                  const std::vector<std::vector<double>>& per_dim,
                                  std::span<const double> etas) {
  std::vector<double> out(static_cast<size_t>(shape_total(shape)), 0.0);
  for_each_index(shape, [&](long lin, std::span<const int> idx) {
    double v = 0.0;
    for (size_t i = 0; i < per_dim.size(); ++i) v += etas[i] * per_dim[i][idx[i]];
    out[lin] = v;
  });
  return out;
}

void validate_build_inputs(std::span<const double> etas,
                           std::span<const FractionalOrder> alphas,
                           std::span<const int> shape, double rbar) {
  if (etas.size() != alphas.size() || etas.size() != shape.size() || etas.empty())
    throw std::invalid_argument("preconditioner: etas, alphas and shape must match");
  for (double eta : etas)
    if (!(eta > 0.0)) throw std::invalid_argument("preconditioner: etas must be positive");
  for (int n : shape)
    if (n < 1) throw std::invalid_argument("preconditioner: shape entries must be positive");
  if (!(rbar > 0.0)) throw std::invalid_argument("preconditioner: rbar must be positive");
}

}  // namespace

CoefficientAverage average_coefficient(const GridField& diag, AverageRule rule) {
  if (diag.values.empty())
    throw std::invalid_argument("average_coefficient: empty field");
  check_positive_entries(diag);
  const auto [lo, hi] = std::minmax_element(diag.values.begin(), diag.values.end());
  const double rmin = *lo, rmax = *hi;
  const double rbar =
      rule == AverageRule::arithmetic ? (rmin + rmax) / 2.0 : std::sqrt(rmin * rmax);
  return {rbar, rmin, rmax};
}

std::vector<double> tau_eigenvalues_1d(FractionalOrder alpha, int n) {
  if (n < 1) throw std::invalid_argument("tau_eigenvalues_1d: n must be positive");
  const auto table = fcd2_coefficients(alpha, n - 1);
  std::vector<double> lambda = detail::cosine_series_samples(table.values, n);
  for (int j = 1; j <= n; ++j) {
    const double theta = j * std::numbers::pi / (n + 1);
    lambda[j - 1] *= tridiagonal_symbol(alpha.value(), theta);
  }
  return lambda;
}

std::vector<double> tau_eigenvalues_1d_direct(FractionalOrder alpha, int n) {
  if (n < 1) throw std::invalid_argument("tau_eigenvalues_1d: n must be positive");
  const auto table = fcd2_coefficients(alpha, n - 1);
  std::vector<double> lambda(n);
  for (int j = 1; j <= n; ++j) {
    const double theta = j * std::numbers::pi / (n + 1);
    double sigma = table.values[0];
    for (int k = 1; k < n; ++k) sigma += 2.0 * table.values[k] * std::cos(k * theta);
    lambda[j - 1] = tridiagonal_symbol(alpha.value(), theta) * sigma;
  }
  return lambda;
}

TauPreconditioner::TauPreconditioner(std::vector<double> etas,
                                     std::vector<FractionalOrder> alphas,
                                     std::vector<int> shape, double rbar)
    : shape_(std::move(shape)) {
  validate_build_inputs(etas, alphas, shape_, rbar);
  std::vector<std::vector<double>> per_dim(shape_.size());
  for (size_t i = 0; i < shape_.size(); ++i)
    per_dim[i] = tau_eigenvalues_1d(alphas[i], shape_[i]);
  tau_part_ = broadcast_sum(shape_, per_dim, etas);
  min_tau_ = *std::min_element(tau_part_.begin(), tau_part_.end());
  lambda_.resize(tau_part_.size());
  set_rbar(rbar);
}

void TauPreconditioner::set_rbar(double rbar) {
  if (!(rbar > 0.0 && rbar + min_tau_ > 0.0))
    throw std::invalid_argument("tau preconditioner must stay positive definite");
  rbar_ = rbar;
  for (size_t i = 0; i < tau_part_.size(); ++i) lambda_[i] = rbar + tau_part_[i];
}

void TauPreconditioner::apply_inverse(std::span<const double> v,
                                      std::span<double> out) const {
  const long n = shape_total(shape_);
  if (static_cast<long>(v.size()) != n || static_cast<long>(out.size()) != n)
    throw std::invalid_argument("tau preconditioner: size mismatch");
  multi_dst(shape_, v, out);
  for (long i = 0; i < n; ++i) out[i] /= lambda_[i];
  multi_dst(shape_, out, out);
}

GridField TauPreconditioner::apply_inverse(const GridField& v) const {
  if (v.shape != shape_)
    throw std::invalid_argument("tau preconditioner: field shape mismatch");
  GridField out(shape_);
  apply_inverse(v.values, out.values);
  return out;
}

std::vector<double> circulant_first_column(CirculantVariant variant,
                                           std::span<const double> toeplitz_column) {
  const int n = static_cast<int>(toeplitz_column.size());
  std::vector<double> col(n);
  col[0] = toeplitz_column[0];
  for (int k = 1; k < n; ++k) {
    if (variant == CirculantVariant::strang) {
      col[k] = (2 * k <= n) ? toeplitz_column[k] : toeplitz_column[n - k];
    } else {
      col[k] = ((n - k) * toeplitz_column[k] + k * toeplitz_column[n - k]) / n;
    }
  }
  return col;
}

std::vector<double> circulant_eigenvalues_1d(CirculantVariant variant,
                                             std::span<const double> toeplitz_column) {
  return detail::circulant_eigenvalues(circulant_first_column(variant, toeplitz_column));
}

CirculantPreconditioner::CirculantPreconditioner(CirculantVariant variant,
                                                 std::vector<double> etas,
                                                 std::vector<FractionalOrder> alphas,
                                                 std::vector<int> shape, double rbar)
    : variant_(variant), shape_(std::move(shape)) {
  validate_build_inputs(etas, alphas, shape_, rbar);
  std::vector<std::vector<double>> per_dim(shape_.size());
  for (size_t i = 0; i < shape_.size(); ++i) {
    const auto table = fcd4_coefficients(alphas[i], shape_[i] - 1);
    per_dim[i] = circulant_eigenvalues_1d(variant, table.values);
  }
  base_part_ = broadcast_sum(shape_, per_dim, etas);
  lambda_.resize(base_part_.size());
  set_rbar(rbar);
}

void CirculantPreconditioner::set_rbar(double rbar) {
  if (!(rbar > 0.0))
    throw std::invalid_argument("circulant preconditioner: rbar must be positive");
  rbar_ = rbar;
  for (size_t i = 0; i < base_part_.size(); ++i) lambda_[i] = rbar + base_part_[i];
}

void CirculantPreconditioner::apply_inverse(std::span<const double> v,
                                            std::span<double> out) const {
  const long n = shape_total(shape_);
  if (static_cast<long>(v.size()) != n || static_cast<long>(out.size()) != n)
    throw std::invalid_argument("circulant preconditioner: size mismatch");
  for (double lam : lambda_)
    if (std::abs(lam) < 1e-14)
      throw std::runtime_error("circulant preconditioner is numerically singular");
  const double residue = detail::circulant_solve(shape_, lambda_, v, out);
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (residue > 1e-12 * std::max(scale, 1.0))
    throw std::runtime_error("circulant solve produced a nonreal result");
}

GridField CirculantPreconditioner::apply_inverse(const GridField& v) const {
  if (v.shape != shape_)
    throw std::invalid_argument("circulant preconditioner: field shape mismatch");
  GridField out(shape_);
  apply_inverse(v.values, out.values);
  return out;
}

}  // namespace rsfd
