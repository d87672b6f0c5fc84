#include "rsfd/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rsfd/fcd.hpp"

namespace rsfd::oracle {
namespace {

void check_guard(long order) {
  if (order > kDenseGuard)
    throw std::invalid_argument("dense oracle guarded to order " +
                                std::to_string(kDenseGuard) + ", got " +
                                std::to_string(order));
}

Eigen::MatrixXd identity(long n) { return Eigen::MatrixXd::Identity(n, n); }

}  // namespace

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd toeplitz_dense(std::span<const double> first_column) {
  const long n = static_cast<long>(first_column.size());
  check_guard(n);
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = first_column[std::abs(i - j)];
  return m;
}

Eigen::MatrixXd assemble_T_dense(const KroneckerSumOperator& op) {
  check_guard(op.total());
  const long total = op.total();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(total, total);
  for (int dim = 0; dim < op.dimension(); ++dim) {
    long before = 1, after = 1;
    for (int i = 0; i < dim; ++i) before *= op.shape()[i];
    for (int i = dim + 1; i < op.dimension(); ++i) after *= op.shape()[i];
    const Eigen::MatrixXd block = toeplitz_dense(op.block(dim).first_column());
    out += op.scaling(dim) * kron(kron(identity(before), block), identity(after));
  }
  return out;
}

Eigen::MatrixXd assemble_T_dense_entrywise(const KroneckerSumOperator& op) {
  check_guard(op.total());
  const long total = op.total();
  const auto& shape = op.shape();
  const int d = op.dimension();
  // Decode linear indices once.
  std::vector<std::vector<int>> multi(total, std::vector<int>(d));
  for_each_index(shape, [&](long lin, std::span<const int> idx) {
    std::copy(idx.begin(), idx.end(), multi[lin].begin());
  });
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(total, total);
  for (long row = 0; row < total; ++row) {
    for (long col = 0; col < total; ++col) {
      double v = 0.0;
      for (int dim = 0; dim < d; ++dim) {
        bool same_elsewhere = true;
        for (int i = 0; i < d; ++i)
          if (i != dim && multi[row][i] != multi[col][i]) {
            same_elsewhere = false;
            break;
          }
        if (same_elsewhere) {
          const int offset = std::abs(multi[row][dim] - multi[col][dim]);
          v += op.scaling(dim) * op.block(dim).first_column()[offset];
        }
      }
      out(row, col) = v;
    }
  }
  return out;
}

Eigen::MatrixXd dst_matrix(int n) {
  check_guard(n);
  Eigen::MatrixXd s(n, n);
  const double scale = std::sqrt(2.0 / (n + 1));
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      s(j - 1, k - 1) = scale * std::sin(j * k * std::numbers::pi / (n + 1));
  return s;
}

Eigen::MatrixXd tridiagonal_q(double alpha, int n) {
  check_guard(n);
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    q(i, i) = 1.0 + alpha / 12.0;
    if (i + 1 < n) {
      q(i, i + 1) = -alpha / 24.0;
      q(i + 1, i) = -alpha / 24.0;
    }
  }
  return q;
}

Eigen::MatrixXd assemble_tau_dense(FractionalOrder alpha, int n) {
  check_guard(n);
  const auto table = fcd2_coefficients(alpha, n - 1);
  const Eigen::MatrixXd s = dst_matrix(n);
  Eigen::VectorXd sigma(n);
  for (int j = 1; j <= n; ++j) {
    const double theta = j * std::numbers::pi / (n + 1);
    double acc = table.values[0];
    for (int k = 1; k < n; ++k) acc += 2.0 * table.values[k] * std::cos(k * theta);
    sigma(j - 1) = acc;
  }
  const Eigen::MatrixXd tau = s * sigma.asDiagonal() * s;
  return tridiagonal_q(alpha.value(), n) * tau;
}

Eigen::MatrixXd assemble_ptau_dense(std::span<const double> etas,
                                    std::span<const FractionalOrder> alphas,
                                    std::span<const int> shape, double rbar) {
  const long total = shape_total(shape);
  check_guard(total);
  Eigen::MatrixXd out = rbar * identity(total);
  for (size_t dim = 0; dim < shape.size(); ++dim) {
    long before = 1, after = 1;
    for (size_t i = 0; i < dim; ++i) before *= shape[i];
    for (size_t i = dim + 1; i < shape.size(); ++i) after *= shape[i];
    const Eigen::MatrixXd block = assemble_tau_dense(alphas[dim], shape[dim]);
    out += etas[dim] * kron(kron(identity(before), block), identity(after));
  }
  return out;
}

Eigen::MatrixXd circulant_dense(std::span<const double> first_column) {
  const long n = static_cast<long>(first_column.size());
  check_guard(n);
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = first_column[(i - j + n) % n];
  return m;
}

Eigen::MatrixXd assemble_circulant_sum_dense(CirculantVariant variant,
                                             std::span<const double> etas,
                                             std::span<const FractionalOrder> alphas,
                                             std::span<const int> shape, double rbar) {
  const long total = shape_total(shape);
  check_guard(total);
  Eigen::MatrixXd out = rbar * identity(total);
  for (size_t dim = 0; dim < shape.size(); ++dim) {
    long before = 1, after = 1;
    for (size_t i = 0; i < dim; ++i) before *= shape[i];
    for (size_t i = dim + 1; i < shape.size(); ++i) after *= shape[i];
    const auto table = fcd4_coefficients(alphas[dim], shape[dim] - 1);
    const Eigen::MatrixXd block =
        circulant_dense(circulant_first_column(variant, table.values));
    out += etas[dim] * kron(kron(identity(before), block), identity(after));
  }
  return out;
}

std::vector<double> generalized_spectrum(const Eigen::MatrixXd& a,
                                         const Eigen::MatrixXd& p) {
  if (a.rows() != a.cols() || p.rows() != p.cols() || a.rows() != p.rows())
    throw std::invalid_argument("generalized_spectrum: square matrices of equal order");
  check_guard(a.rows());
  const double asym_a = (a - a.transpose()).cwiseAbs().maxCoeff();
  const double asym_p = (p - p.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, std::max(a.cwiseAbs().maxCoeff(), p.cwiseAbs().maxCoeff()));
  if (asym_a > 1e-12 * scale || asym_p > 1e-12 * scale)
    throw std::invalid_argument("generalized_spectrum: inputs must be symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> psolve(p);
  if (psolve.info() != Eigen::Success)
    throw std::runtime_error("generalized_spectrum: eigensolver failed on P");
  if (psolve.eigenvalues().minCoeff() <= 0.0)
    throw std::invalid_argument("generalized_spectrum: P is not positive definite");
  const Eigen::MatrixXd p_inv_sqrt =
      psolve.eigenvectors() *
      psolve.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      psolve.eigenvectors().transpose();
  Eigen::MatrixXd sym = p_inv_sqrt * a * p_inv_sqrt;
  sym = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> asolve(sym);
  if (asolve.info() != Eigen::Success)
    throw std::runtime_error("generalized_spectrum: eigensolver failed");
  std::vector<double> out(asolve.eigenvalues().data(),
                          asolve.eigenvalues().data() + asolve.eigenvalues().size());
  return out;  // SelfAdjointEigenSolver sorts ascending
}

CoercivityBound lemma_constant(const Domain& domain,
                               std::span<const FractionalOrder> alphas,
                               std::span<const double> diffusion, double dt) {
  double alpha_max = 0.0;
  for (const auto& a : alphas) alpha_max = std::max(alpha_max, a.value());
  double sum = 0.0;
  for (int i = 0; i < domain.dimension(); ++i)
    sum += 1.0 / (2.0 * std::pow(domain.length(i), alphas[i].value()));
  double k_min = diffusion[0];
  for (double k : diffusion) k_min = std::min(k_min, k);
  const double c = (1.0 - 1.0 / std::numbers::pi) *
                   std::pow(2.0 / std::numbers::pi, alpha_max) * sum;
  return {c, c * k_min * dt};
}

double toeplitz_min_eigenvalue_bound(FractionalOrder alpha, int n) {
  return std::pow(2.0 / (std::numbers::pi * (n + 1)), alpha.value()) *
         (1.0 - 1.0 / std::numbers::pi);
}

}  // namespace rsfd::oracle
