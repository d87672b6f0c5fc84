#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rsfd/oracle.hpp"
#include "rsfd/precond.hpp"

using rsfd::FractionalOrder;
using rsfd::KroneckerSumOperator;
using rsfd::SymmetricToeplitz1D;

namespace {

KroneckerSumOperator stencil_operator(const std::vector<int>& shape,
                                      const std::vector<double>& alphas,
                                      const std::vector<double>& etas) {
  std::vector<SymmetricToeplitz1D> blocks;
  for (size_t i = 0; i < shape.size(); ++i)
    blocks.emplace_back(
        rsfd::fcd4_coefficients(FractionalOrder(alphas[i]), shape[i] - 1).values);
  return KroneckerSumOperator(std::move(blocks), etas);
}

}  // namespace

TEST_CASE("dense toeplitz assembly: classic tridiagonal") {
  const std::vector<double> column{2.0, -1.0, 0.0};
  const auto m = rsfd::oracle::toeplitz_dense(column);
  Eigen::MatrixXd expected(3, 3);
  expected << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  CHECK((m - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("two independent assembly orders agree") {
  const auto op = stencil_operator({3, 4, 2}, {1.2, 1.6, 1.9}, {0.7, 1.3, 2.1});
  const auto kron_route = rsfd::oracle::assemble_T_dense(op);
  const auto entry_route = rsfd::oracle::assemble_T_dense_entrywise(op);
  CHECK((kron_route - entry_route).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((kron_route - kron_route.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("2D assembly has the expected block structure") {
  const auto op = stencil_operator({2, 2}, {1.5, 1.5}, {2.0, 3.0});
  const auto t = rsfd::oracle::assemble_T_dense(op);
  const auto s1 = rsfd::oracle::toeplitz_dense(op.block(0).first_column());
  const auto s2 = rsfd::oracle::toeplitz_dense(op.block(1).first_column());
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::MatrixXd expected =
      2.0 * rsfd::oracle::kron(s1, identity) + 3.0 * rsfd::oracle::kron(identity, s2);
  CHECK((t - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("dense assembly matches the fast operator") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> dist;
  const auto op = stencil_operator({4, 5}, {1.4, 1.7}, {1.0, 2.0});
  const auto dense = rsfd::oracle::assemble_T_dense(op);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd u(op.total());
    for (long i = 0; i < op.total(); ++i) u(i) = dist(rng);
    rsfd::GridField field(op.shape());
    Eigen::VectorXd::Map(field.values.data(), op.total()) = u;
    const auto fast = op.apply(field);
    const Eigen::VectorXd expected = dense * u;
    double err = 0.0;
    for (long i = 0; i < op.total(); ++i)
      err = std::max(err, std::abs(fast.values[i] - expected(i)));
    CHECK(err < 1e-12 * expected.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("tridiagonal factor becomes the identity at formal order zero") {
  const auto q = rsfd::oracle::tridiagonal_q(0.0, 5);
  CHECK((q - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dense sine-transform block: symmetry and eigenvalues") {
  for (int n : {4, 8}) {
    const FractionalOrder alpha(1.5);
    const auto p = rsfd::oracle::assemble_tau_dense(alpha, n);
    CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (p + p.transpose()));
    auto expected = rsfd::tau_eigenvalues_1d(alpha, n);
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < n; ++i)
      CHECK(solver.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-11));
  }
}

TEST_CASE("natural tau approximation equals Toeplitz minus its Hankel correction") {
  // Independent route: tau(S2) sampled by DST^T diag(sigma) DST must coincide
  // with S2 - H, H_{ij} = g_{i+j} + g_{2(n+1)-i-j} (1-based, zero out of range).
  const int n = 8;
  const FractionalOrder alpha(1.5);
  const auto table = rsfd::fcd2_coefficients(alpha, n - 1);
  auto g = [&](long k) { return (k >= 1 && k < n) ? table.values[k] : 0.0; };

  const auto q_inv_p = rsfd::oracle::tridiagonal_q(alpha.value(), n).inverse() *
                       rsfd::oracle::assemble_tau_dense(alpha, n);
  const auto s2 = rsfd::oracle::toeplitz_dense(table.values);
  Eigen::MatrixXd hankel(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      hankel(i - 1, j - 1) = g(i + j) + g(2 * (n + 1) - i - j);
  CHECK((q_inv_p - (s2 - hankel)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generalized spectrum of a matrix against itself is one") {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd base(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) base(i, j) = dist(rng);
  const Eigen::MatrixXd spd =
      base * base.transpose() + 6.0 * Eigen::MatrixXd::Identity(6, 6);
  const auto spectrum = rsfd::oracle::generalized_spectrum(spd, spd);
  for (double v : spectrum) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  const Eigen::MatrixXd indefinite =
      base * base.transpose() - 100.0 * Eigen::MatrixXd::Identity(6, 6);
  CHECK_THROWS_AS(rsfd::oracle::generalized_spectrum(spd, indefinite),
                  std::invalid_argument);
}

TEST_CASE("coercivity constant on the unit square") {
  const rsfd::Domain domain({0.0, 0.0}, {1.0, 1.0});
  const std::vector<FractionalOrder> alphas{FractionalOrder(1.5), FractionalOrder(1.5)};
  const std::vector<double> diffusion{100.0, 100.0};
  const auto bound = rsfd::oracle::lemma_constant(domain, alphas, diffusion, 0.125);
  CHECK(bound.constant == doctest::Approx(0.34626387125294148168).epsilon(1e-14));
  CHECK(bound.bound == doctest::Approx(bound.constant * 100.0 * 0.125).epsilon(1e-14));
}

TEST_CASE("smallest stencil eigenvalue respects the closed-form bound") {
  for (double a : {1.1, 1.5, 1.9}) {
    for (int n : {4, 8, 16, 32}) {
      const FractionalOrder alpha(a);
      const auto dense = rsfd::oracle::toeplitz_dense(
          rsfd::fcd4_coefficients(alpha, n - 1).values);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
      CHECK(solver.eigenvalues()(0) >=
            rsfd::oracle::toeplitz_min_eigenvalue_bound(alpha, n));
    }
  }
}

TEST_CASE("quadratic form of T dominates the coercivity bound") {
  const std::vector<double> alphas{1.5, 1.5};
  const rsfd::Domain domain({0.0, 0.0}, {1.0, 1.0});
  const std::vector<FractionalOrder> orders{FractionalOrder(1.5), FractionalOrder(1.5)};
  const std::vector<double> diffusion{100.0, 100.0};
  const double dt = 1.0 / 8;
  const int n = 8;
  const double h = 1.0 / (n + 1);
  const std::vector<double> etas{100.0 * dt / (2 * std::pow(h, 1.5)),
                                 100.0 * dt / (2 * std::pow(h, 1.5))};
  const auto op = stencil_operator({n, n}, alphas, etas);
  const auto bound = rsfd::oracle::lemma_constant(domain, orders, diffusion, dt);

  std::mt19937_64 rng(12);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 50; ++trial) {
    rsfd::GridField u(op.shape());
    for (auto& v : u.values) v = dist(rng);
    const auto tu = op.apply(u);
    double quad = 0.0, norm2 = 0.0;
    for (long i = 0; i < op.total(); ++i) {
      quad += u.values[i] * tu.values[i];
      norm2 += u.values[i] * u.values[i];
    }
    // discrete-norm form: h1 h2 u^T T u >= bound * h1 h2 ||u||_2^2
    CHECK(quad >= bound.bound * norm2);
  }
}

TEST_CASE("dense assemblies respect the size guard") {
  std::vector<double> huge(5000, 0.0);
  huge[0] = 1.0;
  CHECK_THROWS_AS(rsfd::oracle::toeplitz_dense(huge), std::invalid_argument);
}
