#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rsfd/problem.hpp"
#include "support/quadrature.hpp"

using rsfd::FractionalOrder;
using std::numbers::pi;

namespace {

const std::vector<double> kQuartic{0, 0, 0, 0, 1, -4, 6, -4, 1};  // x^4 (1-x)^4

std::vector<double> second_derivative(const std::vector<double>& c) {
  std::vector<double> out;
  for (size_t k = 2; k < c.size(); ++k)
    out.push_back(c[k] * static_cast<double>(k) * (k - 1.0));
  return out;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// Independent oracle: the Riesz derivative through its integral definition in
// second-derivative form, -1/(2 cos(a pi/2) Gamma(2-a)) int |x-e|^{1-a} u''(e) de.
double riesz_quadrature(const std::vector<double>& c, double alpha, double x) {
  const auto d2 = second_derivative(c);
  auto integrand = [&](double e) {
    return poly_eval(d2, e) * std::pow(std::abs(x - e), 1.0 - alpha);
  };
  const double integral = testsupport::tanh_sinh(integrand, 0.0, x, 1e-13) +
                          testsupport::tanh_sinh(integrand, x, 1.0, 1e-13);
  return -integral / (2.0 * std::cos(alpha * pi / 2.0) * std::tgamma(2.0 - alpha));
}

}  // namespace

TEST_CASE("domain and grid validation") {
  CHECK_THROWS_AS(rsfd::Domain({0.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(rsfd::Domain({0.0}, {1.0, 2.0}), std::invalid_argument);

  const auto spec = rsfd::example1({1.5, 1.5});
  const auto grid = rsfd::make_grid(spec, {15, 15}, 8);
  CHECK(grid.h(0) == doctest::Approx(1.0 / 16).epsilon(1e-15));
  CHECK(grid.dt() == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK(grid.eta(0) ==
        doctest::Approx(100.0 * 0.125 / (2.0 * std::pow(1.0 / 16, 1.5))).epsilon(1e-14));
  CHECK(grid.total() == 225);
  CHECK_THROWS_AS(rsfd::make_grid(spec, {0, 4}, 8), std::invalid_argument);
  CHECK_THROWS_AS(rsfd::make_grid(spec, {4, 4}, 0), std::invalid_argument);
}

TEST_CASE("coefficient sampling matches the problem's r") {
  auto spec = rsfd::example1({1.5, 1.5});
  const auto grid = rsfd::make_grid(spec, {7, 7}, 1);
  const auto field = rsfd::sample_coefficient(spec, grid, 0);
  // t = 1/2 is the midpoint of the single step
  const double h = 1.0 / 8;
  for (int j1 = 0; j1 < 7; ++j1)
    for (int j2 = 0; j2 < 7; ++j2) {
      const double x1 = (j1 + 1) * h, x2 = (j2 + 1) * h;
      const double expected = (x1 * x1 + x2 * x2 + std::exp(-0.5)) / 100.0;
      CHECK(field.values[j1 * 7 + j2] == doctest::Approx(expected).epsilon(1e-15));
    }

  spec.coefficient = [](std::span<const double>, double) { return 1.0; };
  const auto ones = rsfd::sample_coefficient(spec, grid, 0);
  for (double v : ones.values) CHECK(v == 1.0);

  spec.coefficient = [](std::span<const double> x, double) { return x[0] - 0.5; };
  CHECK_THROWS_AS(rsfd::sample_coefficient(spec, grid, 0), std::runtime_error);
  CHECK_THROWS_AS(rsfd::sample_coefficient(spec, grid, 5), std::invalid_argument);
}

TEST_CASE("riesz derivative of the quartic matches frozen references") {
  const FractionalOrder alpha(1.5);
  // 40-digit reference values for x^4(1-x)^4
  CHECK(rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 0.3) ==
        doctest::Approx(-0.00097030511732743867382).epsilon(1e-13));
  CHECK(rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 0.5) ==
        doctest::Approx(-0.046292478650072310724).epsilon(1e-13));
}

TEST_CASE("riesz derivative agrees with the integral-definition quadrature") {
  for (double a : {1.2, 1.5, 1.8}) {
    for (double x : {0.15, 0.3, 0.5, 0.77}) {
      const double analytic =
          rsfd::riesz_derivative_of_polynomial(kQuartic, FractionalOrder(a), x);
      const double quad = riesz_quadrature(kQuartic, a, x);
      CHECK(std::abs(analytic - quad) < 1e-8);
    }
  }
}

TEST_CASE("riesz derivative symmetry and regularity") {
  const FractionalOrder alpha(1.5);
  // x^4(1-x)^4 is even about 1/2, so its Riesz derivative is too
  for (double d : {0.1, 0.25, 0.4}) {
    const double left = rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 0.5 - d);
    const double right = rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 0.5 + d);
    CHECK(left == doctest::Approx(right).epsilon(1e-12));
  }
  // finite and smooth right up to the boundary nodes of a 2^6 grid
  const double h = 1.0 / 64;
  double previous = rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, h);
  CHECK(std::isfinite(previous));
  for (int j = 2; j <= 8; ++j) {
    const double value = rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, j * h);
    CHECK(std::isfinite(value));
    CHECK(std::abs(value - previous) < 0.5);
    previous = value;
  }
}

TEST_CASE("riesz derivative rejects bad inputs") {
  const FractionalOrder alpha(1.5);
  CHECK_THROWS_AS(rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(rsfd::riesz_derivative_of_polynomial(kQuartic, alpha, -0.2),
                  std::invalid_argument);
  const std::vector<double> no_vanish{0.0, 1.0, -1.0};  // x - x^2 only vanishes to order 1
  CHECK_THROWS_AS(rsfd::riesz_derivative_of_polynomial(no_vanish, alpha, 0.5),
                  std::invalid_argument);
}

TEST_CASE("manufactured source satisfies the PDE against the quadrature oracle") {
  const auto spec = rsfd::example1({1.5, 1.5});
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> interior(0.05, 0.95);
  std::uniform_real_distribution<double> time(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double x1 = interior(rng), x2 = interior(rng), t = time(rng);
    const std::vector<double> x{x1, x2};
    const double u = spec.exact(x, t);
    const double f = rsfd::manufactured_source(spec, x, t);
    const double scale = 1e4 * std::exp(-t);
    const double riesz1 = scale * riesz_quadrature(kQuartic, 1.5, x1) * poly_eval(kQuartic, x2);
    const double riesz2 = scale * poly_eval(kQuartic, x1) * riesz_quadrature(kQuartic, 1.5, x2);
    const double residual = spec.coefficient(x, t) * (-u) - 100.0 * riesz1 -
                            100.0 * riesz2 - f;
    CHECK(std::abs(residual) < 1e-7);
  }
}

TEST_CASE("source of the zero solution is zero") {
  auto spec = rsfd::example1({1.3, 1.7});
  spec.separable->scale = 0.0;
  const std::vector<double> x{0.3, 0.6};
  CHECK(rsfd::manufactured_source(spec, x, 0.5) == 0.0);
}

TEST_CASE("3D source keeps the separable product structure") {
  const auto spec = rsfd::example2({1.3, 1.5, 1.7});
  const std::vector<double> x{0.5, 0.5, 0.5};
  const double t = 0.25;
  const double scale = 1e8 * std::exp(-t);
  const double p = poly_eval(kQuartic, 0.5);
  const double u = spec.exact(x, t);
  CHECK(u == doctest::Approx(scale * p * p * p).epsilon(1e-14));

  double expected = spec.coefficient(x, t) * (-u);
  const double k_const[3] = {100.0, 85.0, 103.0};
  const double a[3] = {1.3, 1.5, 1.7};
  for (int i = 0; i < 3; ++i)
    expected -= k_const[i] * scale * p * p *
                rsfd::riesz_derivative_of_polynomial(kQuartic, FractionalOrder(a[i]), 0.5);
  CHECK(rsfd::manufactured_source(spec, x, t) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("exact solutions vanish on the boundary") {
  const auto spec = rsfd::example1({1.5, 1.5});
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(spec.exact(std::vector<double>{0.0, s}, 0.3) == 0.0);
    CHECK(spec.exact(std::vector<double>{1.0, s}, 0.3) == 0.0);
    CHECK(spec.exact(std::vector<double>{s, 0.0}, 0.3) == 0.0);
    CHECK(spec.exact(std::vector<double>{s, 1.0}, 0.3) == 0.0);
  }
}

TEST_CASE("discrete L2 norm") {
  const auto spec = rsfd::example1({1.5, 1.5});

  // all-ones field with n = 1 per dimension, h = 1/2
  const auto tiny = rsfd::make_grid(spec, {1, 1}, 1);
  rsfd::GridField ones(std::vector<int>{1, 1});
  ones.values[0] = 1.0;
  CHECK(rsfd::discrete_l2_norm(ones, tiny) == doctest::Approx(0.5).epsilon(1e-15));

  const auto grid = rsfd::make_grid(spec, {9, 11}, 1);
  rsfd::GridField zero(grid.interior());
  CHECK(rsfd::discrete_l2_norm(zero, grid) == 0.0);

  rsfd::GridField random_field(grid.interior());
  std::mt19937_64 rng(5);
  std::normal_distribution<double> dist;
  double sumsq = 0.0;
  for (auto& v : random_field.values) {
    v = dist(rng);
    sumsq += v * v;
  }
  const double expected = std::sqrt(grid.h(0) * grid.h(1)) * std::sqrt(sumsq);
  CHECK(rsfd::discrete_l2_norm(random_field, grid) ==
        doctest::Approx(expected).epsilon(1e-15));

  rsfd::GridField wrong(std::vector<int>{3, 3});
  CHECK_THROWS_AS(rsfd::discrete_l2_norm(wrong, grid), std::invalid_argument);
}

TEST_CASE("example constructors reject wrong dimension counts") {
  CHECK_THROWS_AS(rsfd::example1({1.5}), std::invalid_argument);
  CHECK_THROWS_AS(rsfd::example2({1.5, 1.5}), std::invalid_argument);
  CHECK_THROWS_AS(rsfd::example1({1.5, 2.5}), std::domain_error);
}
