#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rsfd/fcd.hpp"
#include "support/quadrature.hpp"

using rsfd::FractionalOrder;
using std::numbers::pi;

namespace {

// Fourier coefficient of an even symbol: (1/pi) int_0^pi f(theta) cos(k theta).
template <typename Symbol>
double fourier_coefficient(Symbol&& symbol, int k) {
  return testsupport::tanh_sinh(
             [&](double theta) { return symbol(theta) * std::cos(k * theta); }, 0.0, pi,
             1e-13) /
         pi;
}

double partial_sum(const rsfd::CoefficientTable& table) {
  double s = table.values[0];
  for (size_t k = 1; k < table.values.size(); ++k) s += 2.0 * table.values[k];
  return s;
}

}  // namespace

TEST_CASE("fractional order accepts only the open interval (1,2)") {
  CHECK_THROWS_AS(FractionalOrder(1.0), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(2.0), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(0.5), std::domain_error);
  CHECK_THROWS_AS(FractionalOrder(2.5), std::domain_error);
  CHECK(FractionalOrder(1.5).value() == 1.5);
  CHECK_THROWS_AS(rsfd::fcd4_coefficients(FractionalOrder(1.5), -1),
                  std::invalid_argument);
}

TEST_CASE("leading coefficients match the closed gamma form") {
  // Gamma(2.5)/Gamma(1.75)^2 and its fourth-order bracket, evaluated in
  // 40-digit arithmetic and frozen here.
  const double ghat0 = 1.57378746535479496806;
  const double s0 = 1.8548209413110083552;
  const auto g = rsfd::fcd2_coefficients(FractionalOrder(1.5), 0);
  const auto s = rsfd::fcd4_coefficients(FractionalOrder(1.5), 0);
  CHECK(g.values.size() == 1);
  CHECK(g.values[0] == doctest::Approx(ghat0).epsilon(1e-15));
  CHECK(s.values[0] == doctest::Approx(s0).epsilon(1e-15));
}

TEST_CASE("coefficients reproduce the Fourier integrals of their symbols") {
  const FractionalOrder alpha(1.5);
  const auto s4 = rsfd::fcd4_coefficients(alpha, 8);
  const auto s2 = rsfd::fcd2_coefficients(alpha, 8);
  for (int k = 0; k <= 8; ++k) {
    const double q4 = fourier_coefficient(
        [&](double theta) { return rsfd::fcd4_symbol(alpha, theta); }, k);
    const double q2 = fourier_coefficient(
        [&](double theta) { return rsfd::fcd2_symbol(alpha, theta); }, k);
    CHECK(std::abs(s4.values[k] - q4) < 1e-10);
    CHECK(std::abs(s2.values[k] - q2) < 1e-10);
  }
}

TEST_CASE("recurrence path agrees with direct log-gamma evaluation") {
  for (double a : {1.05, 1.3, 1.5, 1.6516, 1.8, 1.95}) {
    const FractionalOrder alpha(a);
    const auto s4 = rsfd::fcd4_coefficients(alpha, 200);
    const auto s2 = rsfd::fcd2_coefficients(alpha, 200);
    for (int k = 0; k <= 200; ++k) {
      CHECK(s4.values[k] ==
            doctest::Approx(rsfd::fcd4_coefficient(alpha, k)).epsilon(1e-13));
      CHECK(s2.values[k] ==
            doctest::Approx(rsfd::fcd2_coefficient(alpha, k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("the closed form is even in k") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(1.0 + 1e-6, 2.0 - 1e-6);
  for (int trial = 0; trial < 20; ++trial) {
    const FractionalOrder alpha(dist(rng));
    for (long k = 1; k <= 10; ++k) {
      const double plus = rsfd::fcd4_coefficient(alpha, k);
      const double minus = rsfd::fcd4_coefficient(alpha, -k);
      CHECK(plus == doctest::Approx(minus).epsilon(1e-14));
    }
  }
}

TEST_CASE("sign pattern of the fourth-order weights") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(1.0 + 1e-4, 2.0 - 1e-4);
  const double flip = 1.6516;  // sign change of s_2; tested outside a 1e-3 band
  for (int trial = 0; trial < 50; ++trial) {
    const double a = dist(rng);
    const auto table = rsfd::fcd4_coefficients(FractionalOrder(a), 50);
    CHECK(table.values[0] > 0.0);
    CHECK(table.values[1] < 0.0);
    for (int k = 3; k <= 50; ++k) CHECK(table.values[k] <= 0.0);
    if (a < flip - 1e-3) CHECK(table.values[2] <= 0.0);
    if (a > flip + 1e-3) CHECK(table.values[2] >= 0.0);
  }
  CHECK(rsfd::fcd4_coefficients(FractionalOrder(1.2), 5).values[2] <= 0.0);
  CHECK(rsfd::fcd4_coefficients(FractionalOrder(1.8), 5).values[2] >= 0.0);
}

TEST_CASE("partial sums decay to the zero total sum from above") {
  const FractionalOrder alpha(1.5);
  const double p10 = partial_sum(rsfd::fcd4_coefficients(alpha, 10));
  const double p30 = partial_sum(rsfd::fcd4_coefficients(alpha, 30));
  CHECK(p30 >= 0.0);
  CHECK(p30 < p10);

  for (double a : {1.1, 1.5, 1.9}) {
    const FractionalOrder order(a);
    double previous = std::numeric_limits<double>::infinity();
    for (int truncation : {100, 1000, 10000}) {
      const double p = partial_sum(rsfd::fcd4_coefficients(order, truncation));
      CHECK(p >= 0.0);
      CHECK(p < previous);
      previous = p;
    }
  }
}

TEST_CASE("truncated Fourier series converges pointwise to the symbol") {
  const FractionalOrder alpha(1.4);
  const auto table = rsfd::fcd4_coefficients(alpha, 10000);
  for (int i = 0; i < 32; ++i) {
    const double theta = -pi + (2.0 * pi) * (i + 0.5) / 32.0;
    double sum = table.values[0];
    for (size_t k = 1; k < table.values.size(); ++k)
      sum += 2.0 * table.values[k] * std::cos(k * theta);
    CHECK(sum == doctest::Approx(rsfd::fcd4_symbol(alpha, theta)).epsilon(1e-6));
  }
}

TEST_CASE("symbol values and lower bound") {
  const FractionalOrder a15(1.5);
  CHECK(rsfd::fcd4_symbol(a15, 0.0) == 0.0);
  CHECK(rsfd::fcd4_symbol(a15, pi) ==
        doctest::Approx(1.25 * std::pow(4.0, 0.75)).epsilon(1e-15));
  CHECK(rsfd::fcd2_symbol(a15, 0.0) == 0.0);

  const FractionalOrder a13(1.3);
  CHECK(rsfd::fcd4_symbol(a13, 1.0) >= std::pow(2.0 / pi, 1.3));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> theta_dist(-pi, pi);
  for (int i = 0; i < 200; ++i) {
    const double theta = theta_dist(rng);
    CHECK(rsfd::fcd4_symbol(a13, theta) >=
          std::pow(2.0 / pi, 1.3) * std::pow(std::abs(theta), 1.3) - 1e-14);
  }

  // limit check: the second-order symbol at pi tends to 4 as alpha -> 2
  CHECK(rsfd::fcd2_symbol(FractionalOrder(2.0 - 1e-6), pi) ==
        doctest::Approx(4.0).epsilon(1e-5));

  // algebraic identity between the two symbols
  const double theta = pi / 2.0;
  const double q = 1.0 + 1.5 / 6.0 * std::pow(std::sin(theta / 2.0), 2);
  CHECK(rsfd::fcd2_symbol(a15, theta) ==
        doctest::Approx(rsfd::fcd4_symbol(a15, theta) / q).epsilon(1e-15));
}

TEST_CASE("second-order weights are negative after the head") {
  for (double a : {1.1, 1.5, 1.9}) {
    const auto table = rsfd::fcd2_coefficients(FractionalOrder(a), 40);
    CHECK(table.values[0] > 0.0);
    for (int k = 1; k <= 40; ++k) CHECK(table.values[k] < 0.0);
  }
}
