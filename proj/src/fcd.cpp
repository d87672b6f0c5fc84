#include "rsfd/fcd.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsfd {
namespace {

struct SignedLogGamma {
  double log_abs;
  int sign;
};

// log|Gamma(x)| with explicit sign. For x <= 0 both come from the reflection
// formula Gamma(x) Gamma(1-x) = pi / sin(pi x); since Gamma(1-x) > 0 there,
// the sign of Gamma(x) is the sign of sin(pi x).
SignedLogGamma signed_log_gamma(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  const double s = std::sin(std::numbers::pi * x);
  if (s == 0.0) throw std::domain_error("gamma pole at " + std::to_string(x));
  return {std::log(std::numbers::pi / std::abs(s)) - std::lgamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

double fourth_order_bracket(double alpha, double k) {
  return 1.0 + alpha * (alpha + 1.0) * (alpha + 2.0) /
                   (6.0 * (alpha - 2.0 * k + 2.0) * (alpha + 2.0 * k + 2.0));
}

void check_truncation(int truncation) {
  if (truncation < 0)
    throw std::invalid_argument("coefficient truncation must be nonnegative");
}

// ghat_0 = Gamma(a+1)/Gamma(a/2+1)^2, then
// ghat_{k+1} = ghat_k (k - a/2)/(k + 1 + a/2).
std::vector<double> second_order_table(double alpha, int truncation) {
  std::vector<double> g(static_cast<size_t>(truncation) + 1);
  g[0] = std::exp(std::lgamma(alpha + 1.0) - 2.0 * std::lgamma(alpha / 2.0 + 1.0));
  for (int k = 0; k < truncation; ++k)
    g[k + 1] = g[k] * (k - alpha / 2.0) / (k + 1.0 + alpha / 2.0);
  return g;
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : value_(alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::domain_error("fractional order must lie strictly inside (1, 2), got " +
                            std::to_string(alpha));
}

CoefficientTable fcd2_coefficients(FractionalOrder alpha, int truncation) {
  check_truncation(truncation);
  return {alpha, StencilOrder::second, second_order_table(alpha.value(), truncation)};
}

CoefficientTable fcd4_coefficients(FractionalOrder alpha, int truncation) {
  check_truncation(truncation);
  const double a = alpha.value();
  std::vector<double> s = second_order_table(a, truncation);
  for (int k = 0; k <= truncation; ++k) s[k] *= fourth_order_bracket(a, k);
  return {alpha, StencilOrder::fourth, std::move(s)};
}

double fcd2_coefficient(FractionalOrder alpha, long k) {
  const double a = alpha.value();
  const double kd = static_cast<double>(k);
  const auto num = signed_log_gamma(a + 1.0);
  const auto den1 = signed_log_gamma(a / 2.0 - kd + 1.0);
  const auto den2 = signed_log_gamma(a / 2.0 + kd + 1.0);
  const int parity = (k % 2 == 0) ? 1 : -1;
  const double magnitude = std::exp(num.log_abs - den1.log_abs - den2.log_abs);
  return parity * num.sign * den1.sign * den2.sign * magnitude;
}

double fcd4_coefficient(FractionalOrder alpha, long k) {
  return fcd2_coefficient(alpha, k) *
         fourth_order_bracket(alpha.value(), static_cast<double>(k));
}

double fcd2_symbol(FractionalOrder alpha, double theta) {
  const double sh = std::sin(theta / 2.0);
  return std::pow(4.0 * sh * sh, alpha.value() / 2.0);
}

double fcd4_symbol(FractionalOrder alpha, double theta) {
  const double sh = std::sin(theta / 2.0);
  return (1.0 + alpha.value() / 6.0 * sh * sh) * fcd2_symbol(alpha, theta);
}

}  // namespace rsfd
