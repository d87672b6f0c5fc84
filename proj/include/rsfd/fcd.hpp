#pragma once

#include <vector>

namespace rsfd {

/// Fractional derivative order restricted to the open interval (1, 2).
///
/// The endpoints are rejected at construction: alpha = 2 runs into a
/// gamma-function pole in the coefficient formulas, and alpha = 1 loses the
/// diffusive character of the operator.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class StencilOrder { fourth, second };

/// One-sided table s_0, ..., s_K of fractional centered difference weights.
/// Only k >= 0 is stored; negative indices follow from s_{-k} = s_k.
struct CoefficientTable {
  FractionalOrder alpha;
  StencilOrder order;
  std::vector<double> values;

  int truncation() const noexcept { return static_cast<int>(values.size()) - 1; }
};

/// Weights of the fourth-order fractional centered difference,
///
///   s_k = (-1)^k Gamma(a+1) / (Gamma(a/2-k+1) Gamma(a/2+k+1))
///         * [1 + a(a+1)(a+2) / (6(a-2k+2)(a+2k+2))],
///
/// computed with the ratio recurrence of the gamma quotient after the k = 0
/// term. `truncation` is the largest stored index K; the table never
/// truncates silently, callers ask for exactly what they need.
CoefficientTable fcd4_coefficients(FractionalOrder alpha, int truncation);

/// Weights of the second-order fractional centered difference (the gamma
/// quotient above without the bracket factor).
CoefficientTable fcd2_coefficients(FractionalOrder alpha, int truncation);

// Direct log-gamma evaluation of a single weight. Accepts any integer index
// (the formula is even in k) and serves as the independent cross-check of
// the recurrence used by the table builders.
double fcd4_coefficient(FractionalOrder alpha, long k);
double fcd2_coefficient(FractionalOrder alpha, long k);

/// Generating-function symbol of the fourth-order weights,
/// (1 + (a/6) sin^2(theta/2)) (4 sin^2(theta/2))^{a/2}.
double fcd4_symbol(FractionalOrder alpha, double theta);

/// Symbol of the second-order weights, (4 sin^2(theta/2))^{a/2}.
double fcd2_symbol(FractionalOrder alpha, double theta);

}  // namespace rsfd
