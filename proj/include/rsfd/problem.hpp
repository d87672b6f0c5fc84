#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rsfd/grid.hpp"

namespace rsfd {

using SpaceTimeFn = std::function<double(std::span<const double>, double)>;
using SpaceFn = std::function<double(std::span<const double>)>;

/// Exact solutions of the separable form
///   u(x, t) = scale * e^{-t} * prod_i P_i(s_i),
/// with each P_i a polynomial in the affine coordinate s_i = (x_i - lower_i)/L_i
/// that vanishes to order >= 2 at both endpoints. Sources for such solutions
/// are computed analytically, one Riemann-Liouville term per monomial.
struct SeparableExact {
  double scale = 1.0;
  std::vector<std::vector<double>> factors;  // P_i given by coefficients c_0..c_p
};

/// Initial-boundary value problem
///   r(x,t) u_t = sum_i K_i d^{alpha_i} u / d|x_i|^{alpha_i} + f(x,t)
/// on a box, with homogeneous Dirichlet data and u(x,0) = psi(x).
struct ProblemSpec {
  Domain domain;
  std::vector<FractionalOrder> alphas;
  std::vector<double> diffusion;
  double final_time = 1.0;
  SpaceTimeFn coefficient;  // r(x, t), strictly positive
  SpaceTimeFn source;       // f(x, t)
  SpaceFn initial;          // psi(x)
  SpaceTimeFn exact;        // empty when no closed-form solution is known
  std::optional<SeparableExact> separable;

  int dimension() const noexcept { return domain.dimension(); }
  bool has_exact() const noexcept { return static_cast<bool>(exact); }
};

GridSpec make_grid(const ProblemSpec& spec, std::vector<int> interior, int time_steps);

/// Diagonal of the coefficient matrix at the half step t_{m+1/2}: entry at node
/// x_J equals r(x_J, (m + 1/2) dt). Throws if any sampled value is nonpositive.
GridField sample_coefficient(const ProblemSpec& spec, const GridSpec& grid, int step);

GridField sample_source(const ProblemSpec& spec, const GridSpec& grid, double time);
GridField sample_initial(const ProblemSpec& spec, const GridSpec& grid);
GridField sample_exact(const ProblemSpec& spec, const GridSpec& grid, double time);

/// Riesz fractional derivative of a polynomial on [0, 1], evaluated through
/// the left/right Riemann-Liouville split
///   -1/(2 cos(a pi/2)) [ sum_k c_k Gamma(k+1)/Gamma(k+1-a) x^{k-a} + mirror ],
/// where the mirror term re-expands the polynomial in powers of (1 - x). The
/// polynomial must vanish to order >= 2 at both endpoints so the classical RL
/// derivatives exist and no boundary terms appear.
double riesz_derivative_of_polynomial(std::span<const double> coeffs,
                                      FractionalOrder alpha, double x);

/// Source term f = r u_t - sum_i K_i Riesz_i(u) for a problem whose exact
/// solution is separable (requires spec.separable). With the e^{-t} ansatz,
/// u_t = -u; each Riesz term is exact through the polynomial formula above.
double manufactured_source(const ProblemSpec& spec, std::span<const double> x, double t);

/// ||u|| = sqrt(prod_i h_i * sum_J u_J^2).
double discrete_l2_norm(const GridField& field, const GridSpec& grid);

/// Wires exact/initial/source functions around a separable exact solution.
ProblemSpec make_manufactured(Domain domain, std::vector<FractionalOrder> alphas,
                              std::vector<double> diffusion, double final_time,
                              SeparableExact exact, SpaceTimeFn coefficient);

/// 2D test problem on (0,1)^2: K = (100, 100), T = 1,
/// u = 1e4 e^{-t} x1^4(1-x1)^4 x2^4(1-x2)^4, r = (x1^2 + x2^2 + e^{-t})/100.
ProblemSpec example1(std::vector<double> alphas);

/// 3D test problem on (0,1)^3: K = (100, 85, 103), T = 1,
/// u = 1e8 e^{-t} prod_i xi^4(1-xi)^4, r = (x1^2 + x2^2 + x3^2 + e^{-t})/100.
ProblemSpec example2(std::vector<double> alphas);

}  // namespace rsfd
