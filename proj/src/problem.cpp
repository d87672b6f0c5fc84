#include "rsfd/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rsfd {
namespace {

std::vector<FractionalOrder> to_orders(const std::vector<double>& alphas) {
  std::vector<FractionalOrder> out;
  out.reserve(alphas.size());
  for (double a : alphas) out.emplace_back(a);
  return out;
}

double poly_eval(std::span<const double> c, double x) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

// Exact binomial coefficients; fine in double for the polynomial degrees
// used here (well below the 2^53 integer limit).
double binomial(int k, int j) {
  double v = 1.0;
  for (int i = 1; i <= j; ++i) v = v * (k - j + i) / i;
  return v;
}

void check_vanishing_ends(std::span<const double> c) {
  double scale = 0.0;
  for (double ck : c) scale = std::max(scale, std::abs(ck));
  if (scale == 0.0) return;
  double at1 = 0.0, d_at1 = 0.0;
  for (size_t k = 0; k < c.size(); ++k) {
    at1 += c[k];
    d_at1 += static_cast<double>(k) * c[k];
  }
  const bool ok_left = c.size() > 2 && std::abs(c[0]) <= 1e-14 * scale &&
                       std::abs(c[1]) <= 1e-14 * scale;
  const bool ok_right =
      std::abs(at1) <= 1e-12 * scale && std::abs(d_at1) <= 1e-12 * scale * c.size();
  if (!ok_left || !ok_right)
    throw std::invalid_argument(
        "riesz derivative: polynomial must vanish to order >= 2 at both endpoints");
}

// Left Riemann-Liouville derivative of the polynomial at x, term by term:
// D^a x^k = Gamma(k+1)/Gamma(k+1-a) x^{k-a}.
double left_rl_polynomial(std::span<const double> c, double alpha, double x) {
  double acc = 0.0;
  for (size_t k = 2; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    const double kd = static_cast<double>(k);
    acc += c[k] * std::exp(std::lgamma(kd + 1.0) - std::lgamma(kd + 1.0 - alpha)) *
           std::pow(x, kd - alpha);
  }
  return acc;
}

struct ManufacturedData {
  Domain domain;
  std::vector<FractionalOrder> alphas;
  std::vector<double> diffusion;
  SeparableExact exact;
  SpaceTimeFn coefficient;
};

double exact_value(const ManufacturedData& d, std::span<const double> x, double t) {
  double v = d.exact.scale * std::exp(-t);
  for (int i = 0; i < d.domain.dimension(); ++i) {
    const double s = (x[i] - d.domain.lower[i]) / d.domain.length(i);
    v *= poly_eval(d.exact.factors[i], s);
  }
  return v;
}

double source_value(const ManufacturedData& d, std::span<const double> x, double t) {
  const int dim = d.domain.dimension();
  const double decay = d.exact.scale * std::exp(-t);
  std::vector<double> factor(dim), local(dim);
  for (int i = 0; i < dim; ++i) {
    local[i] = (x[i] - d.domain.lower[i]) / d.domain.length(i);
    factor[i] = poly_eval(d.exact.factors[i], local[i]);
  }
  double u = decay;
  for (int i = 0; i < dim; ++i) u *= factor[i];
  // f = r u_t - sum_i K_i Riesz_i(u), and u_t = -u for the e^{-t} ansatz.
  double f = -d.coefficient(x, t) * u;
  for (int i = 0; i < dim; ++i) {
    double term = decay * std::pow(d.domain.length(i), -d.alphas[i].value()) *
                  riesz_derivative_of_polynomial(d.exact.factors[i], d.alphas[i], local[i]);
    for (int j = 0; j < dim; ++j)
      if (j != i) term *= factor[j];
    f -= d.diffusion[i] * term;
  }
  return f;
}

}  // namespace

GridSpec make_grid(const ProblemSpec& spec, std::vector<int> interior, int time_steps) {
  return GridSpec(spec.domain, spec.alphas, spec.diffusion, spec.final_time,
                  std::move(interior), time_steps);
}

GridField sample_coefficient(const ProblemSpec& spec, const GridSpec& grid, int step) {
  if (step < 0 || step >= grid.time_steps())
    throw std::invalid_argument("sample_coefficient: step out of range");
  const double t = grid.midpoint_time(step);
  GridField field(grid.interior());
  const int d = grid.dimension();
  std::vector<double> x(d);
  for_each_index(field.shape, [&](long lin, std::span<const int> idx) {
    for (int i = 0; i < d; ++i) x[i] = grid.node(i, idx[i]);
    const double r = spec.coefficient(x, t);
    if (!(r > 0.0))
      throw std::runtime_error("coefficient r must be positive, got " + std::to_string(r) +
                               " at t = " + std::to_string(t));
    field.values[lin] = r;
  });
  return field;
}

GridField sample_source(const ProblemSpec& spec, const GridSpec& grid, double time) {
  GridField field(grid.interior());
  const int d = grid.dimension();
  std::vector<double> x(d);
  for_each_index(field.shape, [&](long lin, std::span<const int> idx) {
    for (int i = 0; i < d; ++i) x[i] = grid.node(i, idx[i]);
    field.values[lin] = spec.source(x, time);
  });
  return field;
}

GridField sample_initial(const ProblemSpec& spec, const GridSpec& grid) {
  GridField field(grid.interior());
  const int d = grid.dimension();
  std::vector<double> x(d);
  for_each_index(field.shape, [&](long lin, std::span<const int> idx) {
    for (int i = 0; i < d; ++i) x[i] = grid.node(i, idx[i]);
    field.values[lin] = spec.initial(x);
  });
  return field;
}

GridField sample_exact(const ProblemSpec& spec, const GridSpec& grid, double time) {
  if (!spec.has_exact())
    throw std::invalid_argument("sample_exact: problem has no exact solution");
  GridField field(grid.interior());
  const int d = grid.dimension();
  std::vector<double> x(d);
  for_each_index(field.shape, [&](long lin, std::span<const int> idx) {
    for (int i = 0; i < d; ++i) x[i] = grid.node(i, idx[i]);
    field.values[lin] = spec.exact(x, time);
  });
  return field;
}

double riesz_derivative_of_polynomial(std::span<const double> coeffs,
                                      FractionalOrder alpha, double x) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument("riesz derivative: x must lie in (0, 1)");
  check_vanishing_ends(coeffs);
  const double a = alpha.value();
  const int p = static_cast<int>(coeffs.size()) - 1;

  const double left = left_rl_polynomial(coeffs, a, x);

  // Mirror: u(1 - y) = sum_j chat_j y^j with chat_j = (-1)^j sum_{k>=j} c_k C(k, j).
  std::vector<double> mirrored(coeffs.size(), 0.0);
  for (int j = 0; j <= p; ++j) {
    double cj = 0.0;
    for (int k = j; k <= p; ++k) cj += coeffs[k] * binomial(k, j);
    mirrored[j] = (j % 2 == 0 ? cj : -cj);
  }
  const double right = left_rl_polynomial(mirrored, a, 1.0 - x);

  return -(left + right) / (2.0 * std::cos(a * std::numbers::pi / 2.0));
}

double manufactured_source(const ProblemSpec& spec, std::span<const double> x, double t) {
  if (!spec.separable)
    throw std::invalid_argument("manufactured_source: problem has no separable exact solution");
  ManufacturedData data{spec.domain, spec.alphas, spec.diffusion, *spec.separable,
                        spec.coefficient};
  return source_value(data, x, t);
}

double discrete_l2_norm(const GridField& field, const GridSpec& grid) {
  if (field.shape != grid.interior())
    throw std::invalid_argument("discrete_l2_norm: field shape does not match grid");
  double cell = 1.0;
  for (int i = 0; i < grid.dimension(); ++i) cell *= grid.h(i);
  double sum = 0.0;
  for (double v : field.values) sum += v * v;
  return std::sqrt(cell * sum);
}

ProblemSpec make_manufactured(Domain domain, std::vector<FractionalOrder> alphas,
                              std::vector<double> diffusion, double final_time,
                              SeparableExact exact, SpaceTimeFn coefficient) {
  const int d = domain.dimension();
  if (static_cast<int>(exact.factors.size()) != d)
    throw std::invalid_argument("manufactured problem: one polynomial factor per dimension");
  for (const auto& f : exact.factors) check_vanishing_ends(f);

  ManufacturedData data{domain, alphas, diffusion, exact, coefficient};
  ProblemSpec spec{std::move(domain), std::move(alphas), std::move(diffusion),
                   final_time,        coefficient,       {},
                   {},                {},                std::move(exact)};
  spec.exact = [data](std::span<const double> x, double t) { return exact_value(data, x, t); };
  spec.initial = [data](std::span<const double> x) { return exact_value(data, x, 0.0); };
  spec.source = [data](std::span<const double> x, double t) { return source_value(data, x, t); };
  return spec;
}

ProblemSpec example1(std::vector<double> alphas) {
  if (alphas.size() != 2) throw std::invalid_argument("example1 is two-dimensional");
  // x^4 (1-x)^4 expanded.
  const std::vector<double> quartic{0, 0, 0, 0, 1, -4, 6, -4, 1};
  SeparableExact exact{1e4, {quartic, quartic}};
  auto r = [](std::span<const double> x, double t) {
    return (x[0] * x[0] + x[1] * x[1] + std::exp(-t)) / 100.0;
  };
  return make_manufactured(Domain({0.0, 0.0}, {1.0, 1.0}), to_orders(alphas),
                           {100.0, 100.0}, 1.0, std::move(exact), r);
}

ProblemSpec example2(std::vector<double> alphas) {
  if (alphas.size() != 3) throw std::invalid_argument("example2 is three-dimensional");
  const std::vector<double> quartic{0, 0, 0, 0, 1, -4, 6, -4, 1};
  SeparableExact exact{1e8, {quartic, quartic, quartic}};
  auto r = [](std::span<const double> x, double t) {
    return (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + std::exp(-t)) / 100.0;
  };
  return make_manufactured(Domain({0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}), to_orders(alphas),
                           {100.0, 85.0, 103.0}, 1.0, std::move(exact), r);
}

}  // namespace rsfd
