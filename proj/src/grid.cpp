#include "rsfd/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace rsfd {

Domain::Domain(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("domain bounds must be nonempty and of equal length");
  for (size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] < upper[i]))
      throw std::invalid_argument("domain requires lower < upper in every dimension");
}

GridSpec::GridSpec(const Domain& domain, std::span<const FractionalOrder> alphas,
                   std::span<const double> diffusion, double final_time,
                   std::vector<int> interior, int time_steps)
    : lower_(domain.lower), interior_(std::move(interior)), time_steps_(time_steps) {
  const int d = domain.dimension();
  if (static_cast<int>(interior_.size()) != d ||
      static_cast<int>(alphas.size()) != d || static_cast<int>(diffusion.size()) != d)
    throw std::invalid_argument("grid: dimension mismatch between domain, orders and sizes");
  if (time_steps_ < 1) throw std::invalid_argument("grid: need at least one time step");
  if (!(final_time > 0.0)) throw std::invalid_argument("grid: final time must be positive");
  h_.resize(d);
  eta_.resize(d);
  dt_ = final_time / time_steps_;
  for (int i = 0; i < d; ++i) {
    if (interior_[i] < 1) throw std::invalid_argument("grid: interior counts must be positive");
    if (!(diffusion[i] > 0.0))
      throw std::invalid_argument("grid: diffusion constants must be positive");
    h_[i] = domain.length(i) / (interior_[i] + 1);
    eta_[i] = diffusion[i] * dt_ / (2.0 * std::pow(h_[i], alphas[i].value()));
  }
}

long GridSpec::total() const noexcept {
  return shape_total(interior_);
}

GridField::GridField(std::vector<int> shape_in) : shape(std::move(shape_in)) {
  values.assign(static_cast<size_t>(shape_total(shape)), 0.0);
}

long shape_total(std::span<const int> shape) {
  long total = 1;
  for (int n : shape) total *= n;
  return total;
}

}  // namespace rsfd
