#pragma once

#include <span>
#include <vector>

#include "rsfd/fcd.hpp"

namespace rsfd {

/// Axis-aligned box, the product of the open intervals (lower_i, upper_i).
struct Domain {
  std::vector<double> lower;
  std::vector<double> upper;

  Domain(std::vector<double> lo, std::vector<double> hi);
  int dimension() const noexcept { return static_cast<int>(lower.size()); }
  double length(int dim) const { return upper[dim] - lower[dim]; }
};

/// Uniform tensor grid of interior points. Per dimension, n_i interior nodes
/// x_{i,j} = lower_i + (j+1) h_i with h_i = L_i/(n_i + 1); boundary values are
/// identically zero and never stored. Time is split into M steps of size
/// dt = T/M, and each dimension carries the scaling
/// eta_i = K_i dt / (2 h_i^{alpha_i}) of the implicit operator.
class GridSpec {
 public:
  GridSpec(const Domain& domain, std::span<const FractionalOrder> alphas,
           std::span<const double> diffusion, double final_time,
           std::vector<int> interior, int time_steps);

  int dimension() const noexcept { return static_cast<int>(interior_.size()); }
  const std::vector<int>& interior() const noexcept { return interior_; }
  long total() const noexcept;
  int time_steps() const noexcept { return time_steps_; }
  double dt() const noexcept { return dt_; }
  double h(int dim) const { return h_[dim]; }
  const std::vector<double>& spacings() const noexcept { return h_; }
  double eta(int dim) const { return eta_[dim]; }
  const std::vector<double>& etas() const noexcept { return eta_; }

  /// Interior node coordinate, j = 0 .. n_i - 1.
  double node(int dim, int j) const { return lower_[dim] + (j + 1) * h_[dim]; }
  double midpoint_time(int step) const { return (step + 0.5) * dt_; }

 private:
  std::vector<double> lower_;
  std::vector<int> interior_;
  int time_steps_;
  std::vector<double> h_;
  double dt_;
  std::vector<double> eta_;
};

/// Values on the interior grid, linearized row-major with the first dimension
/// slowest: lin(J) = ((j_1 n_2 + j_2) n_3 + ...) + j_d. This is the layout the
/// Kronecker-sum operator and the dense assemblies agree on.
struct GridField {
  std::vector<int> shape;
  std::vector<double> values;

  GridField() = default;
  explicit GridField(std::vector<int> shape_in);

  long size() const noexcept { return static_cast<long>(values.size()); }
};

long shape_total(std::span<const int> shape);

/// Calls fn(linear_index, multi_index) for every point of a row-major shape,
/// in linear order. multi_index is a span of 0-based per-dimension indices.
template <typename Fn>
void for_each_index(std::span<const int> shape, Fn&& fn) {
  const int d = static_cast<int>(shape.size());
  std::vector<int> idx(d, 0);
  const long total = shape_total(shape);
  for (long lin = 0; lin < total; ++lin) {
    fn(lin, std::span<const int>(idx));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < shape[i]) break;
      idx[i] = 0;
    }
  }
}

}  // namespace rsfd
