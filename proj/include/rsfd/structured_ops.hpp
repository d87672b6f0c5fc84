#pragma once

#include <span>
#include <vector>

#include "rsfd/grid.hpp"

namespace rsfd {

/// Symmetric Toeplitz matrix stored as its first column. Products run through
/// a 2n circulant embedding and FFTs; the dense matrix is never formed here.
class SymmetricToeplitz1D {
 public:
  explicit SymmetricToeplitz1D(std::vector<double> first_column);

  int size() const noexcept { return static_cast<int>(column_.size()); }
  std::span<const double> first_column() const noexcept { return column_; }

  /// out = S v. Exact up to rounding; v and out may alias.
  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

 private:
  std::vector<double> column_;
  std::vector<double> embed_symbol_;
};

/// T = sum_i eta_i I x S_i x I on a row-major tensor: the Kronecker-sum
/// operator applies block i along tensor mode i, scaled by eta_i. Immutable
/// after construction; concurrent applies with distinct outputs are safe.
class KroneckerSumOperator {
 public:
  KroneckerSumOperator(std::vector<SymmetricToeplitz1D> blocks,
                       std::vector<double> scalings);

  int dimension() const noexcept { return static_cast<int>(blocks_.size()); }
  const std::vector<int>& shape() const noexcept { return shape_; }
  long total() const noexcept { return shape_total(shape_); }
  const SymmetricToeplitz1D& block(int dim) const { return blocks_[dim]; }
  double scaling(int dim) const { return scalings_[dim]; }
  const std::vector<double>& scalings() const noexcept { return scalings_; }

  /// out = T u on linearized tensors; never materializes T.
  void apply(std::span<const double> u, std::span<double> out) const;
  GridField apply(const GridField& u) const;

 private:
  std::vector<SymmetricToeplitz1D> blocks_;
  std::vector<double> scalings_;
  std::vector<int> shape_;
};

/// Orthonormal DST-I; applying it twice returns the input.
void dst1(std::span<const double> v, std::span<double> out);
std::vector<double> dst1(std::span<const double> v);

/// DST-I along every mode of the tensor; orthonormal and involutive.
void multi_dst(std::span<const int> shape, std::span<const double> u, std::span<double> out);
GridField multi_dst(const GridField& u);

namespace detail_ops {
/// Applies op(fiber_in, fiber_out) to every mode-`dim` fiber of a row-major
/// tensor. Used by the operator and the transforms; exposed for tests.
template <typename Op>
void for_each_fiber(std::span<const int> shape, int dim, std::span<const double> in,
                    std::span<double> out, Op&& op) {
  const int n = shape[dim];
  long inner = 1, outer = 1;
  for (size_t i = dim + 1; i < shape.size(); ++i) inner *= shape[i];
  for (int i = 0; i < dim; ++i) outer *= shape[i];
  std::vector<double> fiber(n), result(n);
  for (long o = 0; o < outer; ++o) {
    for (long q = 0; q < inner; ++q) {
      const long base = o * n * inner + q;
      for (int j = 0; j < n; ++j) fiber[j] = in[base + j * inner];
      op(std::span<const double>(fiber), std::span<double>(result));
      for (int j = 0; j < n; ++j) out[base + j * inner] = result[j];
    }
  }
}
}  // namespace detail_ops

}  // namespace rsfd
