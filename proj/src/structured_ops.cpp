#include "rsfd/structured_ops.hpp"

#include <stdexcept>

#include "fft_backend.hpp"

namespace rsfd {

SymmetricToeplitz1D::SymmetricToeplitz1D(std::vector<double> first_column)
    : column_(std::move(first_column)) {
  if (column_.empty())
    throw std::invalid_argument("toeplitz: first column must be nonempty");
  embed_symbol_ = detail::embedding_symbol(column_);
}

void SymmetricToeplitz1D::apply(std::span<const double> v, std::span<double> out) const {
  if (static_cast<int>(v.size()) != size() || static_cast<int>(out.size()) != size())
    throw std::invalid_argument("toeplitz: vector length does not match matrix order");
  detail::toeplitz_apply(embed_symbol_, v, out);
}

std::vector<double> SymmetricToeplitz1D::apply(std::span<const double> v) const {
  std::vector<double> out(v.size());
  apply(v, out);
  return out;
}

KroneckerSumOperator::KroneckerSumOperator(std::vector<SymmetricToeplitz1D> blocks,
                                           std::vector<double> scalings)
    : blocks_(std::move(blocks)), scalings_(std::move(scalings)) {
  if (blocks_.empty() || blocks_.size() != scalings_.size())
    throw std::invalid_argument("kronecker sum: need one scaling per block");
  for (double eta : scalings_)
    if (!(eta > 0.0))
      throw std::invalid_argument("kronecker sum: scalings must be positive");
  shape_.reserve(blocks_.size());
  for (const auto& b : blocks_) shape_.push_back(b.size());
}

void KroneckerSumOperator::apply(std::span<const double> u, std::span<double> out) const {
  const long n = total();
  if (static_cast<long>(u.size()) != n || static_cast<long>(out.size()) != n)
    throw std::invalid_argument("kronecker sum: tensor size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> mode(n);
  for (int dim = 0; dim < dimension(); ++dim) {
    const auto& block = blocks_[dim];
    detail_ops::for_each_fiber(shape_, dim, u, std::span<double>(mode),
                               [&](std::span<const double> in, std::span<double> res) {
                                 block.apply(in, res);
                               });
    const double eta = scalings_[dim];
    for (long i = 0; i < n; ++i) out[i] += eta * mode[i];
  }
}

GridField KroneckerSumOperator::apply(const GridField& u) const {
  if (u.shape != shape_)
    throw std::invalid_argument("kronecker sum: field shape mismatch");
  GridField out(shape_);
  apply(u.values, out.values);
  return out;
}

void dst1(std::span<const double> v, std::span<double> out) {
  detail::dst1_orthonormal(v, out);
}

std::vector<double> dst1(std::span<const double> v) {
  std::vector<double> out(v.size());
  detail::dst1_orthonormal(v, out);
  return out;
}

void multi_dst(std::span<const int> shape, std::span<const double> u, std::span<double> out) {
  const long n = shape_total(shape);
  if (static_cast<long>(u.size()) != n || static_cast<long>(out.size()) != n)
    throw std::invalid_argument("multi_dst: tensor size mismatch");
  std::copy(u.begin(), u.end(), out.begin());
  for (size_t dim = 0; dim < shape.size(); ++dim)
    detail_ops::for_each_fiber(shape, static_cast<int>(dim), out, out,
                               [](std::span<const double> in, std::span<double> res) {
                                 detail::dst1_orthonormal(in, res);
                               });
}

GridField multi_dst(const GridField& u) {
  GridField out(u.shape);
  multi_dst(u.shape, u.values, out.values);
  return out;
}

}  // namespace rsfd
