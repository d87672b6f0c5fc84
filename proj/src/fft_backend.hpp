#pragma once

// Thin wrappers around FFTW for the handful of transform shapes this library
// needs. Plans are cached per thread and keyed by length/shape; FFTW's
// planner is serialized through a global mutex, execution runs lock-free on
// thread-local buffers.

#include <span>
#include <vector>

namespace rsfd::detail {

/// Orthonormal DST-I: out_j = sqrt(2/(n+1)) sum_{k=1}^{n} in_k sin(jk pi/(n+1)).
/// Symmetric and involutive. in and out may alias.
void dst1_orthonormal(std::span<const double> in, std::span<double> out);

/// Real spectrum of the 2n circulant embedding
/// [c_0, c_1, ..., c_{n-1}, 0, c_{n-1}, ..., c_1] of a symmetric Toeplitz
/// first column. Length n + 1 (nonnegative frequencies).
std::vector<double> embedding_symbol(std::span<const double> first_column);

/// y = S v for the symmetric Toeplitz matrix whose embedding spectrum is
/// `symbol` (length n + 1, n = v.size()). in and out may alias.
void toeplitz_apply(std::span<const double> symbol, std::span<const double> v,
                    std::span<double> y);

/// Samples c_0 + 2 sum_{k=1}^{K} c_k cos(k theta_j) at theta_j = j pi/(n+1),
/// j = 1..n, in O(n log n). Requires K <= n + 1.
std::vector<double> cosine_series_samples(std::span<const double> coeffs, int n);

/// Eigenvalues of the circulant matrix with the given first column, i.e. the
/// DFT of the column, in natural bin order. The column must be symmetric
/// (c_k = c_{n-k}) so the spectrum is real; throws if a nonreal value shows up.
std::vector<double> circulant_eigenvalues(std::span<const double> column);

/// out = real( IDFT( DFT(v) ./ eigenvalues ) ) on a row-major tensor.
/// Returns the largest |imaginary part| discarded from the result.
double circulant_solve(std::span<const int> shape, std::span<const double> eigenvalues,
                       std::span<const double> v, std::span<double> out);

}  // namespace rsfd::detail
