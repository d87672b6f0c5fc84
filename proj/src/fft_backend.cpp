#include "fft_backend.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace rsfd::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One r2r plan together with its FFTW-aligned buffer.
struct R2rEntry {
  double* buf = nullptr;
  fftw_plan plan = nullptr;

  R2rEntry(int n, fftw_r2r_kind kind) {
    buf = fftw_alloc_real(n);
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_r2r_1d(n, buf, buf, kind, FFTW_ESTIMATE);
  }
  ~R2rEntry() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(buf);
  }
  R2rEntry(const R2rEntry&) = delete;
  R2rEntry& operator=(const R2rEntry&) = delete;
};

// Forward/backward real transforms of length 2n for the circulant embedding.
struct EmbeddingEntry {
  int two_n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit EmbeddingEntry(int n) : two_n(2 * n) {
    real = fftw_alloc_real(two_n);
    cplx = fftw_alloc_complex(n + 1);
    std::lock_guard lock(planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(two_n, real, cplx, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(two_n, cplx, real, FFTW_ESTIMATE);
  }
  ~EmbeddingEntry() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(cplx);
  }
  EmbeddingEntry(const EmbeddingEntry&) = delete;
  EmbeddingEntry& operator=(const EmbeddingEntry&) = delete;
};

struct DftEntry {
  long total = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit DftEntry(const std::vector<int>& shape) {
    total = 1;
    for (int n : shape) total *= n;
    buf = fftw_alloc_complex(total);
    std::lock_guard lock(planner_mutex());
    fwd = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf,
                        FFTW_FORWARD, FFTW_ESTIMATE);
    inv = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), buf, buf,
                        FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~DftEntry() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(inv);
    fftw_free(buf);
  }
  DftEntry(const DftEntry&) = delete;
  DftEntry& operator=(const DftEntry&) = delete;
};

R2rEntry& dst1_entry(int n) {
  thread_local std::map<int, std::unique_ptr<R2rEntry>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<R2rEntry>(n, FFTW_RODFT00);
  return *slot;
}

R2rEntry& dct1_entry(int n) {
  thread_local std::map<int, std::unique_ptr<R2rEntry>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<R2rEntry>(n, FFTW_REDFT00);
  return *slot;
}

EmbeddingEntry& embedding_entry(int n) {
  thread_local std::map<int, std::unique_ptr<EmbeddingEntry>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<EmbeddingEntry>(n);
  return *slot;
}

DftEntry& dft_entry(const std::vector<int>& shape) {
  thread_local std::map<std::vector<int>, std::unique_ptr<DftEntry>> cache;
  auto& slot = cache[shape];
  if (!slot) slot = std::make_unique<DftEntry>(shape);
  return *slot;
}

}  // namespace

void dst1_orthonormal(std::span<const double> in, std::span<double> out) {
  const int n = static_cast<int>(in.size());
  if (static_cast<int>(out.size()) != n)
    throw std::invalid_argument("dst1: size mismatch");
  if (n == 0) return;
  if (n == 1) {  // sqrt(2/2) sin(pi/2) = 1
    out[0] = in[0];
    return;
  }
  auto& entry = dst1_entry(n);
  std::memcpy(entry.buf, in.data(), n * sizeof(double));
  fftw_execute(entry.plan);
  const double scale = 1.0 / std::sqrt(2.0 * (n + 1));
  for (int i = 0; i < n; ++i) out[i] = scale * entry.buf[i];
}

std::vector<double> embedding_symbol(std::span<const double> first_column) {
  const int n = static_cast<int>(first_column.size());
  auto& entry = embedding_entry(n);
  entry.real[0] = first_column[0];
  entry.real[n] = 0.0;
  for (int k = 1; k < n; ++k) {
    entry.real[k] = first_column[k];
    entry.real[2 * n - k] = first_column[k];
  }
  fftw_execute(entry.fwd);
  // The embedded column is even, so its spectrum is real.
  std::vector<double> symbol(n + 1);
  for (int i = 0; i <= n; ++i) symbol[i] = entry.cplx[i][0];
  return symbol;
}

void toeplitz_apply(std::span<const double> symbol, std::span<const double> v,
                    std::span<double> y) {
  const int n = static_cast<int>(v.size());
  if (static_cast<int>(symbol.size()) != n + 1 || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("toeplitz_apply: size mismatch");
  auto& entry = embedding_entry(n);
  std::memcpy(entry.real, v.data(), n * sizeof(double));
  std::memset(entry.real + n, 0, n * sizeof(double));
  fftw_execute(entry.fwd);
  for (int i = 0; i <= n; ++i) {
    entry.cplx[i][0] *= symbol[i];
    entry.cplx[i][1] *= symbol[i];
  }
  fftw_execute(entry.inv);
  const double scale = 1.0 / (2.0 * n);
  for (int i = 0; i < n; ++i) y[i] = scale * entry.real[i];
}

std::vector<double> cosine_series_samples(std::span<const double> coeffs, int n) {
  const int count = static_cast<int>(coeffs.size());
  if (count > n + 2)
    throw std::invalid_argument("cosine_series_samples: series longer than sample grid");
  // REDFT00 of length n+2 evaluates X_0 + (-1)^j X_{n+1} + 2 sum_{k=1}^{n} X_k cos(jk pi/(n+1)).
  auto& entry = dct1_entry(n + 2);
  for (int i = 0; i < n + 2; ++i) entry.buf[i] = (i < count) ? coeffs[i] : 0.0;
  fftw_execute(entry.plan);
  std::vector<double> out(n);
  for (int j = 1; j <= n; ++j) out[j - 1] = entry.buf[j];
  return out;
}

std::vector<double> circulant_eigenvalues(std::span<const double> column) {
  const int n = static_cast<int>(column.size());
  std::vector<int> shape{n};
  auto& entry = dft_entry(shape);
  for (int i = 0; i < n; ++i) {
    entry.buf[i][0] = column[i];
    entry.buf[i][1] = 0.0;
  }
  fftw_execute(entry.fwd);
  double scale = 0.0;
  for (double c : column) scale += std::abs(c);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(entry.buf[i][1]) > 1e-12 * std::max(scale, 1.0))
      throw std::runtime_error("circulant spectrum is not real; column not symmetric");
    out[i] = entry.buf[i][0];
  }
  return out;
}

double circulant_solve(std::span<const int> shape, std::span<const double> eigenvalues,
                       std::span<const double> v, std::span<double> out) {
  std::vector<int> key(shape.begin(), shape.end());
  auto& entry = dft_entry(key);
  const long total = entry.total;
  if (static_cast<long>(v.size()) != total || static_cast<long>(out.size()) != total ||
      static_cast<long>(eigenvalues.size()) != total)
    throw std::invalid_argument("circulant_solve: size mismatch");
  for (long i = 0; i < total; ++i) {
    entry.buf[i][0] = v[i];
    entry.buf[i][1] = 0.0;
  }
  fftw_execute(entry.fwd);
  for (long i = 0; i < total; ++i) {
    entry.buf[i][0] /= eigenvalues[i];
    entry.buf[i][1] /= eigenvalues[i];
  }
  fftw_execute(entry.inv);
  const double scale = 1.0 / static_cast<double>(total);
  double max_imag = 0.0;
  for (long i = 0; i < total; ++i) {
    out[i] = scale * entry.buf[i][0];
    max_imag = std::max(max_imag, std::abs(scale * entry.buf[i][1]));
  }
  return max_imag;
}

}  // namespace rsfd::detail
