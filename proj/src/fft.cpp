#include "fiolab/fft.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "fiolab/grid.hpp"

namespace fiolab {

namespace {

void fft_pow2(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cdouble wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cdouble w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cdouble u = a[i + k];
        const cdouble v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Chirp-z transform for arbitrary lengths.  The chirp exponent uses j^2/2
// mod 2N to keep the twiddle angles small.
void bluestein(std::vector<cdouble>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;

  std::vector<cdouble> chirp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t j2 = (j * j) % (2 * n);
    const double ang = sign * std::numbers::pi * static_cast<double>(j2) /
                       static_cast<double>(n);
    chirp[j] = cdouble(std::cos(ang), std::sin(ang));
  }

  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<cdouble> f(m, cdouble(0.0, 0.0)), g(m, cdouble(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) f[j] = a[j] * chirp[j];
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = std::conj(chirp[j]);
    if (j != 0) g[m - j] = std::conj(chirp[j]);
  }

  fft_pow2(f, false);
  fft_pow2(g, false);
  for (std::size_t j = 0; j < m; ++j) f[j] *= g[j];
  fft_pow2(f, true);

  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < n; ++j) a[j] = f[j] * chirp[j] * scale;
}

}  // namespace

void dft(std::vector<cdouble>& a, bool inverse) {
  if (a.size() < 2) return;
  if (is_power_of_two(static_cast<int>(a.size())))
    fft_pow2(a, inverse);
  else
    bluestein(a, inverse);
}

void dft_nd(std::vector<cdouble>& data, int dim, int n_per_axis, bool inverse) {
  const std::size_t n = static_cast<std::size_t>(n_per_axis);
  if (dim == 1) {
    dft(data, inverse);
    return;
  }
  // Transform along each axis in turn; lines along the axis are gathered
  // into a contiguous scratch buffer.
  std::size_t total = data.size();
  for (int axis = 0; axis < dim; ++axis) {
    // stride between consecutive entries along `axis`
    std::size_t stride = 1;
    for (int d = dim - 1; d > axis; --d) stride *= n;
    const std::size_t lines = total / n;
#pragma omp parallel
    {
      std::vector<cdouble> line(n);
#pragma omp for
      for (std::ptrdiff_t l = 0; l < static_cast<std::ptrdiff_t>(lines); ++l) {
        // decompose line index into (outer, inner) around the axis
        const std::size_t inner = static_cast<std::size_t>(l) % stride;
        const std::size_t outer = static_cast<std::size_t>(l) / stride;
        const std::size_t base = outer * stride * n + inner;
        for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * stride];
        dft(line, inverse);
        for (std::size_t k = 0; k < n; ++k) data[base + k * stride] = line[k];
      }
    }
  }
}

}  // namespace fiolab
