#ifndef FIOLAB_GRID_HPP
#define FIOLAB_GRID_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace fiolab {

inline constexpr int kMaxDim = 3;

using Point = std::array<double, kMaxDim>;

// Uniform periodic grid on [-L, L)^n with N points per axis and the
// standard discrete Fourier dual grid.
//
//   physical spacing   dx  = 2L/N,        x_j = -L + j*dx
//   frequency spacing  dxi = pi/L,        xi_k = k~*dxi  (k~ signed index)
//   Nyquist            xi_max = pi*N/(2L)
struct Grid {
  int dim = 1;
  int points_per_axis = 0;
  double half_width = 0.0;

  double spacing() const { return 2.0 * half_width / points_per_axis; }
  double dual_spacing() const;
  double nyquist() const { return 0.5 * points_per_axis * dual_spacing(); }
  std::int64_t size() const;

  // Signed frequency index for axis index k in [0, N): 0,1,..,N/2-1,-N/2,..,-1.
  int signed_index(int k) const {
    return k < points_per_axis / 2 ? k : k - points_per_axis;
  }

  double coord(int j) const { return -half_width + j * spacing(); }
  double freq(int k) const { return signed_index(k) * dual_spacing(); }

  // Row-major flat index <-> per-axis indices.
  void unflatten(std::int64_t flat, std::array<int, kMaxDim>& idx) const;
  std::int64_t flatten(const std::array<int, kMaxDim>& idx) const;

  Point point_at(std::int64_t flat) const;
  Point freq_at(std::int64_t flat) const;
  double freq_norm_at(std::int64_t flat) const;
};

// Checked constructor: n >= 1, N a power of two >= 8, L > 0.
Grid make_grid(int n, int N, double L);

// Quadrature-only grids used by refinement sweeps may have any even N >= 8;
// transforms fall back to a Bluestein FFT for non power-of-two sizes.
Grid make_grid_unchecked(int n, int N, double L);

bool is_power_of_two(int n);

}  // namespace fiolab

#endif
