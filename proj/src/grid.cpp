#include "fiolab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fiolab/errors.hpp"

namespace fiolab {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double Grid::dual_spacing() const { return std::numbers::pi / half_width; }

std::int64_t Grid::size() const {
  std::int64_t s = 1;
  for (int d = 0; d < dim; ++d) s *= points_per_axis;
  return s;
}

void Grid::unflatten(std::int64_t flat, std::array<int, kMaxDim>& idx) const {
  for (int d = dim - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % points_per_axis);
    flat /= points_per_axis;
  }
  for (int d = dim; d < kMaxDim; ++d) idx[d] = 0;
}

std::int64_t Grid::flatten(const std::array<int, kMaxDim>& idx) const {
  std::int64_t flat = 0;
  for (int d = 0; d < dim; ++d) flat = flat * points_per_axis + idx[d];
  return flat;
}

Point Grid::point_at(std::int64_t flat) const {
  std::array<int, kMaxDim> idx;
  unflatten(flat, idx);
  Point p{};
  for (int d = 0; d < dim; ++d) p[d] = coord(idx[d]);
  return p;
}

Point Grid::freq_at(std::int64_t flat) const {
  std::array<int, kMaxDim> idx;
  unflatten(flat, idx);
  Point p{};
  for (int d = 0; d < dim; ++d) p[d] = freq(idx[d]);
  return p;
}

double Grid::freq_norm_at(std::int64_t flat) const {
  Point xi = freq_at(flat);
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += xi[d] * xi[d];
  return std::sqrt(s);
}

Grid make_grid(int n, int N, double L) {
  if (n < 1 || n > kMaxDim)
    throw config_error("make_grid: dimension must be in [1," +
                       std::to_string(kMaxDim) + "], got " + std::to_string(n));
  if (N < 8 || !is_power_of_two(N))
    throw config_error("make_grid: points_per_axis must be a power of two >= 8, got " +
                       std::to_string(N));
  if (!(L > 0.0)) throw config_error("make_grid: half_width must be positive");
  return Grid{n, N, L};
}

Grid make_grid_unchecked(int n, int N, double L) {
  if (n < 1 || n > kMaxDim || N < 8 || N % 2 != 0 || !(L > 0.0))
    throw config_error("make_grid_unchecked: need 1<=n<=3, even N>=8, L>0");
  return Grid{n, N, L};
}

}  // namespace fiolab
