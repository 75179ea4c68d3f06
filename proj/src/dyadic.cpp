#include "fiolab/dyadic.hpp"

#include <cmath>
#include <string>

#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

double DyadicPartition::piece(int j, double xi_norm) const {
  if (j == 0) return radial_cutoff(xi_norm);
  // chi_j = theta(2^{-j} r) - theta(2^{-(j-1)} r)
  const double s = std::ldexp(xi_norm, -j);
  double v = radial_cutoff(s) - radial_cutoff(2.0 * s);
  if (tail_to_last && j == j_max) v += 1.0 - radial_cutoff(s);
  return v;
}

double DyadicPartition::sum(double xi_norm) const {
  double s = 0.0;
  for (int j = 0; j <= j_max; ++j) s += piece(j, xi_norm);
  return s;
}

DyadicPartition littlewood_paley(const Grid& grid, int j_max, bool tail_to_last) {
  if (j_max < 1)
    throw config_error("littlewood_paley: J_max must be >= 1");
  // the top annulus must still reach into the grid: 2^{J_max-1} <= Nyquist
  if (std::ldexp(1.0, j_max - 1) > grid.nyquist())
    throw config_error("littlewood_paley: J_max too large for the grid (Nyquist " +
                       std::to_string(grid.nyquist()) + ")");
  return DyadicPartition{j_max, tail_to_last};
}

}  // namespace fiolab
