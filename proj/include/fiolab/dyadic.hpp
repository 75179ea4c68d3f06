#ifndef FIOLAB_DYADIC_HPP
#define FIOLAB_DYADIC_HPP

#include "fiolab/grid.hpp"

namespace fiolab {

// Dyadic partition of unity in frequency:
//   chi_0 supported in |xi| <= 2,
//   chi_j(xi) = chi(2^{-j} xi) supported in 2^{j-1} <= |xi| <= 2^{j+1},
//   chi_0 + sum_{j=1..J_max} chi_j = 1 on |xi| <= 2^{J_max}.
// With tail_to_last set, the leftover 1 - theta(2^{-J_max}|xi|) is folded
// into the last piece so the partition sums to 1 on the whole grid.
struct DyadicPartition {
  int j_max = 0;
  bool tail_to_last = false;

  // piece j in [0, j_max]; piece 0 is chi_0.
  double piece(int j, double xi_norm) const;
  double sum(double xi_norm) const;
};

// Requires 2^{J_max} <= Nyquist frequency of the grid.
DyadicPartition littlewood_paley(const Grid& grid, int j_max,
                                 bool tail_to_last = false);

}  // namespace fiolab

#endif
