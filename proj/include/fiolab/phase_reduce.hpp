#ifndef FIOLAB_PHASE_REDUCE_HPP
#define FIOLAB_PHASE_REDUCE_HPP

#include <vector>

#include "fiolab/phase.hpp"

namespace fiolab {

// Reduction of a degree-1 homogeneous phase to linear-plus-bounded form:
// on each piece of a covering of the unit sphere with centers zeta_l,
//   phi(x, xi) = theta_l(x, xi) + <grad_xi phi(x, zeta_l), xi>
// holds identically, with |d_xi theta_l| = O(covering diameter) on the piece.
struct ReducedPhase {
  PhaseSpec phi;
  std::vector<Point> centers;
  double diameter = 0.0;  // max chordal diameter of the covering pieces

  int pieces() const { return static_cast<int>(centers.size()); }

  // Smooth partition of unity on directions, subordinate to the covering.
  double cutoff(int l, const Point& xi) const;
  double theta(int l, const Point& x, const Point& xi) const;
  Point pivot(int l, const Point& x) const;  // grad_xi phi(x, zeta_l)

 private:
  double support_radius() const { return 0.6 * diameter; }
  friend ReducedPhase phase_reduce(const PhaseSpec& phi, int M);
};

// M pieces covering S^{n-1}; fails when M cannot reach chordal diameter 1/2.
ReducedPhase phase_reduce(const PhaseSpec& phi, int M);

}  // namespace fiolab

#endif
