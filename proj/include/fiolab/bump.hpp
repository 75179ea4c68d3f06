#ifndef FIOLAB_BUMP_HPP
#define FIOLAB_BUMP_HPP

#include <cmath>

namespace fiolab {

// C-infinity transition s(t): 0 for t <= 0, 1 for t >= 1, strictly
// increasing in between.  Built from exp(-1/t).
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// Radial cutoff theta(r): 1 for r <= 1.4, 0 for r >= 2.  The plateau keeps
// the dyadic pieces chi_j = theta(2^{-j} r) - theta(2^{1-j} r) equal to 1 on
// the bands [2^j, 1.4 * 2^j] rather than at a single radius.
inline double radial_cutoff(double r) {
  return 1.0 - smooth_step((r - 1.4) / 0.6);
}

// chi0 for a low-frequency split of radius `cut`: 1 on |xi| <= cut/2,
// supported in |xi| <= cut.
inline double chi0(double r, double cut = 2.0) {
  return radial_cutoff(2.0 * r / cut);
}

// Smooth bump supported on [0, 1): 1 at 0, 0 for r >= 1.
inline double unit_bump(double r) {
  if (r >= 1.0) return 0.0;
  if (r <= 0.0) return 1.0;
  return 1.0 - smooth_step(r);
}

}  // namespace fiolab

#endif
