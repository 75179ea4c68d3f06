#ifndef FIOLAB_OSCQUAD_HPP
#define FIOLAB_OSCQUAD_HPP

#include <functional>
#include <vector>

namespace fiolab {

// Radial Fourier profile in one dimension:
//   P(x) = int_R g(|xi|) e^{i x xi} dxi = 2 int_0^inf g(r) cos(x r) dr
// for smooth g with power-law decay.  Composite Simpson on [0, K] plus a
// two-term integration-by-parts tail using g' and the next-order remainder
// bound; accurate to ~1e-9 absolute for g ~ r^s, s <= -1/2, |x| >= 2^-8.
double radial_profile_1d(const std::function<double(double)>& g,
                         const std::function<double(double)>& gprime, double x,
                         double K = 16384.0, double step = 0.005);

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace fiolab

#endif
