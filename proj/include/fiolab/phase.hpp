#ifndef FIOLAB_PHASE_HPP
#define FIOLAB_PHASE_HPP

#include <functional>
#include <string>
#include <vector>

#include "fiolab/grid.hpp"
#include "fiolab/smallmat.hpp"
#include "fiolab/symbol.hpp"

namespace fiolab {

enum class PhaseFamily { linear, wave, shifted, diffeo, rough_wave, custom };

// A phase phi(x, xi), positively homogeneous of degree 1 in xi for all
// built-in families, with evaluation extended by phi(x, 0) = 0.
struct PhaseSpec {
  PhaseFamily family = PhaseFamily::custom;
  std::string label;
  int dim = 1;
  int class_k = 2;              // Phi^k / LinfPhi^k index
  bool rough_in_x = false;      // LinfPhi^k: bounded measurable in x
  bool homogeneous_degree_1 = true;

  std::function<double(const Point& x, const Point& xi)> eval;
  std::function<Point(const Point& x, const Point& xi)> grad_xi;
  // Mixed Hessian d^2 phi / dx dxi; empty when rough_in_x.
  std::function<SmallMat(const Point& x, const Point& xi)> hess_mixed;
  std::function<SmallMat(const Point& x, const Point& xi)> hess_xixi;
};

PhaseSpec linear_phase(int n);
PhaseSpec wave_phase(int n, double t = 1.0);
PhaseSpec shifted_phase(int n);   // <x,xi> + xi_1
// <kappa(x), xi> with kappa(x) = scale * x.
PhaseSpec diffeo_scale_phase(int n, double scale);
// <kappa(x), xi> with kappa_d(x) = x_d + amp * sin(x_d), |amp| < 1.
PhaseSpec diffeo_sine_phase(int n, double amp);
// <x,xi> + t(x) |xi| with t a bounded measurable rule: "step" takes values
// {t0, t1} by sign of x_1, "sawtooth" oscillates in [t0, t1].
PhaseSpec rough_wave_phase(int n, const std::string& rule, double t0 = 0.5,
                           double t1 = 1.0);

struct PhaseSeminormEntry {
  MultiIndex alpha{};
  MultiIndex beta{};
  double value = 0.0;  // sampled sup of |xi|^{-1+|alpha|} |d^a_xi d^b_x phi|
};

struct PhaseReport {
  double min_abs_det_mixed = 0.0;   // NaN when rough_in_x
  int rank_hess_xixi = 0;           // max rank over |xi|=1 samples
  double det_reduced_hess = 0.0;    // min |det_{n-1}| over samples of max rank
  double rough_nondegeneracy_c = 0.0;
  std::vector<PhaseSeminormEntry> seminorms;  // orders k..3
  std::string sample_descriptor;
};

// Numerical non-degeneracy and class report.  xi samples are generated on
// the unit sphere and on the grid's frequency lattice outside |xi| < xi_floor
// (default: one dual-grid spacing).  Passing explicit xi samples containing a
// point with |xi| < xi_floor is a precondition error.
PhaseReport phase_report(const PhaseSpec& phi, const Grid& grid,
                         const std::vector<Point>& x_samples,
                         const std::vector<Point>* xi_samples = nullptr,
                         double xi_floor = -1.0, double rank_tol = 1e-8);

}  // namespace fiolab

#endif
