#ifndef FIOLAB_WEIGHTS_HPP
#define FIOLAB_WEIGHTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "fiolab/dyadic.hpp"
#include "fiolab/field.hpp"
#include "fiolab/grid.hpp"

namespace fiolab {

enum class WeightFamily { power, truncated_power, log_weight, tabulated, constant };

// Nonnegative weight with analytic handling of the origin singularity for
// the power and log families.  Powers of the weight (the dual exponent in
// the A_p product) integrate analytically too; cell integrals of
// non-integrable powers are truncated at a pinhole radius so every reported
// quantity stays a finite lower bound of its continuum value.
struct Weight {
  WeightFamily family = WeightFamily::constant;
  double exponent = 0.0;     // alpha for power, -b for truncated_power
  double support_radius = 2.0;  // truncated_power support
  std::string label;
  std::function<double(const Point&)> eval_fn;  // tabulated only

  double eval(const Point& x, int dim) const;

  // integral over [a, b) of w(x)^s in one dimension, exact for the power-type
  // families; `pinhole` truncates non-integrable singularities.
  double interval_mass_1d(double a, double b, double s, double pinhole) const;
};

Weight power_weight(double alpha);
Weight truncated_power_weight(double b, double radius = 2.0);
Weight log_weight();  // log(1/|x|) on |x| < 1/e, 1 elsewhere
Weight constant_weight();
Weight tabulated_weight(const Grid& g, std::istream& csv);

struct Ball {
  Point center{};
  double radius = 0.0;
};

struct BallFamily {
  std::vector<Ball> balls;
  std::vector<double> radii;  // the distinct radii, ascending

  // Dyadic radii 2^{r_lo}..2^{r_hi} on centers {origin} + a sublattice with
  // `center_stride` grid points between consecutive centers.
  static BallFamily dyadic(const Grid& g, int r_lo = -8, int r_hi = 3,
                           int center_stride = 64);
};

// Average of w^s over the ball: midpoint rule over grid cells, fractional
// boundary cells by overlap, analytic origin cell for singular families.
double ball_average(const Weight& w, double s, const Ball& ball, const Grid& g);

struct ApScaleEntry {
  double radius = 0.0;
  double value = 0.0;  // A_p product over the origin-centered ball
};

struct ApReport {
  double constant = 0.0;  // max over the family (a lower bound of [w]_{A_p})
  std::vector<ApScaleEntry> origin_trend;  // per dyadic radius at the origin
  bool divergent_trend = false;  // monotone growth over the top >= 3 scales
};

// [w]_{A_p} lower bound: max over the family of w_B (w^{-1/(p-1)})_B^{p-1}.
ApReport ap_constant_report(const Weight& w, double p, const BallFamily& balls,
                            const Grid& g);
double ap_constant(const Weight& w, double p, const BallFamily& balls,
                   const Grid& g);

// Analytic membership of |x|^alpha: A_1 iff -n < alpha <= 0, A_p iff
// -n < alpha < n(p-1).
bool power_weight_class(double alpha, double p, int n);

// Centered maximal function over the family's radius set:
//   M u(x) = max_r ( avg_{B(x,r)} |u|^{p_exp} )^{1/p_exp}.
SampledField maximal(const SampledField& u, const BallFamily& balls,
                     double p_exp = 1.0);
SampledField maximal_serial(const SampledField& u, const BallFamily& balls,
                            double p_exp = 1.0);

// (sum |u|^p * cellmass(w))^{1/p} with quadrature cells [x_i, x_i+dx)^n and
// analytic singular-cell masses; p = infinity (p <= 0 sentinel) gives max|u|.
double weighted_norm(const SampledField& u, double p, const Weight& w);

// max over the family of the mean oscillation (1/|B|) int_B |b - b_B|.
// singular_at_origin switches the origin cell to a refined sub-quadrature.
double bmo_norm(const std::function<double(const Point&)>& b,
                const BallFamily& balls, const Grid& g,
                bool singular_at_origin = false);

// log(1/|x|) truncated at 1/e, with the origin cell carrying its analytic
// cell average 1 - log(dx/2) so pointwise evaluation stays finite on the
// grid (the BMO commutator probe).
std::function<double(const Point&)> truncated_log_function(const Grid& g);

// || ( sum_j |2^{js} chi_j(D) u|^q )^{1/q} ||_{L^p_w} over the finite j-range
// of the partition.  q = infinity is not supported.
double triebel_lizorkin_norm(const SampledField& u, double s, double p, double q,
                             const Weight& w, const DyadicPartition& dp);

}  // namespace fiolab

#endif
