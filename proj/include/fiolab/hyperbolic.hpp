#ifndef FIOLAB_HYPERBOLIC_HPP
#define FIOLAB_HYPERBOLIC_HPP

#include <string>
#include <vector>

#include "fiolab/field.hpp"
#include "fiolab/testfamily.hpp"
#include "fiolab/weights.hpp"

namespace fiolab {

struct CauchyData {
  SampledField f0;  // initial value
  SampledField f1;  // initial velocity
  double t = 0.0;
};

// Half-wave propagator e^{it|D|}: a unimodular frequency multiplier, exactly
// unitary on the discrete L^2.
SampledField half_wave(const SampledField& u0, double t);

// u(t) = cos(t|D|) f0 + sin(t|D|)/|D| f1, assembled from the two half-wave
// multipliers; the |xi| = 0 bin of sin(t|xi|)/|xi| evaluates to t.
SampledField cauchy_second_order(const CauchyData& data);

// Spectral energy ||d_t u||^2 + ||grad u||^2 at time t.
double wave_energy(const CauchyData& data);

// <D>^s filter, the Sobolev lift used by the loss sweeps.
SampledField bessel_filter(const SampledField& u, double s);

struct SweepRatioReport {
  std::vector<int> grid_sizes;
  std::vector<double> ratios;  // sup over the family per grid size
  double refinement_ratio = 0.0;  // last / first
  std::string verdict;            // "stable" | "growing" | "inconclusive"
};

// sup over the probe family of ||u(t)||_{H^{s-eps,p}} / sum_j ||f_j||_{H^{s+m_p-j,p}}
// with m_p = (n-1)|1/p - 1/2|, across two grid refinements.  Setting
// shift_data_norm = false drops the m_p shift in the denominator (the
// no-loss reference that should grow when m_p > 0).
SweepRatioReport sobolev_loss_sweep(int n, double p, double s, double t,
                                    const std::vector<int>& N_list, double L,
                                    const TestFamilyConfig& fam_cfg,
                                    double eps = 0.1,
                                    bool shift_data_norm = true);

// ||chi u(t)||_{H^{s,p}_w} / sum_j ||f_j||_{H^{s+(n+1)/2-j,p}_w} for one
// Cauchy datum; t = 0 violates the rank condition and is an error.
struct WeightedLocalReport {
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
};

WeightedLocalReport weighted_local_estimate(
    const CauchyData& data, const Weight& w, double p, double s,
    const std::function<double(const Point&)>& chi);

}  // namespace fiolab

#endif
