#include "fiolab/hyperbolic.hpp"

#include <cmath>
#include <numbers>

#include "fiolab/applicator.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

double norm_of(const Point& p, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

}  // namespace

SampledField half_wave(const SampledField& u0, double t) {
  if (u0.side != Side::physical)
    throw config_error("half_wave: physical-side field required");
  const int n = u0.grid.dim;
  return apply_multiplier(
      [t, n](const Point& xi) {
        const double ang = t * norm_of(xi, n);
        return cdouble(std::cos(ang), std::sin(ang));
      },
      u0);
}

SampledField cauchy_second_order(const CauchyData& data) {
  if (data.f0.grid.size() != data.f1.grid.size())
    throw config_error("cauchy_second_order: data on mismatched grids");
  const int n = data.f0.grid.dim;
  const double t = data.t;
  // cos(t|D|) f0: the half-wave pair (e^{it|D|} + e^{-it|D|})/2
  SampledField u = apply_multiplier(
      [t, n](const Point& xi) {
        return cdouble(std::cos(t * norm_of(xi, n)), 0.0);
      },
      data.f0);
  // sin(t|D|)/|D| f1 with the removable singularity at the origin bin
  const SampledField v = apply_multiplier(
      [t, n](const Point& xi) {
        const double r = norm_of(xi, n);
        return cdouble(r == 0.0 ? t : std::sin(t * r) / r, 0.0);
      },
      data.f1);
  accumulate(u, v, cdouble(1.0, 0.0));
  return u;
}

double wave_energy(const CauchyData& data) {
  const double t = data.t;
  const SampledField f0h = transform(data.f0, Side::frequency);
  const SampledField f1h = transform(data.f1, Side::frequency);
  const Grid& g = f0h.grid;

  // d_t u^ = -|xi| sin(t|xi|) f0^ + cos(t|xi|) f1^
  // grad u^ = i xi (cos(t|xi|) f0^ + sin(t|xi|)/|xi| f1^)
  double dxin = 1.0;
  for (int d = 0; d < g.dim; ++d)
    dxin *= g.dual_spacing() / (2.0 * std::numbers::pi);
  double e = 0.0;
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double r = g.freq_norm_at(k);
    const cdouble ut =
        -r * std::sin(t * r) * f0h.values[k] + std::cos(t * r) * f1h.values[k];
    const cdouble uamp = std::cos(t * r) * f0h.values[k] +
                         (r == 0.0 ? t : std::sin(t * r) / r) * f1h.values[k];
    e += (std::norm(ut) + r * r * std::norm(uamp)) * dxin;
  }
  return e;
}

SampledField bessel_filter(const SampledField& u, double s) {
  const int n = u.grid.dim;
  return apply_multiplier(
      [s, n](const Point& xi) {
        double q = 1.0;
        for (int d = 0; d < n; ++d) q += xi[d] * xi[d];
        return cdouble(std::pow(q, 0.5 * s), 0.0);
      },
      u);
}

SweepRatioReport sobolev_loss_sweep(int n, double p, double s, double t,
                                    const std::vector<int>& N_list, double L,
                                    const TestFamilyConfig& fam_cfg, double eps,
                                    bool shift_data_norm) {
  if (N_list.size() < 2)
    throw config_error("sobolev_loss_sweep: need at least two grid sizes");
  const double m_p = (n - 1) * std::abs(1.0 / p - 0.5);
  const Weight w1 = constant_weight();

  SweepRatioReport rep;
  for (int N : N_list) {
    const Grid g = make_grid_unchecked(n, N, L);
    const auto fam = make_test_family(g, p, w1, fam_cfg);
    double worst = 0.0;
    for (const TestMember& mem : fam) {
      // Cauchy data (f0, f1) = (member, member); solve and measure.
      CauchyData data{mem.field, mem.field, t};
      const SampledField u = cauchy_second_order(data);
      const double num = weighted_norm(bessel_filter(u, s - eps), p, w1);
      const double shift = shift_data_norm ? m_p : 0.0;
      const double den =
          weighted_norm(bessel_filter(data.f0, s + shift), p, w1) +
          weighted_norm(bessel_filter(data.f1, s + shift - 1.0), p, w1);
      if (den > 0.0) worst = std::max(worst, num / den);
    }
    rep.grid_sizes.push_back(N);
    rep.ratios.push_back(worst);
  }
  rep.refinement_ratio = rep.ratios.back() / rep.ratios.front();
  rep.verdict = rep.refinement_ratio <= 1.5   ? "stable"
                : rep.refinement_ratio >= 2.0 ? "growing"
                                              : "inconclusive";
  return rep;
}

WeightedLocalReport weighted_local_estimate(
    const CauchyData& data, const Weight& w, double p, double s,
    const std::function<double(const Point&)>& chi) {
  if (data.t == 0.0)
    throw precondition_error(
        "weighted_local_estimate: t = 0 violates the rank condition");
  const int n = data.f0.grid.dim;
  const Grid& g = data.f0.grid;

  const SampledField u = cauchy_second_order(data);
  SampledField chiu = bessel_filter(u, s);
  for (std::int64_t i = 0; i < g.size(); ++i)
    chiu.values[i] *= chi(g.point_at(i));

  WeightedLocalReport rep;
  rep.numerator = weighted_norm(chiu, p, w);
  const double loss = 0.5 * (n + 1);
  rep.denominator = weighted_norm(bessel_filter(data.f0, s + loss), p, w) +
                    weighted_norm(bessel_filter(data.f1, s + loss - 1.0), p, w);
  rep.ratio = rep.denominator > 0.0 ? rep.numerator / rep.denominator : 0.0;
  return rep;
}

}  // namespace fiolab
