#include "fiolab/normest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"
#include "fiolab/oscquad.hpp"
#include "fiolab/symbol.hpp"

namespace fiolab {

PowerIterResult opnorm_l2(const FioOperator& op, const Grid& g, int iters,
                          std::uint64_t seed) {
  DetRng rng(seed);
  SampledField v(g, Side::physical);
  for (cdouble& z : v.values)
    z = cdouble(rng.next_double() - 0.5, rng.next_double() - 0.5);

  PowerIterResult res;
  double prev = 0.0;
  for (int it = 0; it < iters; ++it) {
    const double nv = v.l2_norm();
    if (nv == 0.0) break;
    for (cdouble& z : v.values) z /= nv;
    const SampledField tv = apply_fio(op, v);
    const double sigma = tv.l2_norm();
    res.value = sigma;
    res.iters_used = it + 1;
    res.last_rel_change = std::abs(sigma - prev) / (sigma > 0.0 ? sigma : 1.0);
    if (it > 0 && res.last_rel_change < 1e-6) {
      res.converged = true;
      break;
    }
    prev = sigma;
    v = apply_fio_adjoint(op, tv);
  }
  return res;
}

FamilyNormResult opnorm_lpw(const FioOperator& op, const Grid& g, double p,
                            const Weight& w, const std::vector<TestMember>& fam) {
  if (fam.empty()) throw precondition_error("opnorm_lpw: empty probe family");
  if (!(p > 1.0) || std::isinf(p))
    throw config_error("opnorm_lpw: p must lie in (1, infinity)");
  (void)g;
  FamilyNormResult res;
  for (const TestMember& m : fam) {
    const SampledField tu = apply_fio(op, m.field);
    const double ratio = weighted_norm(tu, p, w);  // members are unit-norm
    if (ratio > res.value) {
      res.value = ratio;
      res.maximizer_tag = m.tag;
    }
  }
  return res;
}

GrowthTable threshold_sweep(const PhaseSpec& phase, double p,
                            const std::vector<double>& m_list,
                            const std::vector<int>& N_list, double L,
                            const TestFamilyConfig& fam_cfg) {
  if (N_list.size() < 2)
    throw config_error("threshold_sweep: need at least two grid sizes");
  GrowthTable table;
  const Weight w = constant_weight();
  for (double m : m_list) {
    std::vector<double> ests, ns;
    for (int N : N_list) {
      const Grid g = make_grid_unchecked(phase.dim, N, L);
      const auto fam = make_test_family(g, p, w, fam_cfg);
      const FioOperator op = make_fio(bessel_power_symbol(m), phase);
      const FamilyNormResult r = opnorm_lpw(op, g, p, w, fam);
      table.rows.push_back({m, N, r.value, r.maximizer_tag});
      ests.push_back(r.value);
      ns.push_back(N);
    }
    GrowthTable::Verdict v;
    v.m = m;
    v.total_ratio = ests.back() / ests.front();
    v.fitted_exponent = loglog_slope(ns, ests);
    v.verdict = v.total_ratio <= 1.5   ? "stable"
                : v.total_ratio >= 2.0 ? "growing"
                                       : "inconclusive";
    table.verdicts.push_back(v);
  }
  return table;
}

Ce2Report ce2_profile(double m, double mu, double b, double p, const Grid& g,
                      bool require_singular) {
  if (g.dim != 1) throw config_error("ce2_profile: implemented for n = 1");
  const int n = 1;
  if (require_singular && !(mu < m + n))
    throw precondition_error("ce2_profile: hypothesis mu < m + n violated");

  Ce2Report rep;
  rep.claim_slope = mu - m - n;

  const double s = m - mu;
  auto gfun = [s](double r) { return std::pow(1.0 + r * r, 0.5 * s); };
  auto gprime = [s](double r) {
    return s * r * std::pow(1.0 + r * r, 0.5 * s - 1.0);
  };

  // log-spaced abscissae across the fit window
  const int npts = 9;
  for (int i = 0; i < npts; ++i) {
    const double x =
        std::exp(std::log(1.0 / 64.0) +
                 (std::log(0.25) - std::log(1.0 / 64.0)) * i / (npts - 1));
    rep.xs.push_back(x);
    rep.profile.push_back(radial_profile_1d(gfun, gprime, x));
  }

  // raw fit, and the dyadic-differenced fit that cancels the smooth additive
  // part of the kernel so the singularity exponent is what gets measured
  rep.fitted_slope_raw = loglog_slope(rep.xs, rep.profile);
  std::vector<double> diff(npts);
  for (int i = 0; i < npts; ++i)
    diff[i] = rep.profile[i] - radial_profile_1d(gfun, gprime, 2.0 * rep.xs[i]);
  rep.fitted_slope = loglog_slope(rep.xs, diff);

  if (std::abs(s + 2.0) < 1e-12) {
    double err = 0.0;
    for (int i = 0; i < npts; ++i)
      err = std::max(err, std::abs(rep.profile[i] -
                                   std::numbers::pi * std::exp(-rep.xs[i])));
    rep.closed_form_max_err = err;
  }

  // grid-side weighted norms of f_mu and T_m f_mu
  SampledField fhat(g, Side::frequency);
  SampledField tfhat(g, Side::frequency);
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double r = g.freq_norm_at(k);
    const double mag = std::pow(1.0 + r * r, -0.5 * mu);
    fhat.values[k] = mag * cdouble(std::cos(r), -std::sin(r));
    tfhat.values[k] = std::pow(1.0 + r * r, 0.5 * (m - mu));
  }
  const Weight w = truncated_power_weight(b);
  rep.f_norm = weighted_norm(transform(fhat, Side::physical), p, w);
  rep.tf_norm = weighted_norm(transform(tfhat, Side::physical), p, w);
  rep.f_finite_analytic = mu > 0.5 * (n + 1) - 1.0 / p && b < n;
  rep.tf_infinite_analytic = (mu - m - n) * p - b <= -static_cast<double>(n);
  return rep;
}

StationaryDecayResult stationary_decay(
    const std::function<double(double)>& phase_radial,
    const std::function<double(double)>& phase_radial_2nd,
    const std::function<double(double)>& cutoff_radial, int n,
    const std::vector<double>& lambda_list, double mu_support,
    bool allow_degenerate) {
  if (lambda_list.size() < 5)
    throw config_error("stationary_decay: need >= 5 lambda values");

  StationaryDecayResult res;
  res.reference_slope = n * mu_support - 0.5 * n;

  const double sphere_vol = n == 1 ? 2.0 : 2.0 * std::numbers::pi;

  for (double lam : lambda_list) {
    const double scale = std::pow(lam, mu_support);
    // quadrature range: 8x the nominal support so decaying cutoffs (gaussian)
    // are integrated to below rounding; compact cutoffs zero-skip the excess
    const double R = 8.0 * scale;
    // Hessian floor on the support: det = phi'' (phi'/r)^{n-1}
    if (!allow_degenerate) {
      for (int i = 1; i <= 4096; ++i) {
        const double r = R * i / 4096.0;
        if (cutoff_radial(r / scale) <= 1e-12) continue;
        const double rad = phase_radial_2nd(r);
        const double ang =
            (phase_radial(r + 1e-6) - phase_radial(r - 1e-6)) / (2e-6 * r);
        const double d = rad * std::pow(ang, n - 1);
        if (std::abs(d) < 1e-2)
          throw precondition_error(
              "stationary_decay: degenerate frequency Hessian on the support");
      }
    }
    // oscillation-resolving Simpson step
    double max_rate = 1.0;
    for (int i = 1; i <= 256; ++i) {
      const double r = R * i / 256.0;
      if (cutoff_radial(r / scale) <= 1e-12) continue;
      const double dr = 1e-6 * std::max(1.0, r);
      max_rate = std::max(max_rate,
                          lam * std::abs(phase_radial(r + dr) - phase_radial(r - dr)) /
                              (2.0 * dr));
    }
    const double step = std::min(R / 512.0, 0.2 / max_rate);
    std::int64_t panels = static_cast<std::int64_t>(std::ceil(R / step));
    if (panels & 1) ++panels;
    const double h = R / panels;
    double re = 0.0, im = 0.0;
#pragma omp parallel for reduction(+ : re, im)
    for (std::int64_t i = 0; i <= panels; ++i) {
      const double r = i * h;
      const double wq = (i == 0 || i == panels) ? 1.0 : (i & 1) ? 4.0 : 2.0;
      const double amp = cutoff_radial(r / scale) * std::pow(r, n - 1);
      if (amp == 0.0) continue;
      const double ph = lam * phase_radial(r);
      re += wq * amp * std::cos(ph);
      im += wq * amp * std::sin(ph);
    }
    const double mag = sphere_vol * std::hypot(re, im) * h / 3.0;
    res.lambdas.push_back(lam);
    res.values.push_back(mag);
  }
  res.fitted_slope = loglog_slope(res.lambdas, res.values);
  return res;
}

double kernel_decay_profile(const std::function<double(double)>& b_radial,
                            double mu, const Grid& g, double y_max) {
  if (!(mu >= 0.0) || mu >= 1.0)
    throw config_error("kernel_decay_profile: mu must lie in [0, 1)");
  const std::int64_t total = g.size();
  // collect the nonzero frequency bins once
  std::vector<Point> xi;
  std::vector<double> bval;
  for (std::int64_t k = 0; k < total; ++k) {
    const double r = g.freq_norm_at(k);
    const double v = b_radial(r);
    if (v != 0.0) {
      xi.push_back(g.freq_at(k));
      bval.push_back(v);
    }
  }
  double dxin = 1.0;
  for (int d = 0; d < g.dim; ++d) dxin *= g.dual_spacing();

  double sup = 0.0;
#pragma omp parallel for reduction(max : sup)
  for (std::int64_t i = 0; i < total; ++i) {
    const Point y = g.point_at(i);
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) r2 += y[d] * y[d];
    if (r2 > y_max * y_max) continue;
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < xi.size(); ++k) {
      double ph = 0.0;
      for (int d = 0; d < g.dim; ++d) ph -= y[d] * xi[k][d];
      re += bval[k] * std::cos(ph);
      im += bval[k] * std::sin(ph);
    }
    const double weight = std::pow(1.0 + r2, 0.5 * (g.dim + mu));
    sup = std::max(sup, weight * std::hypot(re, im) * dxin);
  }
  return sup;
}

SampledField commutator_apply(const std::function<double(const Point&)>& b,
                              const FioOperator& op, const SampledField& u,
                              int k) {
  if (k < 1) throw config_error("commutator_apply: k >= 1 required");
  const Grid& g = u.grid;
  std::vector<double> bvals(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) bvals[i] = b(g.point_at(i));

  // binomial coefficients
  std::vector<double> binom(k + 1, 1.0);
  for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;

  SampledField out(g, Side::physical);
  SampledField bj_u = u;  // b^j * u
  for (int j = 0; j <= k; ++j) {
    const SampledField t = apply_fio(op, bj_u);
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    for (std::int64_t i = 0; i < g.size(); ++i)
      out.values[i] +=
          sign * binom[j] * std::pow(bvals[i], k - j) * t.values[i];
    if (j < k)
      for (std::int64_t i = 0; i < g.size(); ++i) bj_u.values[i] *= bvals[i];
  }
  return out;
}

SampledField commutator_direct(const std::function<double(const Point&)>& b,
                               const FioOperator& op, const SampledField& u) {
  const Grid& g = u.grid;
  SampledField bu = u;
  for (std::int64_t i = 0; i < g.size(); ++i) bu.values[i] *= b(g.point_at(i));
  SampledField t_bu = apply_fio(op, bu);
  const SampledField tu = apply_fio(op, u);
  SampledField out(g, Side::physical);
  for (std::int64_t i = 0; i < g.size(); ++i)
    out.values[i] = b(g.point_at(i)) * tu.values[i] - t_bu.values[i];
  return out;
}

SubstitutionReport substitution_check(
    const std::function<Point(const Point&)>& t, double c, const Grid& g) {
  if (g.dim != 1)
    throw config_error("substitution_check: implemented for n = 1");
  SubstitutionReport rep;
  rep.density_bound = 2.0 * std::sqrt(static_cast<double>(g.dim)) / c;

  // spot-check the expansion bound on a deterministic pair lattice
  const std::int64_t total = g.size();
  const std::int64_t stride = std::max<std::int64_t>(1, total / 64);
  rep.min_expansion_ratio = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < total; i += stride) {
    for (std::int64_t j = i + stride; j < total; j += stride) {
      const Point xi = g.point_at(i), xj = g.point_at(j);
      const double dx = std::abs(xi[0] - xj[0]);
      const double dt = std::abs(t(xi)[0] - t(xj)[0]);
      const double ratio = dt / dx;
      rep.min_expansion_ratio = std::min(rep.min_expansion_ratio, ratio);
      if (ratio < c * (1.0 - 1e-9)) {
        std::ostringstream os;
        os << "substitution_check: |t(x)-t(y)| >= c|x-y| fails at x=" << xi[0]
           << ", y=" << xj[0] << " (ratio " << ratio << " < c " << c << ")";
        throw precondition_error(os.str());
      }
    }
  }

  // pushforward density by histogram: bins of width 4 dx over the image
  // (wide enough for expansion factors up to 4, narrow enough for the
  // one-percent formula check)
  const double dx = g.spacing();
  const double W = 4.0 * dx;
  double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
  std::vector<double> timg(total);
  for (std::int64_t i = 0; i < total; ++i) {
    timg[i] = t(g.point_at(i))[0];
    tmin = std::min(tmin, timg[i]);
    tmax = std::max(tmax, timg[i]);
  }
  const int nbins = static_cast<int>((tmax - tmin) / W) + 1;
  std::vector<double> density(nbins, 0.0);
  for (std::int64_t i = 0; i < total; ++i) {
    const int bin = std::min(nbins - 1, static_cast<int>((timg[i] - tmin) / W));
    density[bin] += dx / W;
  }
  for (double d : density) rep.max_density = std::max(rep.max_density, d);

  // substitution formula on three smooth positive test functions (a signed
  // test would cancel its own integral and leave the relative check ill-posed)
  const std::vector<std::function<double(double)>> tests = {
      [](double z) { return std::exp(-z * z / 4.0); },
      [](double z) { return 1.0 / (1.0 + z * z); },
      [](double z) {
        const double c = std::cos(0.5 * z);
        return c * c * std::exp(-z * z / 16.0);
      },
  };
  for (const auto& f : tests) {
    double lhs = 0.0;
    for (std::int64_t i = 0; i < total; ++i) lhs += f(timg[i]) * dx;
    double rhs = 0.0;
    for (int bb = 0; bb < nbins; ++bb)
      rhs += f(tmin + (bb + 0.5) * W) * density[bb] * W;
    rep.formula_rel_errors.push_back(std::abs(lhs - rhs) /
                                     std::max(1e-300, std::abs(lhs)));
  }
  return rep;
}

}  // namespace fiolab
