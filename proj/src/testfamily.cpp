#include "fiolab/testfamily.hpp"

#include <cmath>
#include <numbers>

#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

std::uint64_t DetRng::next_u64() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double DetRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

namespace {

SampledField gaussian_freq(const Grid& g, const Point& center, double width,
                           const Point& k0) {
  // u(x) = exp(-|x-c|^2 / (2 w^2)) e^{i<k0,x>}
  // uhat(xi) = (2 pi)^{n/2} w^n exp(-w^2 |xi-k0|^2 / 2) e^{-i<xi-k0,c>}
  SampledField uhat(g, Side::frequency);
  const int n = g.dim;
  const double amp = std::pow(2.0 * std::numbers::pi * width * width, 0.5 * n) /
                     std::pow(width, 0.0);
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const Point xi = g.freq_at(k);
    double q = 0.0, ph = 0.0;
    for (int d = 0; d < n; ++d) {
      const double dd = xi[d] - k0[d];
      q += dd * dd;
      ph -= dd * center[d];
    }
    const double mag = amp * std::exp(-0.5 * width * width * q);
    uhat.values[k] = mag * cdouble(std::cos(ph), std::sin(ph));
  }
  return uhat;
}

}  // namespace

std::vector<TestMember> make_test_family(const Grid& g, double p, const Weight& w,
                                         const TestFamilyConfig& cfg) {
  DetRng rng(cfg.seed);
  std::vector<TestMember> fam;
  const double nyq = g.nyquist();
  const double dx = g.spacing();

  auto push = [&](const std::string& tag, SampledField&& uhat) {
    SampledField u = transform(uhat, Side::physical);
    const double nrm = weighted_norm(u, p, w);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) return;  // incompatible with w
    for (cdouble& v : u.values) v /= nrm;
    fam.push_back({tag, std::move(u)});
  };

  for (int i = 0; i < cfg.gaussians; ++i) {
    Point c{}, k0{};
    for (int d = 0; d < g.dim; ++d)
      c[d] = (rng.next_double() - 0.5) * g.half_width * 0.5;
    // widths from the grid scale up to O(1)
    const double widths[] = {dx, 2.0 * dx, 4.0 * dx, 0.25, 0.5, 1.0};
    const double width = widths[i % 6];
    if (i % 2 == 1)
      for (int d = 0; d < g.dim; ++d) k0[d] = (d == 0 ? 0.7 * nyq : 0.0);
    push("gaussian_bumps[" + std::to_string(i) + "]", gaussian_freq(g, c, width, k0));
  }

  for (int i = 0; i < cfg.annular; ++i) {
    SampledField uhat(g, Side::frequency);
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const double r = g.freq_norm_at(k);
      if (r >= 0.5 * nyq && r <= nyq) {
        const double th = 2.0 * std::numbers::pi * rng.next_double();
        uhat.values[k] = cdouble(std::cos(th), std::sin(th));
      }
    }
    push("annular_random[" + std::to_string(i) + "]", std::move(uhat));
  }

  for (double mu : cfg.f_mu) {
    SampledField uhat(g, Side::frequency);
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const double r = g.freq_norm_at(k);
      const double mag = std::pow(1.0 + r * r, -0.5 * mu);
      uhat.values[k] = mag * cdouble(std::cos(r), -std::sin(r));
    }
    push("f_mu[" + std::to_string(mu) + "]", std::move(uhat));
  }

  for (int i = 0; i < cfg.indicators; ++i) {
    // smoothed indicator of [-a, a]^n via its separable transform, evaluated
    // with the smooth profile's numerically tabulated line transform
    const double a = i == 0 ? 1.0 : 0.25;
    SampledField uhat(g, Side::frequency);
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const Point xi = g.freq_at(k);
      cdouble v(1.0, 0.0);
      for (int d = 0; d < g.dim; ++d) {
        // transform of the even profile unit_bump(|x|/a - 1 smoothing): use
        // 2a sinc-like integral of the smooth step; 65-pt quadrature per axis
        double re = 0.0;
        const int q = 64;
        for (int t = 0; t <= q; ++t) {
          const double x = -2.0 * a + 4.0 * a * t / q;
          const double prof = unit_bump(std::abs(x) / (2.0 * a));
          const double wq = (t == 0 || t == q) ? 0.5 : 1.0;
          re += wq * prof * std::cos(xi[d] * x);
        }
        v *= re * (4.0 * a / q);
      }
      uhat.values[k] = v;
    }
    push("indicator_smoothed[" + std::to_string(i) + "]", std::move(uhat));
  }

  if (cfg.include_spike) {
    // flat spectrum = one-cell spike at a seeded off-origin cell; the center
    // snaps to the lattice so the probe stays a true one-cell indicator at
    // every grid size instead of a shifted Dirichlet kernel
    SampledField uhat(g, Side::frequency);
    Point c{};
    for (int d = 0; d < g.dim; ++d) {
      const double raw = (rng.next_double() - 0.5) * g.half_width * 0.25;
      c[d] = -g.half_width +
             std::round((raw + g.half_width) / dx) * dx;
    }
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const Point xi = g.freq_at(k);
      double ph = 0.0;
      for (int d = 0; d < g.dim; ++d) ph -= xi[d] * c[d];
      uhat.values[k] = cdouble(std::cos(ph), std::sin(ph));
    }
    push("indicator_spike", std::move(uhat));
  }

  if (cfg.include_dc) {
    SampledField uhat(g, Side::frequency);
    uhat.values[0] = cdouble(1.0, 0.0);
    push("dc", std::move(uhat));
  }

  if (fam.empty()) throw precondition_error("make_test_family: empty family");
  return fam;
}

}  // namespace fiolab
