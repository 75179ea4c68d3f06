#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fiolab/cone_frame.hpp"
#include "fiolab/dyadic.hpp"
#include "fiolab/errors.hpp"
#include "fiolab/phase_reduce.hpp"
#include "fiolab/testfamily.hpp"

using namespace fiolab;

TEST_CASE("littlewood-paley partition of unity") {
  const Grid g = make_grid(1, 256, 16.0);
  const DyadicPartition dp = littlewood_paley(g, 5);
  CHECK(dp.j_max == 5);  // six pieces including chi_0
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double r = g.freq_norm_at(k);
    if (r <= 32.0) CHECK(std::abs(dp.sum(r) - 1.0) <= 1e-12);
  }
  // support checks
  CHECK(dp.piece(3, 3.0) == 0.0);   // outside [4, 16]
  CHECK(dp.piece(0, 0.0) == 1.0);
  CHECK(dp.piece(2, 32.0) == 0.0);
  for (int j = 1; j <= 5; ++j) {
    CHECK(dp.piece(j, std::ldexp(1.0, j - 1) * 0.99) == 0.0);
    CHECK(dp.piece(j, std::ldexp(1.0, j + 1) * 1.01) == 0.0);
    CHECK(dp.piece(j, std::ldexp(1.0, j)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("tail folding covers the whole grid") {
  const Grid g = make_grid(2, 64, 8.0);
  const DyadicPartition dp = littlewood_paley(g, 4, /*tail_to_last=*/true);
  double worst = 0.0;
  for (std::int64_t k = 0; k < g.size(); ++k)
    worst = std::max(worst, std::abs(dp.sum(g.freq_norm_at(k)) - 1.0));
  CHECK(worst <= 1e-12);
}

TEST_CASE("littlewood-paley rejects an oversized J_max") {
  const Grid g = make_grid(1, 256, 16.0);  // Nyquist = 8 pi ~ 25.1
  CHECK_THROWS_AS(littlewood_paley(g, 6), config_error);
}

TEST_CASE("sss frame in 2d at h =1/16") {
  const ConeFrame f = sss_frame(1.0 / 16.0, 2);
  CHECK(f.count() >= 12);
  CHECK(f.count() <= 50);
  const double sep = f.aperture();
  for (int a = 0; a < f.count(); ++a)
    for (int b = a + 1; b < f.count(); ++b) {
      double s = 0.0;
      for (int d = 0; d < 2; ++d)
        s += (f.centers[a][d] - f.centers[b][d]) * (f.centers[a][d] - f.centers[b][d]);
      CHECK(std::sqrt(s) >= sep - 1e-12);
    }
  // brute-force covering check over 10^4 directions
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double th = 2.0 * std::numbers::pi * i / 10000.0;
    const Point p{std::cos(th), std::sin(th)};
    double best = 2.0;
    for (const Point& c : f.centers)
      best = std::min(best, std::hypot(p[0] - c[0], p[1] - c[1]));
    worst = std::max(worst, best);
  }
  CHECK(worst <= sep * 1.01);

  // partition of unity on annulus lattice points
  const Grid g = make_grid(2, 64, 8.0);
  for (std::int64_t k = 0; k < g.size(); k += 7) {
    const Point xi = g.freq_at(k);
    if (g.freq_norm_at(k) < 0.25) continue;
    double s = 0.0;
    for (int nu = 0; nu < f.count(); ++nu) s += f.psi(nu, xi);
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("sss frame edge cases") {
  const ConeFrame one = sss_frame(0.3, 1);
  CHECK(one.count() == 2);
  CHECK(one.psi(0, Point{2.5}) + one.psi(1, Point{2.5}) == 1.0);
  CHECK(one.psi(0, Point{-2.5}) + one.psi(1, Point{-2.5}) == 1.0);

  const ConeFrame coarse = sss_frame(1.0, 2);
  CHECK(coarse.count() <= 8);
  CHECK(coarse.count() >= 2);

  // deterministic construction
  const ConeFrame f1 = sss_frame(1.0 / 16.0, 2);
  const ConeFrame f2 = sss_frame(1.0 / 16.0, 2);
  REQUIRE(f1.count() == f2.count());
  for (int nu = 0; nu < f1.count(); ++nu)
    for (int d = 0; d < 2; ++d) CHECK(f1.centers[nu][d] == f2.centers[nu][d]);

  CHECK_THROWS_AS(sss_frame(0.0, 2), config_error);
  CHECK_THROWS_AS(sss_frame(0.5, 4), config_error);
}

TEST_CASE("cardinality scaling in 2d") {
  // J h^{1/2} stays within fixed bounds across scales
  for (double h : {0.25, 1.0 / 16.0, 1.0 / 64.0}) {
    const ConeFrame f = sss_frame(h, 2);
    const double ratio = f.cardinality_ratio();
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 8.0);
  }
}

namespace {

// measured sup of a directional derivative of psi^nu by central differences
double psi_directional_sup(const ConeFrame& f, int nu, bool radial) {
  const double ap = f.aperture();
  const double step = radial ? 1e-4 : 1e-4 * ap;
  double sup = 0.0;
  const Point c = f.centers[nu];
  const Point orth{-c[1], c[0]};
  for (int ir = 0; ir <= 4; ++ir) {
    const double r = 0.8 + 0.15 * ir;
    for (int it = -8; it <= 8; ++it) {
      const double t = 1.05 * ap * it / 8.0;
      Point xi{};
      const double cc = 1.0 - 0.5 * t * t;
      const double ss = t * std::sqrt(std::max(0.0, 1.0 - 0.25 * t * t));
      for (int d = 0; d < 2; ++d) xi[d] = r * (cc * c[d] + ss * orth[d]);
      Point p = xi, q = xi;
      for (int d = 0; d < 2; ++d) {
        const double dir = radial ? c[d] : orth[d];
        p[d] += step * dir;
        q[d] -= step * dir;
      }
      sup = std::max(sup, std::abs(f.psi(nu, p) - f.psi(nu, q)) / (2.0 * step));
    }
  }
  return sup;
}

}  // namespace

TEST_CASE("psi derivative bounds scale like h^{-1/2} and radially like 1") {
  double prev_ortho_c = -1.0, prev_radial = -1.0;
  for (double h : {0.25, 1.0 / 16.0, 1.0 / 64.0}) {
    const ConeFrame f = sss_frame(h, 2);
    double ortho = 0.0, radial = 0.0;
    for (int nu = 0; nu < std::min(4, f.count()); ++nu) {
      ortho = std::max(ortho, psi_directional_sup(f, nu, false));
      radial = std::max(radial, psi_directional_sup(f, nu, true));
    }
    const double ortho_c = ortho * std::sqrt(h);  // should be ~ constant
    if (prev_ortho_c > 0.0) {
      CHECK(ortho_c <= 4.0 * prev_ortho_c);
      CHECK(ortho_c >= 0.25 * prev_ortho_c);
    }
    if (prev_radial > 0.0) CHECK(radial <= 4.0 * std::max(prev_radial, 1.0));
    prev_ortho_c = ortho_c;
    prev_radial = radial;
  }
}

TEST_CASE("sss symbol with a linear phase is plain localization") {
  const ConeFrame f = sss_frame(0.25, 2);
  const SymbolSpec b = sss_symbol(constant_symbol(), linear_phase(2), f, 0, 0.25);
  // pivot factor is identically 1, so values are real nonnegative
  for (double r : {0.8, 1.0, 1.2}) {
    for (int it = -4; it <= 4; ++it) {
      Point xi{r * f.centers[0][0], r * f.centers[0][1]};
      xi[0] += 0.05 * it;
      const cdouble v = b.eval(Point{0.3, -0.7}, xi);
      CHECK(std::abs(v.imag()) <= 1e-14);
      CHECK(v.real() >= -1e-14);
    }
  }
}

TEST_CASE("sss symbol derivative bounds for the wave phase") {
  const double h = 1.0 / 16.0;
  const ConeFrame f = sss_frame(h, 2);
  const std::vector<Point> xs = {Point{0.0, 0.0}, Point{0.5, -1.0}};
  for (int nu = 0; nu < std::min(6, f.count()); ++nu) {
    const auto diag =
        sss_symbol_diagnostics(constant_symbol(), wave_phase(2, 1.0), f, nu, h, 1, xs);
    for (const auto& e : diag.entries) {
      if (e.order_radial == 0 && e.order_ortho == 1) {
        // sup |d_{xi'} b^nu| <= C h^{-1/2} with C <= 10
        CHECK(e.measured_sup <= 10.0 * e.reference);
      }
      if (e.order_radial == 0 && e.order_ortho == 0)
        CHECK(e.measured_sup <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("sss symbol amplitude scale for a decaying symbol") {
  const double h = 1.0 / 16.0;
  const ConeFrame f = sss_frame(h, 2);
  const SymbolSpec a = bessel_power_symbol(-1.0);
  const std::vector<Point> xs = {Point{0.0, 0.0}};
  const auto diag = sss_symbol_diagnostics(a, wave_phase(2, 1.0), f, 0, h, 0, xs);
  // |a(xi/h)| ~ h on the annulus, so sup |b| <= C h
  REQUIRE(!diag.entries.empty());
  CHECK(diag.entries[0].measured_sup <= 2.0 * h);
  CHECK(diag.entries[0].measured_sup >= 0.2 * h);
}

TEST_CASE("sss symbol rejects out-of-range cones") {
  const ConeFrame f = sss_frame(0.25, 2);
  CHECK_THROWS_AS(sss_symbol(constant_symbol(), wave_phase(2, 1.0), f, f.count(), 0.25),
                  config_error);
}

TEST_CASE("phase reduction reconstructs exactly") {
  for (int M : {16, 24}) {
    const ReducedPhase rp = phase_reduce(wave_phase(2, 1.0), M);
    DetRng rng(31);
    for (int i = 0; i < 200; ++i) {
      Point x{4.0 * (rng.next_double() - 0.5), 4.0 * (rng.next_double() - 0.5)};
      const double th = 2.0 * std::numbers::pi * rng.next_double();
      const double r = 0.5 + 4.0 * rng.next_double();
      const Point xi{r * std::cos(th), r * std::sin(th)};
      for (int l = 0; l < rp.pieces(); ++l) {
        if (rp.cutoff(l, xi) == 0.0) continue;
        const Point piv = rp.pivot(l, x);
        const double recon = rp.theta(l, x, xi) + piv[0] * xi[0] + piv[1] * xi[1];
        CHECK(std::abs(recon - rp.phi.eval(x, xi)) <= 1e-12 * std::max(1.0, std::abs(recon)));
      }
    }
  }
}

TEST_CASE("phase reduction: linear phase has zero theta") {
  const ReducedPhase rp = phase_reduce(linear_phase(2), 16);
  const Point x{1.0, -2.0};
  const Point xi{0.3, 1.7};
  for (int l = 0; l < rp.pieces(); ++l) {
    CHECK(std::abs(rp.theta(l, x, xi)) <= 1e-12);
    CHECK(rp.pivot(l, x)[0] == doctest::Approx(x[0]));
    CHECK(rp.pivot(l, x)[1] == doctest::Approx(x[1]));
  }
}

TEST_CASE("phase reduction: wave phase theta and derivative smallness") {
  const int M = 16;
  const ReducedPhase rp = phase_reduce(wave_phase(2, 1.0), M);
  // piece centered nearest e1: theta(x, xi) = |xi| - xi_1 for that center
  int l0 = 0;
  double best = 2.0;
  for (int l = 0; l < rp.pieces(); ++l) {
    const double d = std::hypot(rp.centers[l][0] - 1.0, rp.centers[l][1]);
    if (d < best) {
      best = d;
      l0 = l;
    }
  }
  REQUIRE(best <= 1e-12);  // M divides the circle so e1 is a center
  const Point x{0.4, -0.9};
  const Point xi{2.0, 0.1};
  CHECK(rp.theta(l0, x, xi) ==
        doctest::Approx(std::hypot(xi[0], xi[1]) - xi[0]).epsilon(1e-12));

  // |d_xi theta| <= C d on the support of each cutoff
  const double d = rp.diameter;
  DetRng rng(37);
  for (int l = 0; l < rp.pieces(); ++l) {
    for (int i = 0; i < 50; ++i) {
      const double th = 2.0 * std::numbers::pi * rng.next_double();
      const double r = 0.5 + 2.0 * rng.next_double();
      const Point p{r * std::cos(th), r * std::sin(th)};
      if (rp.cutoff(l, p) == 0.0) continue;
      for (int dd = 0; dd < 2; ++dd) {
        Point a = p, b = p;
        a[dd] += 1e-5;
        b[dd] -= 1e-5;
        const double der = (rp.theta(l, x, a) - rp.theta(l, x, b)) / 2e-5;
        CHECK(std::abs(der) <= 4.0 * d);
      }
    }
  }
}

TEST_CASE("phase reduction with a rough time function") {
  const ReducedPhase rp = phase_reduce(rough_wave_phase(2, "step", 0.5, 1.0), 16);
  const double d = rp.diameter;
  for (const Point& x : {Point{1.0, 0.0}, Point{-1.0, 0.0}}) {
    for (int l = 0; l < rp.pieces(); ++l) {
      const Point p{1.1 * rp.centers[l][0], 1.1 * rp.centers[l][1]};
      for (int dd = 0; dd < 2; ++dd) {
        Point a = p, b = p;
        a[dd] += 1e-5;
        b[dd] -= 1e-5;
        const double der = (rp.theta(l, x, a) - rp.theta(l, x, b)) / 2e-5;
        CHECK(std::abs(der) <= 4.0 * d);
      }
    }
  }
}

TEST_CASE("phase reduction rejects an insufficient covering") {
  CHECK_THROWS_AS(phase_reduce(wave_phase(2, 1.0), 4), config_error);
}
