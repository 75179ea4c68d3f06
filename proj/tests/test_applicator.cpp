#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fiolab/applicator.hpp"
#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"
#include "fiolab/testfamily.hpp"

using namespace fiolab;

namespace {

SampledField gaussian_field(const Grid& g, double width = 1.0, double k0 = 0.0) {
  return make_field(g, Side::physical, [width, k0](const Point& x) {
    const double mag = std::exp(-0.5 * x[0] * x[0] / (width * width));
    return mag * cdouble(std::cos(k0 * x[0]), std::sin(k0 * x[0]));
  });
}

}  // namespace

TEST_CASE("identity operator reproduces the input") {
  const Grid g = make_grid(1, 128, 16.0);
  const SampledField u = gaussian_field(g);
  const FioOperator op = make_fio(constant_symbol(), linear_phase(1));
  const SampledField v = apply_fio(op, u);
  CHECK(relative_l2_error(v, u) < 1e-10);
}

TEST_CASE("composition operator and its L2 ratio") {
  // The plain dilation phase resamples the torus 2-to-1, so the wrap copy of
  // u(2x) near |x| = L would restore the mass the dilation removes.  The
  // spatial window (the paper's compactly-supported-amplitude variant) kills
  // the wrap copy and realizes the |det kappa'|^{-1/2} ratio.
  const Grid g = make_grid(1, 256, 16.0);
  const SampledField u = gaussian_field(g);
  const FioOperator op =
      make_fio(x_window_symbol(6.0, 9.0), diffeo_scale_phase(1, 2.0));
  const SampledField v = apply_fio(op, u);
  // v(x) = u(2x) on the window plateau |x| <= 6
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.point_at(i)[0];
    if (std::abs(x) > 5.5) continue;
    max_err = std::max(max_err,
                       std::abs(v.values[i] - cdouble(std::exp(-2.0 * x * x), 0.0)));
  }
  CHECK(max_err < 1e-9);
  CHECK(v.l2_norm() / u.l2_norm() ==
        doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-4));
}

TEST_CASE("direct quadrature agrees with the multiplier path") {
  const Grid g = make_grid(1, 128, 16.0);
  const SampledField u = gaussian_field(g);
  const FioOperator op = make_fio(bessel_power_symbol(-2.0), linear_phase(1));
  const SampledField direct = apply_fio(op, u);
  const SampledField mult = apply_multiplier(
      [](const Point& xi) {
        return cdouble(std::pow(1.0 + xi[0] * xi[0], -1.0), 0.0);
      },
      u);
  CHECK(relative_l2_error(direct, mult) < 1e-10);
}

TEST_CASE("multiplier identity and half-wave translation") {
  const Grid g = make_grid(1, 256, 16.0);
  const SampledField u = gaussian_field(g, 1.0, 8.0);  // spectrum near xi = 8 > 0
  const SampledField id = apply_multiplier(
      [](const Point&) { return cdouble(1.0, 0.0); }, u);
  CHECK(relative_l2_error(id, u) < 1e-12);

  const double t = 2.0;
  const SampledField v = apply_multiplier(
      [t](const Point& xi) {
        const double ang = t * std::abs(xi[0]);
        return cdouble(std::cos(ang), std::sin(ang));
      },
      u);
  // uhat supported in xi > 0, so e^{it|xi|} translates: v(x) = u(x + t)
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.point_at(i)[0];
    if (std::abs(x) > 10.0) continue;  // skip the periodic wrap region
    const double xx = x + t;
    const cdouble want =
        std::exp(-0.5 * xx * xx) * cdouble(std::cos(8.0 * xx), std::sin(8.0 * xx));
    max_err = std::max(max_err, std::abs(v.values[i] - want));
  }
  CHECK(max_err < 1e-8);
  CHECK(v.l2_norm() == doctest::Approx(u.l2_norm()).epsilon(1e-12));
}

TEST_CASE("bessel multiplier matches the exponential kernel") {
  // sigma = (1+xi^2)^{-1} applied to a discrete delta gives the sampled
  // kernel e^{-|x|}/2; resolution and box chosen so truncation and
  // periodization both sit below 1e-6 on the scanned range
  const Grid g = make_grid(1, 1 << 22, 16.0);
  SampledField u(g, Side::physical);
  const std::int64_t j0 = g.size() / 2;  // spike at x = 0
  u.values[j0] = cdouble(1.0 / g.spacing(), 0.0);
  const SampledField v = apply_multiplier(
      [](const Point& xi) {
        return cdouble(1.0 / (1.0 + xi[0] * xi[0]), 0.0);
      },
      u);
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); i += 97) {
    const double x = g.point_at(i)[0];
    if (std::abs(x) > 6.0) continue;
    max_err = std::max(max_err,
                       std::abs(v.values[i] - cdouble(0.5 * std::exp(-std::abs(x)), 0.0)));
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("kernel row against the transform oracle") {
  const Grid g = make_grid(1, 256, 16.0);
  const FioOperator op = make_fio(cutoff_times_power_symbol(0.0), linear_phase(1));
  const Point x{0.5};
  std::vector<Point> ys(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) ys[i] = g.point_at(i);
  const auto row = kernel_row(op, g, x, ys);

  // oracle: K(x, y) = (inverse transform of chi0 <.>^0)(x - y), via FFT
  SampledField sym(g, Side::frequency);
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double r = g.freq_norm_at(k);
    sym.values[k] = cdouble(chi0(r) * 1.0, 0.0);
  }
  const SampledField ker = transform(sym, Side::physical);
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    // x - y on the periodic grid
    double diff = x[0] - ys[i][0];
    while (diff < -g.half_width) diff += 2.0 * g.half_width;
    while (diff >= g.half_width) diff -= 2.0 * g.half_width;
    const std::int64_t j =
        static_cast<std::int64_t>(std::llround((diff + g.half_width) / g.spacing())) %
        g.size();
    max_err = std::max(max_err, std::abs(row[i] - ker.values[j]));
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("truncated inversion kernel concentrates on the diagonal") {
  const Grid g = make_grid(1, 128, 16.0);
  const FioOperator op = make_fio(constant_symbol(), linear_phase(1));
  const Point x{1.0};
  std::vector<Point> ys(g.size());
  for (std::int64_t i = 0; i < g.size(); ++i) ys[i] = g.point_at(i);
  const auto row = kernel_row(op, g, x, ys);
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < row.size(); ++i)
    if (std::abs(row[i]) > std::abs(row[argmax])) argmax = i;
  CHECK(std::abs(ys[argmax][0] - x[0]) <= g.spacing() / 2);
}

TEST_CASE("linearity") {
  const Grid g = make_grid(1, 64, 8.0);
  const FioOperator op = make_fio(bessel_power_symbol(-0.5), wave_phase(1, 1.0));
  const SampledField u = gaussian_field(g, 0.7);
  const SampledField v = gaussian_field(g, 1.3, 3.0);
  const cdouble a(0.3, -1.1), b(-0.25, 0.4);

  SampledField combo(g, Side::physical);
  for (std::int64_t i = 0; i < g.size(); ++i)
    combo.values[i] = a * u.values[i] + b * v.values[i];
  const SampledField lhs = apply_fio(op, combo);
  const SampledField tu = apply_fio(op, u);
  const SampledField tv = apply_fio(op, v);
  double max_err = 0.0;
  for (std::int64_t i = 0; i < g.size(); ++i)
    max_err = std::max(max_err,
                       std::abs(lhs.values[i] - a * tu.values[i] - b * tv.values[i]));
  CHECK(max_err <= 1e-12);
}

TEST_CASE("adjoint consistency") {
  const Grid g = make_grid(1, 64, 8.0);
  const FioOperator op = make_fio(bessel_power_symbol(-1.0), wave_phase(1, 1.0));
  DetRng rng(41);
  SampledField u(g, Side::physical), v(g, Side::physical);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    u.values[i] = cdouble(rng.next_double() - 0.5, rng.next_double() - 0.5);
    v.values[i] = cdouble(rng.next_double() - 0.5, rng.next_double() - 0.5);
  }
  const SampledField tu = apply_fio(op, u);
  const SampledField tsv = apply_fio_adjoint(op, v);
  cdouble lhs(0.0, 0.0), rhs(0.0, 0.0);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    lhs += tu.values[i] * std::conj(v.values[i]);
    rhs += u.values[i] * std::conj(tsv.values[i]);
  }
  lhs *= g.spacing();
  rhs *= g.spacing();
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("decomposed application: linear phase pieces are LP projections") {
  const Grid g = make_grid(1, 128, 16.0);
  const SampledField u = gaussian_field(g, 0.5, 4.0);
  const FioOperator op = make_fio(constant_symbol(), linear_phase(1));
  const DyadicPartition dp = littlewood_paley(g, 4, true);
  std::vector<ConeFrame> frames;
  for (int j = 1; j <= dp.j_max; ++j) frames.push_back(sss_frame(std::ldexp(1.0, -j), 1));

  const auto [v, diag] = apply_decomposed(op, u, dp, frames);
  CHECK(relative_l2_error(v, u) < 1e-10);

  // each whole-j slice equals chi_j(D) u
  for (int j = 1; j <= dp.j_max; ++j) {
    const SampledField piece = apply_multiplier(
        [&dp, j, &g](const Point& xi) {
          double r = 0.0;
          for (int d = 0; d < g.dim; ++d) r += xi[d] * xi[d];
          return cdouble(dp.piece(j, std::sqrt(r)), 0.0);
        },
        u);
    double contrib = 0.0;
    for (const auto& p : diag.pieces)
      if (p.j == j) contrib += p.l2_contribution * p.l2_contribution;
    CHECK(std::sqrt(contrib) ==
          doctest::Approx(piece.l2_norm()).epsilon(1e-6));
  }
}

TEST_CASE("decomposed equals direct for the 2d wave operator") {
  const Grid g = make_grid(2, 32, 8.0);
  const SampledField u = make_field(g, Side::physical, [](const Point& x) {
    return cdouble(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1])), 0.0);
  });
  const FioOperator op = make_fio(bessel_power_symbol(-1.5), wave_phase(2, 1.0));
  const DyadicPartition dp = littlewood_paley(g, 3, true);
  std::vector<ConeFrame> frames;
  for (int j = 1; j <= dp.j_max; ++j) frames.push_back(sss_frame(std::ldexp(1.0, -j), 2));

  const SampledField direct = apply_fio(op, u);
  const auto [dec, diag] = apply_decomposed(op, u, dp, frames);
  CHECK(relative_l2_error(dec, direct) < 1e-8);

  // piece contributions decay in j for the negative-order amplitude
  CHECK(diag.semiclassical_exponent < 0.0);
}

TEST_CASE("a single piece equals the windowed operator") {
  const Grid g = make_grid(1, 128, 16.0);
  const SampledField u = gaussian_field(g, 0.4, 6.0);
  const DyadicPartition dp = littlewood_paley(g, 4, true);
  const int j = 3;

  // symbol a * chi_3 as a custom SymbolSpec
  SymbolSpec windowed = constant_symbol();
  windowed.family = SymbolFamily::custom;
  windowed.eval = [dp, j](const Point&, const Point& xi) {
    return cdouble(dp.piece(j, std::abs(xi[0])), 0.0);
  };
  const FioOperator op_w = make_fio(windowed, wave_phase(1, 1.0));
  const SampledField want = apply_fio(op_w, u);

  std::vector<ConeFrame> frames;
  for (int jj = 1; jj <= dp.j_max; ++jj)
    frames.push_back(sss_frame(std::ldexp(1.0, -jj), 1));

  // rebuild the j = 3 slice from the cone pieces of the decomposition
  SampledField slice(g, Side::physical);
  const SampledField uhat = transform(u, Side::frequency);
  for (int nu = 0; nu < frames[j - 1].count(); ++nu) {
    SampledField ph = uhat;
    for (std::int64_t k = 0; k < g.size(); ++k) {
      const double r = g.freq_norm_at(k);
      ph.values[k] *= dp.piece(j, r) * frames[j - 1].psi(nu, g.freq_at(k));
    }
    const FioOperator base = make_fio(constant_symbol(), wave_phase(1, 1.0));
    const SampledField piece = apply_fio(base, transform(ph, Side::physical));
    accumulate(slice, piece, cdouble(1.0, 0.0));
  }
  CHECK(relative_l2_error(slice, want) < 1e-8);
}

TEST_CASE("grid and side mismatches are usage errors") {
  const Grid g = make_grid(1, 64, 8.0);
  SampledField uhat(g, Side::frequency);
  const FioOperator op = make_fio(constant_symbol(), linear_phase(1));
  CHECK_THROWS_AS(apply_fio(op, uhat), config_error);

  const DyadicPartition dp = littlewood_paley(g, 3);
  std::vector<ConeFrame> frames = {sss_frame(0.5, 1)};  // wrong count
  SampledField u(g, Side::physical);
  CHECK_THROWS_AS(apply_decomposed(op, u, dp, frames), config_error);
}
