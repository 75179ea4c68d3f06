#include "fiolab/applicator.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

double freq_cell_scaled(const Grid& g) {
  // dxi^n / (2 pi)^n
  double v = 1.0;
  for (int d = 0; d < g.dim; ++d)
    v *= g.dual_spacing() / (2.0 * std::numbers::pi);
  return v;
}

// Core quadrature: v(x_i) = w * sum_k weight(k) e^{i phi(x_i, xi_k)} a(x_i, xi_k) uhat_k
// weight(k) is an optional per-bin frequency window (dyadic/cone pieces).
SampledField quadrature_apply(const FioOperator& op, const SampledField& uhat,
                              const std::vector<double>* bin_weight,
                              bool parallel) {
  const Grid& g = uhat.grid;
  const std::int64_t total = g.size();
  SampledField out(g, Side::physical);
  const double w = freq_cell_scaled(g);

  // cache frequency points once; inner loops are hot
  std::vector<Point> xi(total);
  for (std::int64_t k = 0; k < total; ++k) xi[k] = g.freq_at(k);

  auto row = [&](std::int64_t i) {
    const Point x = g.point_at(i);
    cdouble acc(0.0, 0.0);
    for (std::int64_t k = 0; k < total; ++k) {
      const double wk = bin_weight ? (*bin_weight)[k] : 1.0;
      if (wk == 0.0) continue;
      const cdouble uk = uhat.values[k];
      if (uk == cdouble(0.0, 0.0)) continue;
      const double ang = op.phi.eval(x, xi[k]);
      acc += wk * cdouble(std::cos(ang), std::sin(ang)) * op.a.eval(x, xi[k]) * uk;
    }
    out.values[i] = w * acc;
  };

  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) row(i);
  } else {
    for (std::int64_t i = 0; i < total; ++i) row(i);
  }
  return out;
}

SampledField as_frequency(const SampledField& u) {
  if (u.side == Side::frequency) return u;
  return transform(u, Side::frequency);
}

}  // namespace

FioOperator make_fio(const SymbolSpec& a, const PhaseSpec& phi, double low_cut) {
  if (low_cut <= 0.0) throw config_error("make_fio: low_cut must be positive");
  return FioOperator{a, phi, low_cut};
}

SampledField apply_fio(const FioOperator& op, const SampledField& u) {
  if (u.side != Side::physical)
    throw config_error("apply_fio: input must be a physical-side field");
  const SampledField uhat = as_frequency(u);
  const Grid& g = uhat.grid;
  // Low/high split mirrors the analysis: chi0 branch plus its complement.
  // They sum to the plain quadrature; kept separate so the low-frequency
  // branch stays the only place the origin bin is touched.
  std::vector<double> low(g.size()), high(g.size());
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double c = chi0(g.freq_norm_at(k), op.low_cut);
    low[k] = c;
    high[k] = 1.0 - c;
  }
  SampledField v = quadrature_apply(op, uhat, &low, true);
  const SampledField vh = quadrature_apply(op, uhat, &high, true);
  accumulate(v, vh, cdouble(1.0, 0.0));
  return v;
}

SampledField apply_fio_serial(const FioOperator& op, const SampledField& u) {
  if (u.side != Side::physical)
    throw config_error("apply_fio_serial: input must be a physical-side field");
  const SampledField uhat = as_frequency(u);
  const Grid& g = uhat.grid;
  std::vector<double> low(g.size()), high(g.size());
  for (std::int64_t k = 0; k < g.size(); ++k) {
    const double c = chi0(g.freq_norm_at(k), op.low_cut);
    low[k] = c;
    high[k] = 1.0 - c;
  }
  SampledField v = quadrature_apply(op, uhat, &low, false);
  const SampledField vh = quadrature_apply(op, uhat, &high, false);
  accumulate(v, vh, cdouble(1.0, 0.0));
  return v;
}

SampledField apply_fio_adjoint(const FioOperator& op, const SampledField& v) {
  if (v.side != Side::physical)
    throw config_error("apply_fio_adjoint: input must be a physical-side field");
  const Grid& g = v.grid;
  const std::int64_t total = g.size();

  // (T* v)^(xi_k) = dx^n sum_x e^{-i phi(x, xi_k)} conj(a(x, xi_k)) v(x),
  // then an inverse transform back to the physical side.
  SampledField what(g, Side::frequency);
  double dxn = 1.0;
  for (int d = 0; d < g.dim; ++d) dxn *= g.spacing();

  std::vector<Point> xs(total);
  for (std::int64_t i = 0; i < total; ++i) xs[i] = g.point_at(i);

#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < total; ++k) {
    const Point xi = g.freq_at(k);
    cdouble acc(0.0, 0.0);
    for (std::int64_t i = 0; i < total; ++i) {
      const double ang = -op.phi.eval(xs[i], xi);
      acc += cdouble(std::cos(ang), std::sin(ang)) *
             std::conj(op.a.eval(xs[i], xi)) * v.values[i];
    }
    what.values[k] = dxn * acc;
  }
  return transform(what, Side::physical);
}

SampledField apply_multiplier(const std::function<cdouble(const Point&)>& sigma,
                              const SampledField& u) {
  SampledField uhat = as_frequency(u);
  const Grid& g = uhat.grid;
#pragma omp parallel for
  for (std::int64_t k = 0; k < g.size(); ++k) uhat.values[k] *= sigma(g.freq_at(k));
  return transform(uhat, Side::physical);
}

namespace {

std::vector<cdouble> kernel_row_impl(const FioOperator& op, const Point& x,
                                     const std::vector<Point>& y_grid,
                                     const Grid& g, bool parallel) {
  const std::int64_t total = g.size();
  const double w = freq_cell_scaled(g);
  std::vector<Point> xi(total);
  std::vector<cdouble> amp(total);
  for (std::int64_t k = 0; k < total; ++k) {
    xi[k] = g.freq_at(k);
    const double ang = op.phi.eval(x, xi[k]);
    amp[k] = cdouble(std::cos(ang), std::sin(ang)) * op.a.eval(x, xi[k]);
  }
  std::vector<cdouble> row(y_grid.size());
  auto one = [&](std::size_t j) {
    const Point& y = y_grid[j];
    cdouble acc(0.0, 0.0);
    for (std::int64_t k = 0; k < total; ++k) {
      double d = 0.0;
      for (int dd = 0; dd < g.dim; ++dd) d += y[dd] * xi[k][dd];
      acc += amp[k] * cdouble(std::cos(d), -std::sin(d));
    }
    row[j] = w * acc;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(y_grid.size()); ++j)
      one(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < y_grid.size(); ++j) one(j);
  }
  return row;
}

}  // namespace

std::vector<cdouble> kernel_row(const FioOperator& op, const Grid& g,
                                const Point& x, const std::vector<Point>& y_grid) {
  return kernel_row_impl(op, x, y_grid, g, true);
}

std::vector<cdouble> kernel_row_serial(const FioOperator& op, const Grid& g,
                                       const Point& x,
                                       const std::vector<Point>& y_grid) {
  return kernel_row_impl(op, x, y_grid, g, false);
}

std::pair<SampledField, PieceDiagnostics> apply_decomposed(
    const FioOperator& op, const SampledField& u, const DyadicPartition& dp,
    const std::vector<ConeFrame>& frames) {
  if (u.side != Side::physical)
    throw config_error("apply_decomposed: input must be a physical-side field");
  if (static_cast<int>(frames.size()) != dp.j_max)
    throw config_error("apply_decomposed: need one ConeFrame per dyadic scale");
  for (int j = 1; j <= dp.j_max; ++j)
    if (std::abs(frames[j - 1].h - std::ldexp(1.0, -j)) > 1e-12)
      throw config_error("apply_decomposed: frame " + std::to_string(j) +
                         " is not at scale 2^-j");

  const SampledField uhat = as_frequency(u);
  const Grid& g = uhat.grid;
  const std::int64_t total = g.size();

  SampledField out(g, Side::physical);
  PieceDiagnostics diag;

  std::vector<double> weight(total);
  auto run_piece = [&](int j, int nu) {
    const auto t0 = std::chrono::steady_clock::now();
    bool any = false;
    for (std::int64_t k = 0; k < total; ++k) {
      const double r = g.freq_norm_at(k);
      double wgt = dp.piece(j, r);
      if (j > 0 && nu >= 0 && wgt != 0.0) wgt *= frames[j - 1].psi(nu, g.freq_at(k));
      weight[k] = wgt;
      any = any || wgt != 0.0;
    }
    PieceDiagnostics::Piece p;
    p.j = j;
    p.nu = nu;
    if (any) {
      const SampledField piece = quadrature_apply(op, uhat, &weight, true);
      accumulate(out, piece, cdouble(1.0, 0.0));
      p.l2_contribution = piece.l2_norm();
    }
    p.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    diag.pieces.push_back(p);
  };

  run_piece(0, -1);
  for (int j = 1; j <= dp.j_max; ++j)
    for (int nu = 0; nu < frames[j - 1].count(); ++nu) run_piece(j, nu);

  // fit log2 of per-j totals against j
  std::vector<double> per_j(dp.j_max + 1, 0.0);
  for (const auto& p : diag.pieces)
    if (p.j >= 1) per_j[p.j] += p.l2_contribution * p.l2_contribution;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int j = 1; j <= dp.j_max; ++j) {
    if (per_j[j] <= 0.0) continue;
    const double y = 0.5 * std::log2(per_j[j]);
    sx += j;
    sy += y;
    sxx += j * j;
    sxy += j * y;
    ++cnt;
  }
  diag.semiclassical_exponent =
      cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx) : 0.0;
  return {out, diag};
}

}  // namespace fiolab
