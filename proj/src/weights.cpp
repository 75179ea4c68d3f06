#include "fiolab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(const Point& p, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

// int_a^b x^e dx for 0 <= a < b, truncating at `pinhole` when e <= -1.
double one_sided_power_mass(double a, double b, double e, double pinhole) {
  if (b <= a) return 0.0;
  if (e > -1.0) {
    return (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
  }
  const double lo = std::max(a, pinhole);
  if (lo >= b) return 0.0;
  if (e == -1.0) return std::log(b / lo);
  return (std::pow(b, e + 1.0) - std::pow(lo, e + 1.0)) / (e + 1.0);
}

// int_a^b |x|^e dx with the origin split.
double abs_power_mass(double a, double b, double e, double pinhole) {
  if (b <= a) return 0.0;
  if (a >= 0.0) return one_sided_power_mass(a, b, e, pinhole);
  if (b <= 0.0) return one_sided_power_mass(-b, -a, e, pinhole);
  return one_sided_power_mass(0.0, -a, e, pinhole) +
         one_sided_power_mass(0.0, b, e, pinhole);
}

// int_a^b f(x) dx by 512-point composite midpoint on each smooth side of 0,
// with geometric refinement toward the origin (log-type singularities).
double refined_mass(const std::function<double(double)>& f, double a, double b,
                    double pinhole) {
  if (b <= a) return 0.0;
  auto one_side = [&](double lo, double hi) {  // 0 <= lo < hi
    if (hi <= lo) return 0.0;
    double acc = 0.0;
    const double floor_lo = std::max(lo, std::min(pinhole, hi));
    // geometric panels from floor_lo to hi
    const int panels = 256;
    if (floor_lo > lo && lo == 0.0) {
      // pinhole-truncated head is dropped (lower-bound semantics)
    }
    const double ratio = std::pow(hi / std::max(floor_lo, 1e-300), 1.0 / panels);
    double x0 = floor_lo;
    for (int i = 0; i < panels; ++i) {
      const double x1 = i + 1 == panels ? hi : x0 * ratio;
      acc += f(0.5 * (x0 + x1)) * (x1 - x0);
      x0 = x1;
    }
    return acc;
  };
  if (a >= 0.0) return one_side(a, b);
  if (b <= 0.0) return one_side(-b, -a);
  return one_side(0.0, -a) + one_side(0.0, b);
}

}  // namespace

double Weight::eval(const Point& x, int dim) const {
  const double r = norm(x, dim);
  switch (family) {
    case WeightFamily::constant:
      return 1.0;
    case WeightFamily::power:
      return std::pow(r, exponent);
    case WeightFamily::truncated_power:
      return r < support_radius ? std::pow(r, exponent) : 0.0;
    case WeightFamily::log_weight:
      return r < 1.0 / std::numbers::e ? std::log(1.0 / r) : 1.0;
    case WeightFamily::tabulated:
      return eval_fn(x);
  }
  return 1.0;
}

double Weight::interval_mass_1d(double a, double b, double s, double pinhole) const {
  switch (family) {
    case WeightFamily::constant:
      return b - a;
    case WeightFamily::power:
      return abs_power_mass(a, b, exponent * s, pinhole);
    case WeightFamily::truncated_power: {
      const double R = support_radius;
      const double ca = std::max(a, -R), cb = std::min(b, R);
      const double inside = std::max(0.0, cb - ca);
      // w^s = +inf outside the support when s < 0
      if (s < 0.0 && b - a > inside + 1e-15) return kInf;
      if (inside <= 0.0) return 0.0;
      return abs_power_mass(ca, cb, exponent * s, pinhole);
    }
    case WeightFamily::log_weight: {
      const double e = std::numbers::e;
      auto f = [s, e](double r) {
        return r < 1.0 / e ? std::pow(std::log(1.0 / r), s) : 1.0;
      };
      return refined_mass(f, a, b, pinhole);
    }
    case WeightFamily::tabulated:
      throw config_error("interval_mass_1d: tabulated weights use midpoint cells");
  }
  return 0.0;
}

Weight power_weight(double alpha) {
  Weight w;
  w.family = WeightFamily::power;
  w.exponent = alpha;
  w.label = "power(" + std::to_string(alpha) + ")";
  return w;
}

Weight truncated_power_weight(double b, double radius) {
  Weight w;
  w.family = WeightFamily::truncated_power;
  w.exponent = -b;
  w.support_radius = radius;
  w.label = "truncated_power(b=" + std::to_string(b) + ")";
  return w;
}

Weight log_weight() {
  Weight w;
  w.family = WeightFamily::log_weight;
  w.label = "log";
  return w;
}

Weight constant_weight() {
  Weight w;
  w.label = "1";
  return w;
}

Weight tabulated_weight(const Grid& g, std::istream& csv) {
  auto table = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(g.size()), 0.0);
  std::string line;
  if (!std::getline(csv, line)) throw config_error("tabulated weight: empty csv");
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::array<int, kMaxDim> idx{};
    for (int d = 0; d < g.dim; ++d) {
      std::getline(ss, tok, ',');
      idx[d] = std::stoi(tok);
    }
    std::getline(ss, tok, ',');
    const double v = std::stod(tok);
    if (v < 0.0) throw config_error("tabulated weight: negative value");
    (*table)[g.flatten(idx)] = v;
  }
  Weight w;
  w.family = WeightFamily::tabulated;
  w.label = "tabulated";
  const Grid grid = g;
  w.eval_fn = [table, grid](const Point& x) {
    std::array<int, kMaxDim> idx{};
    for (int d = 0; d < grid.dim; ++d) {
      const double f = (x[d] + grid.half_width) / grid.spacing();
      idx[d] = std::clamp(static_cast<int>(std::lround(f)), 0,
                          grid.points_per_axis - 1);
    }
    return (*table)[grid.flatten(idx)];
  };
  return w;
}

BallFamily BallFamily::dyadic(const Grid& g, int r_lo, int r_hi, int center_stride) {
  BallFamily fam;
  for (int e = r_lo; e <= r_hi; ++e) fam.radii.push_back(std::ldexp(1.0, e));
  // origin first, then the coarse sublattice
  for (double r : fam.radii) fam.balls.push_back({Point{}, r});
  for (std::int64_t i = 0; i < g.size(); i += center_stride) {
    const Point c = g.point_at(i);
    if (norm(c, g.dim) == 0.0) continue;
    for (double r : fam.radii) fam.balls.push_back({c, r});
  }
  return fam;
}

namespace {

// 1D ball average with midpoint cells and analytic singular cells.
double ball_average_1d(const Weight& w, double s, const Ball& ball, const Grid& g) {
  const double dx = g.spacing();
  const double pinhole = 0.5 * dx * 1e-6;
  const double lo = ball.center[0] - ball.radius;
  const double hi = ball.center[0] + ball.radius;

  const bool analytic_family = w.family != WeightFamily::tabulated;
  double mass = 0.0;
  // cells are [x_i - dx/2, x_i + dx/2) around sample points
  const int i_lo = static_cast<int>(std::floor((lo + g.half_width) / dx + 0.5));
  const int i_hi = static_cast<int>(std::floor((hi + g.half_width) / dx + 0.5));
  for (int i = i_lo; i <= i_hi; ++i) {
    const double xc = -g.half_width + i * dx;
    const double ca = std::max(lo, xc - 0.5 * dx);
    const double cb = std::min(hi, xc + 0.5 * dx);
    if (cb <= ca) continue;
    const bool singular_cell = analytic_family && ca <= 0.0 && cb >= 0.0;
    const bool near_origin = analytic_family && std::min(std::abs(ca), std::abs(cb)) < dx;
    if (analytic_family && (singular_cell || near_origin)) {
      mass += w.interval_mass_1d(ca, cb, s, pinhole);
    } else {
      const double v = w.eval(Point{xc}, 1);
      if (v == 0.0 && s < 0.0) return kInf;
      mass += std::pow(v, s) * (cb - ca);
    }
  }
  return mass / (2.0 * ball.radius);
}

// 2D: midpoint cells with 4x4 subsampled boundary overlap; a cell touching
// the origin integrates radially over the equal-area disc (documented
// approximation; the weighted experiments run in 1D).
double ball_average_2d(const Weight& w, double s, const Ball& ball, const Grid& g) {
  const double dx = g.spacing();
  const double pinhole = 0.5 * dx * 1e-6;
  const double r2 = ball.radius * ball.radius;
  double mass = 0.0;
  const int span = static_cast<int>(std::ceil(ball.radius / dx)) + 1;
  const int ci = static_cast<int>(std::floor((ball.center[0] + g.half_width) / dx + 0.5));
  const int cj = static_cast<int>(std::floor((ball.center[1] + g.half_width) / dx + 0.5));
  for (int i = ci - span; i <= ci + span; ++i) {
    for (int j = cj - span; j <= cj + span; ++j) {
      const double xc = -g.half_width + i * dx;
      const double yc = -g.half_width + j * dx;
      // overlap fraction by 4x4 subsamples
      int inside = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const double px = xc + (a + 0.5) / 4.0 * dx - 0.5 * dx;
          const double py = yc + (b + 0.5) / 4.0 * dx - 0.5 * dx;
          const double ddx = px - ball.center[0], ddy = py - ball.center[1];
          if (ddx * ddx + ddy * ddy <= r2) ++inside;
        }
      if (inside == 0) continue;
      const double frac = inside / 16.0;
      const bool origin_cell = std::abs(xc) < 0.5 * dx && std::abs(yc) < 0.5 * dx &&
                               w.family != WeightFamily::tabulated &&
                               w.family != WeightFamily::constant;
      if (origin_cell) {
        // radially exact integral of w^s over the equal-area disc
        const double rho = dx / std::sqrt(std::numbers::pi);
        double cellmass = 0.0;
        if (w.family == WeightFamily::power ||
            w.family == WeightFamily::truncated_power) {
          const double e = w.exponent * s;
          const double rcap = w.family == WeightFamily::truncated_power
                                  ? std::min(rho, w.support_radius)
                                  : rho;
          if (e <= -2.0) {
            const double lo = pinhole;
            cellmass = 2.0 * std::numbers::pi *
                       (e == -2.0 ? std::log(rcap / lo)
                                  : (std::pow(rcap, e + 2.0) - std::pow(lo, e + 2.0)) /
                                        (e + 2.0));
          } else {
            cellmass = 2.0 * std::numbers::pi * std::pow(rcap, e + 2.0) / (e + 2.0);
          }
        } else {  // log family
          const int panels = 512;
          for (int q = 0; q < panels; ++q) {
            const double ra = rho * q / panels, rb = rho * (q + 1) / panels;
            const double rm = 0.5 * (ra + rb);
            const double v = w.eval(Point{rm, 0.0}, 2);
            cellmass += std::pow(v, s) * 2.0 * std::numbers::pi * rm * (rb - ra);
          }
        }
        mass += frac * cellmass;
      } else {
        const double v = w.eval(Point{xc, yc}, 2);
        if (v == 0.0 && s < 0.0) return kInf;
        mass += frac * std::pow(v, s) * dx * dx;
      }
    }
  }
  return mass / (std::numbers::pi * r2);
}

}  // namespace

double ball_average(const Weight& w, double s, const Ball& ball, const Grid& g) {
  if (ball.radius <= 0.0) throw config_error("ball_average: radius must be positive");
  return g.dim == 1 ? ball_average_1d(w, s, ball, g) : ball_average_2d(w, s, ball, g);
}

ApReport ap_constant_report(const Weight& w, double p, const BallFamily& balls,
                            const Grid& g) {
  if (p <= 1.0)
    throw config_error("ap_constant: p must exceed 1 (A_1 has its own variant)");
  if (balls.balls.empty()) throw config_error("ap_constant: empty ball family");

  ApReport rep;
  std::vector<double> vals(balls.balls.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(balls.balls.size()); ++i) {
    const Ball& b = balls.balls[i];
    const double wb = ball_average(w, 1.0, b, g);
    const double dual = ball_average(w, -1.0 / (p - 1.0), b, g);
    vals[i] = wb * std::pow(dual, p - 1.0);
  }
  for (double v : vals) rep.constant = std::max(rep.constant, v);

  for (std::size_t i = 0; i < balls.balls.size(); ++i) {
    const Ball& b = balls.balls[i];
    if (norm(b.center, g.dim) == 0.0) rep.origin_trend.push_back({b.radius, vals[i]});
  }
  std::sort(rep.origin_trend.begin(), rep.origin_trend.end(),
            [](const ApScaleEntry& a, const ApScaleEntry& b) {
              return a.radius < b.radius;
            });
  // divergent when the top >= 3 dyadic scales rise monotonically by >= 10%
  const std::size_t m = rep.origin_trend.size();
  if (m >= 3) {
    const double v0 = rep.origin_trend[m - 3].value;
    const double v1 = rep.origin_trend[m - 2].value;
    const double v2 = rep.origin_trend[m - 1].value;
    rep.divergent_trend = (v1 > v0 && v2 > v1 && v2 >= 1.1 * v0) ||
                          !std::isfinite(v2);
  }
  return rep;
}

double ap_constant(const Weight& w, double p, const BallFamily& balls,
                   const Grid& g) {
  return ap_constant_report(w, p, balls, g).constant;
}

bool power_weight_class(double alpha, double p, int n) {
  if (p < 1.0) throw config_error("power_weight_class: p >= 1 required");
  if (p == 1.0) return alpha > -n && alpha <= 0.0;
  return alpha > -n && alpha < n * (p - 1.0);
}

namespace {

double ball_average_abs_pow(const SampledField& u, const Point& center, double r,
                            double p_exp) {
  const Grid& g = u.grid;
  const double dx = g.spacing();
  if (g.dim == 1) {
    const double lo = center[0] - r, hi = center[0] + r;
    const int i_lo = static_cast<int>(std::floor((lo + g.half_width) / dx + 0.5));
    const int i_hi = static_cast<int>(std::floor((hi + g.half_width) / dx + 0.5));
    double mass = 0.0;
    for (int i = std::max(0, i_lo); i <= std::min(g.points_per_axis - 1, i_hi); ++i) {
      const double xc = -g.half_width + i * dx;
      const double ca = std::max(lo, xc - 0.5 * dx);
      const double cb = std::min(hi, xc + 0.5 * dx);
      if (cb <= ca) continue;
      mass += std::pow(std::abs(u.values[i]), p_exp) * (cb - ca);
    }
    return mass / (2.0 * r);
  }
  // dim 2: subsampled overlap
  const double r2 = r * r;
  double mass = 0.0;
  const int span = static_cast<int>(std::ceil(r / dx)) + 1;
  const int ci = static_cast<int>(std::floor((center[0] + g.half_width) / dx + 0.5));
  const int cj = static_cast<int>(std::floor((center[1] + g.half_width) / dx + 0.5));
  for (int i = ci - span; i <= ci + span; ++i) {
    if (i < 0 || i >= g.points_per_axis) continue;
    for (int j = cj - span; j <= cj + span; ++j) {
      if (j < 0 || j >= g.points_per_axis) continue;
      const double xc = -g.half_width + i * dx;
      const double yc = -g.half_width + j * dx;
      const double ddx = xc - center[0], ddy = yc - center[1];
      const double d2 = ddx * ddx + ddy * ddy;
      double frac;
      if (d2 <= (r - 0.71 * dx) * (r - 0.71 * dx))
        frac = 1.0;
      else if (d2 > (r + 0.71 * dx) * (r + 0.71 * dx))
        continue;
      else {
        int inside = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            const double px = xc + (a + 0.5) / 4.0 * dx - 0.5 * dx;
            const double py = yc + (b + 0.5) / 4.0 * dx - 0.5 * dx;
            const double ex = px - center[0], ey = py - center[1];
            if (ex * ex + ey * ey <= r2) ++inside;
          }
        if (inside == 0) continue;
        frac = inside / 16.0;
      }
      const std::array<int, kMaxDim> idx{i, j, 0};
      mass += frac * std::pow(std::abs(u.values[g.flatten(idx)]), p_exp) * dx * dx;
    }
  }
  return mass / (std::numbers::pi * r2);
}

SampledField maximal_impl(const SampledField& u, const BallFamily& balls,
                          double p_exp, bool parallel) {
  if (u.side != Side::physical)
    throw config_error("maximal: physical-side field required");
  if (balls.radii.empty()) throw config_error("maximal: empty ball family");
  if (p_exp < 1.0) throw config_error("maximal: p_exp >= 1 required");
  const Grid& g = u.grid;
  SampledField out(g, Side::physical);
  auto one = [&](std::int64_t i) {
    const Point x = g.point_at(i);
    double best = 0.0;
    for (double r : balls.radii)
      best = std::max(best, ball_average_abs_pow(u, x, r, p_exp));
    out.values[i] = std::pow(best, 1.0 / p_exp);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < g.size(); ++i) one(i);
  } else {
    for (std::int64_t i = 0; i < g.size(); ++i) one(i);
  }
  return out;
}

}  // namespace

SampledField maximal(const SampledField& u, const BallFamily& balls, double p_exp) {
  return maximal_impl(u, balls, p_exp, true);
}

SampledField maximal_serial(const SampledField& u, const BallFamily& balls,
                            double p_exp) {
  return maximal_impl(u, balls, p_exp, false);
}

double weighted_norm(const SampledField& u, double p, const Weight& w) {
  if (u.side != Side::physical)
    throw config_error("weighted_norm: physical-side field required");
  if (p <= 0.0) {  // infinity sentinel
    return u.max_abs();
  }
  const Grid& g = u.grid;
  const double dx = g.spacing();
  const double pinhole = 0.5 * dx * 1e-6;
  double acc = 0.0;
  if (g.dim == 1 && w.family != WeightFamily::tabulated) {
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const double a = g.coord(static_cast<int>(i));
      // quadrature cells [x_i, x_i + dx): singular cells analytic
      const double cellmass =
          std::abs(a) < 2.0 * dx || (a < 0.0 && a + dx > 0.0)
              ? w.interval_mass_1d(a, a + dx, 1.0, pinhole)
              : w.eval(Point{a + 0.5 * dx}, 1) * dx;
      acc += std::pow(std::abs(u.values[i]), p) * cellmass;
    }
  } else {
    double cellvol = 1.0;
    for (int d = 0; d < g.dim; ++d) cellvol *= dx;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const Point x = g.point_at(i);
      acc += std::pow(std::abs(u.values[i]), p) * w.eval(x, g.dim) * cellvol;
    }
  }
  return std::pow(acc, 1.0 / p);
}

double bmo_norm(const std::function<double(const Point&)>& b,
                const BallFamily& balls, const Grid& g, bool singular_at_origin) {
  if (balls.balls.empty()) throw config_error("bmo_norm: empty ball family");
  if (g.dim != 1)
    throw config_error("bmo_norm: implemented for 1D grids");
  const double dx = g.spacing();
  const double pinhole = 0.5 * dx * 1e-9;

  auto ball_mass = [&](const Ball& ball,
                       const std::function<double(double)>& f) {
    const double lo = ball.center[0] - ball.radius;
    const double hi = ball.center[0] + ball.radius;
    const int i_lo = static_cast<int>(std::floor((lo + g.half_width) / dx + 0.5));
    const int i_hi = static_cast<int>(std::floor((hi + g.half_width) / dx + 0.5));
    double mass = 0.0;
    for (int i = i_lo; i <= i_hi; ++i) {
      const double xc = -g.half_width + i * dx;
      const double ca = std::max(lo, xc - 0.5 * dx);
      const double cb = std::min(hi, xc + 0.5 * dx);
      if (cb <= ca) continue;
      const bool singular = singular_at_origin && ca <= 0.0 && cb >= 0.0;
      if (singular)
        mass += refined_mass(f, ca, cb, pinhole);
      else
        mass += f(xc) * (cb - ca);
    }
    return mass;
  };

  double best = 0.0;
  std::vector<double> vals(balls.balls.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(balls.balls.size()); ++k) {
    const Ball& ball = balls.balls[k];
    auto fb = [&](double x) { return b(Point{x}); };
    const double avg = ball_mass(ball, fb) / (2.0 * ball.radius);
    auto fosc = [&](double x) { return std::abs(b(Point{x}) - avg); };
    vals[k] = ball_mass(ball, fosc) / (2.0 * ball.radius);
  }
  for (double v : vals) best = std::max(best, v);
  return best;
}

std::function<double(const Point&)> truncated_log_function(const Grid& g) {
  const double s = 0.5 * g.spacing();
  const int dim = g.dim;
  return [s, dim](const Point& x) {
    double r2 = 0.0;
    for (int d = 0; d < dim; ++d) r2 += x[d] * x[d];
    const double r = std::sqrt(r2);
    if (r < s) return 1.0 - std::log(s);
    return r < 1.0 / std::numbers::e ? std::log(1.0 / r) : 1.0;
  };
}

double triebel_lizorkin_norm(const SampledField& u, double s, double p, double q,
                             const Weight& w, const DyadicPartition& dp) {
  if (u.side != Side::physical)
    throw config_error("triebel_lizorkin_norm: physical-side field required");
  if (!(q > 0.0) || std::isinf(q))
    throw config_error("triebel_lizorkin_norm: q = infinity not supported");
  const Grid& g = u.grid;
  const SampledField uhat = transform(u, Side::frequency);

  SampledField aggregate(g, Side::physical);
  for (int j = 0; j <= dp.j_max; ++j) {
    SampledField piece = uhat;
    for (std::int64_t k = 0; k < g.size(); ++k)
      piece.values[k] *= dp.piece(j, g.freq_norm_at(k));
    const SampledField pj = transform(piece, Side::physical);
    const double scale = std::pow(2.0, j * s);
    for (std::int64_t i = 0; i < g.size(); ++i)
      aggregate.values[i] += std::pow(scale * std::abs(pj.values[i]), q);
  }
  for (std::int64_t i = 0; i < g.size(); ++i)
    aggregate.values[i] = std::pow(aggregate.values[i].real(), 1.0 / q);
  return weighted_norm(aggregate, p, w);
}

}  // namespace fiolab
