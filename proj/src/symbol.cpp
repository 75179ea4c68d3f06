#include "fiolab/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <memory>
#include <sstream>

#include "fd_util.hpp"
#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

double norm_of(const Point& p, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

double bracket(const Point& xi, int dim) {
  double s = 1.0;
  for (int d = 0; d < dim; ++d) s += xi[d] * xi[d];
  return std::sqrt(s);
}

}  // namespace

SymbolSpec bessel_power_symbol(double m, double rho, double delta) {
  SymbolSpec a;
  a.order = {m, rho, delta};
  a.family = SymbolFamily::bessel_power;
  a.label = "bessel_power(m=" + std::to_string(m) + ")";
  a.x_deriv_order = 8;
  a.eval = [m](const Point&, const Point& xi) {
    double s = 1.0;
    for (double c : xi) s += c * c;
    return cdouble(std::pow(s, 0.5 * m), 0.0);
  };
  return a;
}

SymbolSpec cutoff_times_power_symbol(double m, double cut) {
  SymbolSpec a;
  a.order = {m, 1.0, 0.0};
  a.family = SymbolFamily::cutoff_times_power;
  a.label = "cutoff_times_power(m=" + std::to_string(m) + ")";
  a.x_deriv_order = 8;
  a.eval = [m, cut](const Point&, const Point& xi) {
    double s2 = 0.0;
    for (double c : xi) s2 += c * c;
    return cdouble(chi0(std::sqrt(s2), cut) * std::pow(1.0 + s2, 0.5 * m), 0.0);
  };
  return a;
}

SymbolSpec x_window_symbol(double plateau, double support) {
  if (!(support > plateau) || !(plateau > 0.0))
    throw config_error("x_window_symbol: need 0 < plateau < support");
  SymbolSpec a;
  a.order = {0.0, 1.0, 0.0};
  a.family = SymbolFamily::custom;
  a.label = "x_window";
  a.x_deriv_order = 8;
  a.eval = [plateau, support](const Point& x, const Point&) {
    double r2 = 0.0;
    for (double c : x) r2 += c * c;
    const double r = std::sqrt(r2);
    return cdouble(1.0 - smooth_step((r - plateau) / (support - plateau)), 0.0);
  };
  return a;
}

SymbolSpec x_modulated_symbol(double m, const std::string& factor) {
  SymbolSpec a;
  a.order = {m, 1.0, 0.0};
  a.rough_in_x = true;
  a.family = SymbolFamily::x_modulated;
  a.label = "x_modulated(" + factor + ", m=" + std::to_string(m) + ")";
  if (factor == "step") {
    a.eval = [m](const Point& x, const Point& xi) {
      double s = 1.0;
      for (double c : xi) s += c * c;
      const double f = x[0] >= 0.0 ? 1.0 : 0.5;
      return cdouble(f * std::pow(s, 0.5 * m), 0.0);
    };
  } else if (factor == "sawtooth") {
    a.eval = [m](const Point& x, const Point& xi) {
      double s = 1.0;
      for (double c : xi) s += c * c;
      const double f = 0.5 + 0.5 * (x[0] - std::floor(x[0]));
      return cdouble(f * std::pow(s, 0.5 * m), 0.0);
    };
  } else {
    throw config_error("x_modulated_symbol: unknown factor '" + factor + "'");
  }
  return a;
}

SymbolSpec constant_symbol() { return bessel_power_symbol(0.0); }

SymbolSpec tabulated_symbol(const Grid& g, std::istream& csv, OrderParams order) {
  auto table = std::make_shared<std::vector<cdouble>>(
      static_cast<std::size_t>(g.size()) * static_cast<std::size_t>(g.size()),
      cdouble(0.0, 0.0));
  std::string line;
  if (!std::getline(csv, line)) throw config_error("tabulated symbol: empty csv");
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');
    const std::int64_t xi_ = std::stoll(tok);
    std::getline(ss, tok, ',');
    const std::int64_t ki = std::stoll(tok);
    std::getline(ss, tok, ',');
    const double re = std::stod(tok);
    std::getline(ss, tok, ',');
    const double im = std::stod(tok);
    if (xi_ < 0 || xi_ >= g.size() || ki < 0 || ki >= g.size())
      throw config_error("tabulated symbol: index out of range");
    (*table)[static_cast<std::size_t>(xi_) * g.size() + ki] = cdouble(re, im);
  }

  SymbolSpec a;
  a.order = order;
  a.rough_in_x = true;
  a.family = SymbolFamily::tabulated;
  a.label = "tabulated";
  const Grid grid = g;
  a.eval = [table, grid](const Point& x, const Point& xi) {
    // nearest grid cell lookup on both lattices
    std::array<int, kMaxDim> xi_idx{}, x_idx{};
    for (int d = 0; d < grid.dim; ++d) {
      const double fx = (x[d] + grid.half_width) / grid.spacing();
      x_idx[d] = std::clamp(static_cast<int>(std::lround(fx)), 0,
                            grid.points_per_axis - 1);
      const double fk = xi[d] / grid.dual_spacing();
      int sk = static_cast<int>(std::lround(fk));
      sk = std::clamp(sk, -grid.points_per_axis / 2, grid.points_per_axis / 2 - 1);
      xi_idx[d] = sk < 0 ? sk + grid.points_per_axis : sk;
    }
    return (*table)[static_cast<std::size_t>(grid.flatten(x_idx)) * grid.size() +
                    grid.flatten(xi_idx)];
  };
  return a;
}

SeminormReport seminorm_report(const SymbolSpec& a, int max_order, const Grid& grid,
                               const std::vector<Point>& x_samples,
                               double tolerance) {
  if (max_order > 3)
    throw config_error("seminorm_report: finite differences support order <= 3");
  if (!a.rough_in_x && max_order > a.x_deriv_order + 3)
    throw config_error("seminorm_report: symbol declares too few x-derivatives");

  // Deterministic xi lattice: every stride-th frequency bin.
  const std::int64_t total = grid.size();
  const std::int64_t stride = std::max<std::int64_t>(
      1, total / (grid.dim == 1 ? 128 : 4096));
  std::vector<Point> xi_samples;
  for (std::int64_t i = 0; i < total; i += stride)
    xi_samples.push_back(grid.freq_at(i));

  SeminormReport rep;
  rep.max_order = max_order;
  rep.tolerance = tolerance;
  rep.sample_descriptor =
      "xi lattice stride " + std::to_string(stride) + " (" +
      std::to_string(xi_samples.size()) + " pts), " +
      std::to_string(x_samples.size()) + " x samples; sampled max, lower bound of sup";

  const auto alphas = detail::multi_indices(grid.dim, 0, max_order);
  for (const auto& alpha : alphas) {
    for (const auto& beta : detail::multi_indices(grid.dim, 0, max_order)) {
      if (order_of(alpha) + order_of(beta) > max_order) continue;
      if (order_of(beta) > 0 && a.rough_in_x)
        throw config_error(
            "seminorm_report: x-derivatives requested on a rough-in-x symbol");
      SeminormEntry e;
      e.alpha = alpha;
      e.beta = beta;
      for (const Point& x : x_samples) {
        for (const Point& xi : xi_samples) {
          Point hx{}, hxi{};
          for (int d = 0; d < grid.dim; ++d) {
            hx[d] = 1e-3;
            hxi[d] = 1e-3 * (1.0 + norm_of(xi, grid.dim));
          }
          const cdouble der =
              detail::mixed_derivative(a.eval, x, xi, beta, alpha, grid.dim, hx, hxi);
          const double weight =
              std::pow(bracket(xi, grid.dim), -a.order.m + a.order.rho * order_of(alpha) -
                                                  a.order.delta * order_of(beta));
          e.value = std::max(e.value, weight * std::abs(der));
        }
      }
      e.violation = e.value > tolerance;
      rep.any_violation = rep.any_violation || e.violation;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace fiolab
