#include "fiolab/phase_reduce.hpp"

#include <cmath>
#include <numbers>

#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

double norm(const Point& p, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

double chord(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return std::sqrt(s);
}

}  // namespace

double ReducedPhase::cutoff(int l, const Point& xi) const {
  const int n = phi.dim;
  const double r = norm(xi, n);
  if (r == 0.0) return 0.0;
  if (n == 1) return (centers[l][0] > 0.0) == (xi[0] > 0.0) ? 1.0 : 0.0;
  Point dir{};
  for (int d = 0; d < n; ++d) dir[d] = xi[d] / r;
  const double rho = support_radius();
  const double mine = unit_bump(chord(dir, centers[l], n) / rho);
  if (mine == 0.0) return 0.0;
  double total = 0.0;
  for (int m = 0; m < pieces(); ++m)
    total += unit_bump(chord(dir, centers[m], n) / rho);
  return mine / total;
}

double ReducedPhase::theta(int l, const Point& x, const Point& xi) const {
  const Point p = pivot(l, x);
  double s = 0.0;
  for (int d = 0; d < phi.dim; ++d) s += p[d] * xi[d];
  return phi.eval(x, xi) - s;
}

Point ReducedPhase::pivot(int l, const Point& x) const {
  return phi.grad_xi(x, centers[l]);
}

ReducedPhase phase_reduce(const PhaseSpec& phi, int M) {
  if (!phi.homogeneous_degree_1)
    throw config_error("phase_reduce: phase must be homogeneous of degree 1");
  const int n = phi.dim;

  ReducedPhase rp;
  rp.phi = phi;

  if (n == 1) {
    if (M < 2) throw config_error("phase_reduce: need M >= 2 pieces for n = 1");
    rp.centers = {Point{1.0}, Point{-1.0}};
    rp.diameter = 0.0;
    return rp;
  }

  if (n == 2) {
    // equally spaced arc centers; covering radius = half arc chord
    const double target = 0.5;
    const double covering = 2.0 * std::sin(std::numbers::pi / M);
    if (covering > target)
      throw config_error(
          "phase_reduce: M too small for covering diameter 1/2 on the circle");
    for (int l = 0; l < M; ++l) {
      const double th = 2.0 * std::numbers::pi * l / M;
      rp.centers.push_back(Point{std::cos(th), std::sin(th)});
    }
    rp.diameter = covering;
    return rp;
  }

  // n == 3: Fibonacci centers; covering radius ~ sqrt(4 pi / M) area heuristic,
  // verified by sampling below.
  const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int l = 0; l < M; ++l) {
    const double z = 1.0 - 2.0 * (l + 0.5) / M;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    rp.centers.push_back(Point{r * std::cos(ga * l), r * std::sin(ga * l), z});
  }
  double covering = 0.0;
  for (int i = 0; i < 8192; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / 8192.0;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const Point p{r * std::cos(ga * 7.0 * i), r * std::sin(ga * 7.0 * i), z};
    double best = 4.0;
    for (const Point& c : rp.centers) best = std::min(best, chord(p, c, 3));
    covering = std::max(covering, best);
  }
  rp.diameter = 2.0 * covering;
  if (rp.diameter > 0.5)
    throw config_error("phase_reduce: M too small for covering diameter 1/2 on S^2");
  return rp;
}

}  // namespace fiolab
