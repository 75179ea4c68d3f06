#include "fiolab/cone_frame.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fd_util.hpp"
#include "fiolab/bump.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

constexpr double kSupportMargin = 1.1;

double norm(const Point& p, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += p[d] * p[d];
  return std::sqrt(s);
}

std::vector<Point> direction_lattice(int n) {
  std::vector<Point> out;
  if (n == 2) {
    const int M = 16384;
    out.reserve(M);
    for (int i = 0; i < M; ++i) {
      const double th = 2.0 * std::numbers::pi * i / M;
      out.push_back(Point{std::cos(th), std::sin(th)});
    }
  } else {
    const int M = 200000;
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    out.reserve(M);
    for (int i = 0; i < M; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / M;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      out.push_back(Point{r * std::cos(ga * i), r * std::sin(ga * i), z});
    }
  }
  return out;
}

}  // namespace

double ConeFrame::direction_distance(int nu, const Point& xi) const {
  const double r = norm(xi, dim);
  if (r == 0.0) return 2.0;
  double s = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double diff = xi[d] / r - centers[nu][d];
    s += diff * diff;
  }
  return std::sqrt(s);
}

double ConeFrame::psi(int nu, const Point& xi) const {
  const double r = norm(xi, dim);
  if (r == 0.0) return 0.0;
  if (dim == 1) {
    // two half-lines; smooth on R \ 0
    const bool positive = xi[0] > 0.0;
    return (centers[nu][0] > 0.0) == positive ? 1.0 : 0.0;
  }
  const double rho = kSupportMargin * aperture();
  const double mine = unit_bump(direction_distance(nu, xi) / rho);
  if (mine == 0.0) return 0.0;
  double total = 0.0;
  for (int mu = 0; mu < count(); ++mu)
    total += unit_bump(direction_distance(mu, xi) / rho);
  return mine / total;
}

double ConeFrame::cardinality_ratio() const {
  return count() * std::pow(h, 0.5 * (dim - 1));
}

std::string ConeFrame::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"h\":" << h << ",\"dim\":" << dim << ",\"J\":" << count()
     << ",\"centers\":[";
  for (int nu = 0; nu < count(); ++nu) {
    os << (nu ? "," : "") << "[";
    for (int d = 0; d < dim; ++d) os << (d ? "," : "") << centers[nu][d];
    os << "]";
  }
  os << "]}";
  return os.str();
}

ConeFrame sss_frame(double h, int n) {
  if (!(h > 0.0) || h > 1.0) throw config_error("sss_frame: h must be in (0, 1]");
  if (n < 1 || n > 3) throw config_error("sss_frame: n must be 1, 2 or 3");

  ConeFrame f;
  f.h = h;
  f.dim = n;
  if (n == 1) {
    f.centers = {Point{1.0}, Point{-1.0}};
    return f;
  }

  const double sep = std::sqrt(h);
  for (const Point& cand : direction_lattice(n)) {
    bool ok = true;
    for (const Point& c : f.centers) {
      double s = 0.0;
      for (int d = 0; d < n; ++d) s += (cand[d] - c[d]) * (cand[d] - c[d]);
      if (s < sep * sep) {
        ok = false;
        break;
      }
    }
    if (ok) f.centers.push_back(cand);
  }
  return f;
}

SymbolSpec sss_symbol(const SymbolSpec& a, const PhaseSpec& phi,
                      const ConeFrame& frame, int nu, double h) {
  if (nu < 0 || nu >= frame.count())
    throw config_error("sss_symbol: cone index out of range");
  if (phi.class_k > 2)
    throw config_error("sss_symbol: phase must be in Phi^2 or LinfPhi^2");

  SymbolSpec b;
  b.order = a.order;
  b.rough_in_x = a.rough_in_x || phi.rough_in_x;
  b.family = SymbolFamily::custom;
  b.label = "sss_piece(nu=" + std::to_string(nu) + ", h=" + std::to_string(h) + ")";
  const int n = frame.dim;
  const Point center = frame.centers[nu];
  const ConeFrame fr = frame;
  const SymbolSpec base = a;
  const PhaseSpec ph = phi;
  b.eval = [base, ph, fr, nu, h, center, n](const Point& x, const Point& xi) {
    const double psi = fr.psi(nu, xi);
    if (psi == 0.0) return cdouble(0.0, 0.0);
    double r = 0.0;
    for (int d = 0; d < n; ++d) r += xi[d] * xi[d];
    r = std::sqrt(r);
    // annulus cutoff chi supported in 1/2 <= |xi| <= 2
    const double chi = radial_cutoff(r) - radial_cutoff(2.0 * r);
    if (chi == 0.0) return cdouble(0.0, 0.0);
    Point xi_over_h{};
    for (int d = 0; d < n; ++d) xi_over_h[d] = xi[d] / h;
    const Point pivot = ph.grad_xi(x, center);
    double pdot = 0.0;
    for (int d = 0; d < n; ++d) pdot += pivot[d] * xi[d];
    const double ang = (ph.eval(x, xi) - pdot) / h;
    return cdouble(std::cos(ang), std::sin(ang)) * chi * psi *
           base.eval(x, xi_over_h);
  };
  return b;
}

SssSymbolDiagnostics sss_symbol_diagnostics(const SymbolSpec& a,
                                            const PhaseSpec& phi,
                                            const ConeFrame& frame, int nu,
                                            double h, int max_order,
                                            const std::vector<Point>& x_samples) {
  const SymbolSpec b = sss_symbol(a, phi, frame, nu, h);
  const int n = frame.dim;
  const Point e1 = frame.centers[nu];

  // orthonormal frame adapted to the cone direction
  std::vector<Point> axes{e1};
  if (n >= 2) {
    Point e2{};
    e2[0] = -e1[1];
    e2[1] = e1[0];
    const double r = std::hypot(e2[0], e2[1]);
    for (int d = 0; d < 2; ++d) e2[d] /= r == 0.0 ? 1.0 : r;
    axes.push_back(e2);
  }
  if (n == 3) {
    Point e3{};
    e3[0] = axes[0][1] * axes[1][2] - axes[0][2] * axes[1][1];
    e3[1] = axes[0][2] * axes[1][0] - axes[0][0] * axes[1][2];
    e3[2] = axes[0][0] * axes[1][1] - axes[0][1] * axes[1][0];
    axes.push_back(e3);
  }

  // sample points across the cone within the annulus
  std::vector<Point> xi_samples;
  const double ap = frame.aperture();
  for (int ir = 0; ir <= 6; ++ir) {
    const double r = 0.75 + 0.5 * ir / 6.0;  // inside supp chi
    for (int it = -6; it <= 6; ++it) {
      const double t = 0.9 * ap * it / 6.0;
      Point dir{};
      if (n == 1) {
        dir[0] = e1[0];
      } else {
        // rotate center by chord offset t within the plane (e1, e2)
        const double c = 1.0 - 0.5 * t * t;  // cos(angle) for chord t
        const double s = t * std::sqrt(std::max(0.0, 1.0 - 0.25 * t * t));
        for (int d = 0; d < n; ++d) dir[d] = c * axes[0][d] + s * axes[1][d];
      }
      Point xi{};
      for (int d = 0; d < n; ++d) xi[d] = r * dir[d];
      xi_samples.push_back(xi);
    }
    if (n == 1) break;
  }

  SssSymbolDiagnostics diag;
  for (int kr = 0; kr <= max_order; ++kr) {
    for (int ko = 0; ko + kr <= max_order && ko <= (n >= 2 ? max_order : 0); ++ko) {
      SssSymbolDiagnostics::Entry e;
      e.order_radial = kr;
      e.order_ortho = ko;
      e.reference = std::pow(
          h, -a.order.m - (kr + ko) * (1.0 - a.order.rho) - 0.5 * ko);
      const double step_r = 0.02;
      const double step_o = 0.02 * ap;
      for (const Point& x : x_samples) {
        for (const Point& xi : xi_samples) {
          // directional central differences in the adapted frame
          auto fdir = [&](double tr, double to) {
            Point p = xi;
            for (int d = 0; d < n; ++d) {
              p[d] += tr * axes[0][d];
              if (n >= 2) p[d] += to * axes[1][d];
            }
            return b.eval(x, p);
          };
          const auto taps_r = detail::central_stencil(kr, step_r);
          const auto taps_o = detail::central_stencil(ko, step_o);
          cdouble acc = 0.0;
          for (const auto& tr : taps_r)
            for (const auto& to : taps_o)
              acc += tr.weight * to.weight * fdir(tr.offset, to.offset);
          e.measured_sup = std::max(e.measured_sup, std::abs(acc));
        }
      }
      diag.entries.push_back(e);
    }
  }
  return diag;
}

}  // namespace fiolab
