#include "fiolab/phase.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fd_util.hpp"
#include "fiolab/errors.hpp"

namespace fiolab {

namespace {

double dot(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += a[d] * b[d];
  return s;
}

double norm(const Point& a, int n) { return std::sqrt(dot(a, a, n)); }

SmallMat identity(int n) {
  SmallMat m;
  m.n = n;
  for (int d = 0; d < n; ++d) m(d, d) = 1.0;
  return m;
}

SmallMat zero(int n) {
  SmallMat m;
  m.n = n;
  return m;
}

// t * (I - xihat xihat^T) / |xi|, the xi-Hessian of t|xi|.
SmallMat sphere_hessian(const Point& xi, int n, double t) {
  SmallMat m = zero(n);
  const double r = norm(xi, n);
  if (r == 0.0) return m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = t * ((i == j ? 1.0 : 0.0) - xi[i] * xi[j] / (r * r)) / r;
  return m;
}

double rough_time(const std::string& rule, double t0, double t1, const Point& x) {
  if (rule == "step") return x[0] >= 0.0 ? t1 : t0;
  // sawtooth
  const double f = x[0] - std::floor(x[0]);
  return t0 + (t1 - t0) * f;
}

// Deterministic unit-sphere sample set.
std::vector<Point> sphere_samples(int n, int count) {
  std::vector<Point> out;
  if (n == 1) {
    out.push_back(Point{1.0});
    out.push_back(Point{-1.0});
    return out;
  }
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * i / count;
      out.push_back(Point{std::cos(th), std::sin(th)});
    }
    return out;
  }
  // Fibonacci sphere
  const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.push_back(Point{r * std::cos(ga * i), r * std::sin(ga * i), z});
  }
  return out;
}

}  // namespace

PhaseSpec linear_phase(int n) {
  PhaseSpec p;
  p.family = PhaseFamily::linear;
  p.label = "linear";
  p.dim = n;
  p.eval = [n](const Point& x, const Point& xi) { return dot(x, xi, n); };
  p.grad_xi = [](const Point& x, const Point&) { return x; };
  p.hess_mixed = [n](const Point&, const Point&) { return identity(n); };
  p.hess_xixi = [n](const Point&, const Point&) { return zero(n); };
  return p;
}

PhaseSpec wave_phase(int n, double t) {
  PhaseSpec p;
  p.family = PhaseFamily::wave;
  p.label = "wave(t=" + std::to_string(t) + ")";
  p.dim = n;
  p.eval = [n, t](const Point& x, const Point& xi) {
    return dot(x, xi, n) + t * norm(xi, n);
  };
  p.grad_xi = [n, t](const Point& x, const Point& xi) {
    Point g = x;
    const double r = norm(xi, n);
    if (r > 0.0)
      for (int d = 0; d < n; ++d) g[d] += t * xi[d] / r;
    return g;
  };
  p.hess_mixed = [n](const Point&, const Point&) { return identity(n); };
  p.hess_xixi = [n, t](const Point&, const Point& xi) {
    return sphere_hessian(xi, n, t);
  };
  return p;
}

PhaseSpec shifted_phase(int n) {
  PhaseSpec p;
  p.family = PhaseFamily::shifted;
  p.label = "shifted";
  p.dim = n;
  p.eval = [n](const Point& x, const Point& xi) { return dot(x, xi, n) + xi[0]; };
  p.grad_xi = [](const Point& x, const Point&) {
    Point g = x;
    g[0] += 1.0;
    return g;
  };
  p.hess_mixed = [n](const Point&, const Point&) { return identity(n); };
  p.hess_xixi = [n](const Point&, const Point&) { return zero(n); };
  return p;
}

PhaseSpec diffeo_scale_phase(int n, double scale) {
  if (scale == 0.0) throw config_error("diffeo_scale_phase: scale must be nonzero");
  PhaseSpec p;
  p.family = PhaseFamily::diffeo;
  p.label = "diffeo_scale(" + std::to_string(scale) + ")";
  p.dim = n;
  p.eval = [n, scale](const Point& x, const Point& xi) {
    return scale * dot(x, xi, n);
  };
  p.grad_xi = [n, scale](const Point& x, const Point&) {
    Point g{};
    for (int d = 0; d < n; ++d) g[d] = scale * x[d];
    return g;
  };
  p.hess_mixed = [n, scale](const Point&, const Point&) {
    SmallMat m = zero(n);
    for (int d = 0; d < n; ++d) m(d, d) = scale;
    return m;
  };
  p.hess_xixi = [n](const Point&, const Point&) { return zero(n); };
  return p;
}

PhaseSpec diffeo_sine_phase(int n, double amp) {
  if (std::abs(amp) >= 1.0)
    throw config_error("diffeo_sine_phase: |amp| < 1 required for a diffeomorphism");
  PhaseSpec p;
  p.family = PhaseFamily::diffeo;
  p.label = "diffeo_sine(" + std::to_string(amp) + ")";
  p.dim = n;
  p.eval = [n, amp](const Point& x, const Point& xi) {
    double s = 0.0;
    for (int d = 0; d < n; ++d) s += (x[d] + amp * std::sin(x[d])) * xi[d];
    return s;
  };
  p.grad_xi = [n, amp](const Point& x, const Point&) {
    Point g{};
    for (int d = 0; d < n; ++d) g[d] = x[d] + amp * std::sin(x[d]);
    return g;
  };
  p.hess_mixed = [n, amp](const Point& x, const Point&) {
    SmallMat m = zero(n);
    for (int d = 0; d < n; ++d) m(d, d) = 1.0 + amp * std::cos(x[d]);
    return m;
  };
  p.hess_xixi = [n](const Point&, const Point&) { return zero(n); };
  return p;
}

PhaseSpec rough_wave_phase(int n, const std::string& rule, double t0, double t1) {
  if (rule != "step" && rule != "sawtooth")
    throw config_error("rough_wave_phase: rule must be 'step' or 'sawtooth'");
  PhaseSpec p;
  p.family = PhaseFamily::rough_wave;
  p.label = "rough_wave(" + rule + ")";
  p.dim = n;
  p.rough_in_x = true;
  p.eval = [n, rule, t0, t1](const Point& x, const Point& xi) {
    return dot(x, xi, n) + rough_time(rule, t0, t1, x) * norm(xi, n);
  };
  p.grad_xi = [n, rule, t0, t1](const Point& x, const Point& xi) {
    Point g = x;
    const double r = norm(xi, n);
    if (r > 0.0) {
      const double t = rough_time(rule, t0, t1, x);
      for (int d = 0; d < n; ++d) g[d] += t * xi[d] / r;
    }
    return g;
  };
  p.hess_xixi = [n, rule, t0, t1](const Point& x, const Point& xi) {
    return sphere_hessian(xi, n, rough_time(rule, t0, t1, x));
  };
  return p;
}

PhaseReport phase_report(const PhaseSpec& phi, const Grid& grid,
                         const std::vector<Point>& x_samples,
                         const std::vector<Point>* xi_samples, double xi_floor,
                         double rank_tol) {
  const int n = phi.dim;
  if (xi_floor < 0.0) xi_floor = grid.dual_spacing();

  std::vector<Point> sphere = sphere_samples(n, n == 2 ? 64 : 128);
  std::vector<Point> annulus;
  if (xi_samples) {
    for (const Point& xi : *xi_samples)
      if (norm(xi, n) < xi_floor)
        throw precondition_error(
            "phase_report: xi sample inside the excluded ball at the origin");
    annulus = *xi_samples;
  } else {
    const std::int64_t total = grid.size();
    const std::int64_t stride =
        std::max<std::int64_t>(1, total / (n == 1 ? 128 : 1024));
    for (std::int64_t i = 0; i < total; i += stride) {
      Point xi = grid.freq_at(i);
      if (norm(xi, n) >= xi_floor) annulus.push_back(xi);
    }
  }

  PhaseReport rep;
  rep.sample_descriptor = std::to_string(sphere.size()) + " sphere + " +
                          std::to_string(annulus.size()) + " lattice xi samples, " +
                          std::to_string(x_samples.size()) + " x samples";

  // (i) strong non-degeneracy: min |det d2phi/dxdxi|
  if (!phi.rough_in_x && phi.hess_mixed) {
    double mn = std::numeric_limits<double>::infinity();
    for (const Point& x : x_samples)
      for (const Point& xi : sphere) mn = std::min(mn, std::abs(det(phi.hess_mixed(x, xi))));
    rep.min_abs_det_mixed = mn;
  } else {
    rep.min_abs_det_mixed = std::numeric_limits<double>::quiet_NaN();
  }

  // (ii) rank and det_{n-1} of the frequency Hessian on |xi| = 1
  int max_rank = 0;
  for (const Point& x : x_samples)
    for (const Point& xi : sphere)
      max_rank = std::max(max_rank, symmetric_rank(phi.hess_xixi(x, xi), rank_tol));
  rep.rank_hess_xixi = max_rank;
  double mind = std::numeric_limits<double>::infinity();
  for (const Point& x : x_samples)
    for (const Point& xi : sphere) {
      const SmallMat h = phi.hess_xixi(x, xi);
      if (symmetric_rank(h, rank_tol) == max_rank)
        mind = std::min(mind, std::abs(det_reduced(h, rank_tol)));
    }
  rep.det_reduced_hess = max_rank == 0 ? 0.0 : mind;

  // (iii) rough non-degeneracy constant over sampled pairs
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x_samples.size(); ++i)
    for (std::size_t j = i + 1; j < x_samples.size(); ++j) {
      const double dxy = norm(
          [&] {
            Point d{};
            for (int k = 0; k < n; ++k) d[k] = x_samples[i][k] - x_samples[j][k];
            return d;
          }(),
          n);
      if (dxy < 1e-12) continue;
      for (const Point& xi : sphere) {
        const Point gi = phi.grad_xi(x_samples[i], xi);
        const Point gj = phi.grad_xi(x_samples[j], xi);
        Point diff{};
        for (int k = 0; k < n; ++k) diff[k] = gi[k] - gj[k];
        c = std::min(c, norm(diff, n) / dxy);
      }
    }
  rep.rough_nondegeneracy_c = std::isfinite(c) ? c : 0.0;

  // (iv) Phi^k seminorm estimates for k <= |alpha|+|beta| <= 3
  auto feval = [&](const Point& x, const Point& xi) {
    return cdouble(phi.eval(x, xi), 0.0);
  };
  const int max_total = 3;
  for (const auto& alpha : detail::multi_indices(n, 0, max_total)) {
    for (const auto& beta : detail::multi_indices(n, 0, max_total)) {
      const int total = order_of(alpha) + order_of(beta);
      if (total < phi.class_k || total > max_total) continue;
      if (phi.rough_in_x && order_of(beta) > 0) continue;
      PhaseSeminormEntry e;
      e.alpha = alpha;
      e.beta = beta;
      for (const Point& x : x_samples) {
        for (const Point& xi : annulus) {
          const double r = norm(xi, n);
          Point hx{}, hxi{};
          for (int d = 0; d < n; ++d) {
            hx[d] = 1e-3;
            hxi[d] = 1e-3 * r;  // stay clear of the origin cone
          }
          const cdouble der =
              detail::mixed_derivative(feval, x, xi, beta, alpha, n, hx, hxi);
          e.value = std::max(
              e.value, std::pow(r, -1.0 + order_of(alpha)) * std::abs(der));
        }
      }
      rep.seminorms.push_back(e);
    }
  }
  return rep;
}

}  // namespace fiolab
