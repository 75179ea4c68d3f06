#ifndef FIOLAB_SRC_FD_UTIL_HPP
#define FIOLAB_SRC_FD_UTIL_HPP

// Central finite-difference stencils composed across axes, for estimating
// mixed partial derivatives of black-box evaluation rules.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "fiolab/grid.hpp"
#include "fiolab/symbol.hpp"

namespace fiolab::detail {

struct StencilTap {
  double offset;
  double weight;
};

// Central stencil for d^k/dt^k at step h (k <= 3).
inline std::vector<StencilTap> central_stencil(int k, double h) {
  switch (k) {
    case 0:
      return {{0.0, 1.0}};
    case 1:
      return {{-h, -0.5 / h}, {h, 0.5 / h}};
    case 2:
      return {{-h, 1.0 / (h * h)}, {0.0, -2.0 / (h * h)}, {h, 1.0 / (h * h)}};
    default:  // k == 3
      return {{-2 * h, -0.5 / (h * h * h)},
              {-h, 1.0 / (h * h * h)},
              {h, -1.0 / (h * h * h)},
              {2 * h, 0.5 / (h * h * h)}};
  }
}

// All (shift vector, weight) pairs of the tensor-product stencil for the
// multi-index `mi` in `dim` variables with per-axis steps `h`.
inline std::vector<std::pair<Point, double>> product_stencil(const MultiIndex& mi,
                                                             int dim,
                                                             const Point& h) {
  std::vector<std::pair<Point, double>> taps = {{Point{}, 1.0}};
  for (int d = 0; d < dim; ++d) {
    const auto axis = central_stencil(mi[d], h[d]);
    std::vector<std::pair<Point, double>> next;
    next.reserve(taps.size() * axis.size());
    for (const auto& t : taps)
      for (const auto& a : axis) {
        Point p = t.first;
        p[d] += a.offset;
        next.emplace_back(p, t.second * a.weight);
      }
    taps = std::move(next);
  }
  return taps;
}

// d^alpha_xi d^beta_x f(x, xi) by composed central differences.
inline std::complex<double> mixed_derivative(
    const std::function<std::complex<double>(const Point&, const Point&)>& f,
    const Point& x, const Point& xi, const MultiIndex& beta,
    const MultiIndex& alpha, int dim, const Point& hx, const Point& hxi) {
  const auto xtaps = product_stencil(beta, dim, hx);
  const auto xitaps = product_stencil(alpha, dim, hxi);
  std::complex<double> acc = 0.0;
  for (const auto& tx : xtaps) {
    Point xs = x;
    for (int d = 0; d < dim; ++d) xs[d] += tx.first[d];
    for (const auto& txi : xitaps) {
      Point xis = xi;
      for (int d = 0; d < dim; ++d) xis[d] += txi.first[d];
      acc += tx.second * txi.second * f(xs, xis);
    }
  }
  return acc;
}

// Enumerate multi-indices in `dim` variables with total order in [lo, hi].
inline std::vector<MultiIndex> multi_indices(int dim, int lo, int hi) {
  std::vector<MultiIndex> out;
  MultiIndex mi{};
  const int cap = hi;
  std::function<void(int, int)> rec = [&](int d, int used) {
    if (d == dim) {
      const int total = used;
      if (total >= lo && total <= hi) out.push_back(mi);
      return;
    }
    for (int k = 0; k + used <= cap; ++k) {
      mi[d] = k;
      rec(d + 1, used + k);
    }
    mi[d] = 0;
  };
  rec(0, 0);
  return out;
}

}  // namespace fiolab::detail

#endif
