#include "fiolab/smallmat.hpp"

#include <algorithm>

namespace fiolab {

double det(const SmallMat& m) {
  switch (m.n) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    default:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
}

std::array<double, kMaxDim> symmetric_eigenvalues(const SmallMat& m) {
  SmallMat w = m;
  const int n = w.n;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += w(i, j) * w(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(w(p, q)) < 1e-300) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * w(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double wpk = w(p, k), wqk = w(q, k);
          w(p, k) = c * wpk - s * wqk;
          w(q, k) = s * wpk + c * wqk;
        }
        for (int k = 0; k < n; ++k) {
          const double wkp = w(k, p), wkq = w(k, q);
          w(k, p) = c * wkp - s * wkq;
          w(k, q) = s * wkp + c * wkq;
        }
      }
    }
  }
  std::array<double, kMaxDim> ev{};
  for (int i = 0; i < n; ++i) ev[i] = w(i, i);
  std::sort(ev.begin(), ev.begin() + n,
            [](double a, double b) { return std::abs(a) > std::abs(b); });
  return ev;
}

int symmetric_rank(const SmallMat& m, double tol) {
  const auto ev = symmetric_eigenvalues(m);
  const double scale = std::abs(ev[0]);
  if (scale == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < m.n; ++i)
    if (std::abs(ev[i]) >= tol * scale) ++r;
  return r;
}

double det_reduced(const SmallMat& m, double tol) {
  const auto ev = symmetric_eigenvalues(m);
  const double scale = std::abs(ev[0]);
  double d = 1.0;
  if (scale == 0.0) return d;
  for (int i = 0; i < m.n; ++i)
    if (std::abs(ev[i]) >= tol * scale) d *= ev[i];
  return d;
}

}  // namespace fiolab
