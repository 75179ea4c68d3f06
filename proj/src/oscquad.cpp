#include "fiolab/oscquad.hpp"

#include <cmath>

#include "fiolab/errors.hpp"

namespace fiolab {

double radial_profile_1d(const std::function<double(double)>& g,
                         const std::function<double(double)>& gprime, double x,
                         double K, double step) {
  std::int64_t panels = static_cast<std::int64_t>(std::ceil(K / step));
  if (panels & 1) ++panels;  // Simpson needs an even count
  const double h = K / panels;
  // composite Simpson over [0, K]
  double acc = g(0.0) + g(K) * std::cos(x * K);
  double odd = 0.0, even = 0.0;
#pragma omp parallel for reduction(+ : odd, even)
  for (std::int64_t i = 1; i < panels; ++i) {
    const double r = i * h;
    const double v = g(r) * std::cos(x * r);
    if (i & 1)
      odd += v;
    else
      even += v;
  }
  acc += 4.0 * odd + 2.0 * even;
  double val = acc * h / 3.0;
  // tail int_K^inf g cos(xr) dr ~ -sin(xK) g(K)/x - cos(xK) g'(K)/x^2
  if (x != 0.0)
    val += -std::sin(x * K) * g(K) / x - std::cos(x * K) * gprime(K) / (x * x);
  return 2.0 * val;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw precondition_error("loglog_slope: need >= 2 matched samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(std::abs(y[i]) > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw precondition_error("loglog_slope: degenerate sample set");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace fiolab
