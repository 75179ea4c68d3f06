#ifndef FIOLAB_SYMBOL_HPP
#define FIOLAB_SYMBOL_HPP

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fiolab/field.hpp"
#include "fiolab/grid.hpp"

namespace fiolab {

using MultiIndex = std::array<int, kMaxDim>;

inline int order_of(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

// Order parameters (m, rho, delta) of the class S^m_{rho,delta}; the rough
// class L^inf S^m_rho drops the x-smoothness requirement.
struct OrderParams {
  double m = 0.0;
  double rho = 1.0;
  double delta = 0.0;

  // min(0, n(rho - delta)), the order shift entering the L^2 theory.
  double lambda(int n) const {
    const double v = n * (rho - delta);
    return v < 0.0 ? v : 0.0;
  }
};

enum class SymbolFamily {
  bessel_power,        // <xi>^m exactly
  cutoff_times_power,  // chi0(xi) <xi>^m
  x_modulated,         // bounded measurable x-factor times <xi>^m
  tabulated,
  custom,
};

struct SymbolSpec {
  OrderParams order;
  bool rough_in_x = false;
  SymbolFamily family = SymbolFamily::custom;
  std::string label;
  // Highest x-derivative order the eval rule supports (ignored when rough).
  int x_deriv_order = 0;
  std::function<cdouble(const Point& x, const Point& xi)> eval;
};

SymbolSpec bessel_power_symbol(double m, double rho = 1.0, double delta = 0.0);
SymbolSpec cutoff_times_power_symbol(double m, double cut = 2.0);
// Smooth spatial window: 1 on |x| <= plateau, 0 on |x| >= support.  Used to
// keep composition-type operators away from the periodic wrap.
SymbolSpec x_window_symbol(double plateau, double support);
// factor: one of "step" (sign of x1) or "sawtooth" (frac part of x1), both
// bounded and reproducible.
SymbolSpec x_modulated_symbol(double m, const std::string& factor);
SymbolSpec constant_symbol();

// CSV with header "x_index,xi_index,re,im"; indices are row-major flattened
// positions on the given grid (physical and frequency lattices).
SymbolSpec tabulated_symbol(const Grid& g, std::istream& csv, OrderParams order);

struct SeminormEntry {
  MultiIndex alpha{};  // xi derivatives
  MultiIndex beta{};   // x derivatives
  double value = 0.0;  // sampled sup of <xi>^{-m+rho|a|-delta|b|} |d^a_xi d^b_x a|
  bool violation = false;
};

struct SeminormReport {
  std::vector<SeminormEntry> entries;
  std::string sample_descriptor;
  int max_order = 0;
  double tolerance = 0.0;
  bool any_violation = false;
};

// Sampled lower bound of the class seminorms up to total derivative order
// `max_order`.  xi-derivatives use central finite differences; x-derivatives
// require a non-rough symbol and are flagged as a capability error otherwise.
// An entry is a violation when it exceeds `tolerance`.
SeminormReport seminorm_report(const SymbolSpec& a, int max_order, const Grid& grid,
                               const std::vector<Point>& x_samples,
                               double tolerance = 1e4);

}  // namespace fiolab

#endif
