#ifndef FIOLAB_CONE_FRAME_HPP
#define FIOLAB_CONE_FRAME_HPP

#include <string>
#include <vector>

#include "fiolab/phase.hpp"
#include "fiolab/symbol.hpp"

namespace fiolab {

// Second (angular) frequency decomposition at scale h: unit vectors xi^nu
// separated by sqrt(h), cones of aperture sqrt(h) around them, and a
// homogeneous degree-0 partition of unity subordinate to the cones.
struct ConeFrame {
  double h = 1.0;
  int dim = 1;
  std::vector<Point> centers;

  int count() const { return static_cast<int>(centers.size()); }
  double aperture() const { return std::sqrt(h); }

  // Chordal distance from the direction of xi to center nu.
  double direction_distance(int nu, const Point& xi) const;

  // psi^nu(xi): normalized bump over the packing, homogeneous of degree 0,
  // supported within 1.1x the cone aperture (the 10% margin keeps the bump
  // sum positive at the covering boundary).  Zero xi returns 0.
  double psi(int nu, const Point& xi) const;

  // c1, c2 with c1 h^{-(n-1)/2} <= J <= c2 h^{-(n-1)/2} for this frame.
  double cardinality_ratio() const;

  std::string to_json() const;
};

// Deterministic greedy packing over a fixed fine lattice of directions.
// n = 1 degenerates to the two half-lines.
ConeFrame sss_frame(double h, int n);

// The SSS piece symbol
//   b^nu(x, xi, h) = e^{(i/h)(phi(x,xi) - <grad_xi phi(x, xi^nu), xi>)}
//                    chi(xi) psi^nu(xi) a(x, xi/h)
// where chi is the annulus cutoff of the dyadic piece (radial profile of
// chi_1 evaluated at |xi|) and Euler's identity replaced <grad phi, xi> by
// phi itself.  Returned as an evaluable SymbolSpec.
SymbolSpec sss_symbol(const SymbolSpec& a, const PhaseSpec& phi,
                      const ConeFrame& frame, int nu, double h);

struct SssSymbolDiagnostics {
  // measured sup |d^alpha_xi b^nu| in the nu-adapted frame, per multi-index
  // (orders along xi^nu and orthogonal to it), with the reference scaling
  // h^{-m - |alpha|(1-rho) - |alpha'|/2}.
  struct Entry {
    int order_radial = 0;
    int order_ortho = 0;
    double measured_sup = 0.0;
    double reference = 1.0;  // h^{-m-|alpha|(1-rho)-|alpha'|/2}
  };
  std::vector<Entry> entries;
};

// Finite-difference sup of the derivatives of b^nu over the annulus cone,
// compared against the semiclassical reference exponents.
SssSymbolDiagnostics sss_symbol_diagnostics(const SymbolSpec& a,
                                            const PhaseSpec& phi,
                                            const ConeFrame& frame, int nu,
                                            double h, int max_order,
                                            const std::vector<Point>& x_samples);

}  // namespace fiolab

#endif
