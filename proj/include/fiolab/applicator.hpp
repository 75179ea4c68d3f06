#ifndef FIOLAB_APPLICATOR_HPP
#define FIOLAB_APPLICATOR_HPP

#include <functional>
#include <vector>

#include "fiolab/cone_frame.hpp"
#include "fiolab/dyadic.hpp"
#include "fiolab/field.hpp"
#include "fiolab/phase.hpp"
#include "fiolab/symbol.hpp"

namespace fiolab {

// T u(x) = (2 pi)^{-n} sum_xi e^{i phi(x,xi)} a(x,xi) uhat(xi) dxi^n
// on the grid's frequency lattice, with the |xi| < low_cut/2 bins carried by
// the chi0 low-frequency branch and the rest by the high branch (the two
// branches sum to the full quadrature since chi0 + (1 - chi0) = 1).
struct FioOperator {
  SymbolSpec a;
  PhaseSpec phi;
  double low_cut = 2.0;  // chi0 support radius
};

FioOperator make_fio(const SymbolSpec& a, const PhaseSpec& phi,
                     double low_cut = 2.0);

// Direct oscillatory quadrature, O(N^{2n}); row-parallel over output x.
// This is the ground-truth path.
SampledField apply_fio(const FioOperator& op, const SampledField& u);

// Single-threaded reference with the identical summation order.
SampledField apply_fio_serial(const FioOperator& op, const SampledField& u);

// Adjoint by conjugate quadrature: <Tu, v> = <u, T*v> on the grid.
SampledField apply_fio_adjoint(const FioOperator& op, const SampledField& v);

// Multiplier path: inverse transform of sigma(xi) uhat(xi).  Exact for
// x-independent amplitudes and phases <x,xi> + psi(xi).
SampledField apply_multiplier(const std::function<cdouble(const Point&)>& sigma,
                              const SampledField& u);

// K(x, y_j) = (2 pi)^{-n} sum_xi e^{i(phi(x,xi) - <y_j,xi>)} a(x,xi) dxi^n
// over the frequency lattice of `g`.
std::vector<cdouble> kernel_row(const FioOperator& op, const Grid& g,
                                const Point& x, const std::vector<Point>& y_grid);
std::vector<cdouble> kernel_row_serial(const FioOperator& op, const Grid& g,
                                       const Point& x,
                                       const std::vector<Point>& y_grid);

struct PieceDiagnostics {
  struct Piece {
    int j = 0;
    int nu = -1;  // -1: whole Littlewood-Paley piece / low-frequency piece
    double l2_contribution = 0.0;
    double wall_seconds = 0.0;
  };
  std::vector<Piece> pieces;
  // least-squares slope of log2 ||T chi_j(D) u||_2 against j (j >= 1)
  double semiclassical_exponent = 0.0;
};

// Apply through the dyadic partition and per-scale cone frames:
//   T = T chi_0(D) + sum_j sum_nu T chi_j(D) psi^nu(D).
// frames[j-1] must be built at h = 2^{-j}.  Pieces are accumulated in a
// fixed order for bit-reproducibility.
std::pair<SampledField, PieceDiagnostics> apply_decomposed(
    const FioOperator& op, const SampledField& u, const DyadicPartition& dp,
    const std::vector<ConeFrame>& frames);

}  // namespace fiolab

#endif
