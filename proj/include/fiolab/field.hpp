#ifndef FIOLAB_FIELD_HPP
#define FIOLAB_FIELD_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fiolab/grid.hpp"

namespace fiolab {

using cdouble = std::complex<double>;

enum class Side { physical, frequency };

// Complex samples on a Grid, either of u(x_j) or of the continuous-transform
// values uhat(xi_k) on the dual grid (FFT natural frequency order).
struct SampledField {
  Grid grid;
  Side side = Side::physical;
  std::vector<cdouble> values;

  SampledField() = default;
  SampledField(const Grid& g, Side s)
      : grid(g), side(s), values(static_cast<std::size_t>(g.size())) {}

  double l2_norm() const;  // (sum |v|^2 dV)^{1/2} with the side's cell volume
  double max_abs() const;
};

SampledField make_field(const Grid& g, Side side,
                        const std::function<cdouble(const Point&)>& f);

// Forward: uhat(xi_k) = dx^n sum_j u(x_j) e^{-i<x_j,xi_k>}
// Inverse: u(x_j) = (2 pi)^{-n} dxi^n sum_k uhat(xi_k) e^{+i<x_j,xi_k>}
// so that inverse(forward(u)) == u up to rounding.
SampledField transform(const SampledField& u, Side target);

// In-place axpy-style helpers.
void accumulate(SampledField& dst, const SampledField& src, cdouble scale);
double relative_l2_error(const SampledField& got, const SampledField& want);

// CSV: header "i0[,i1[,i2]],re,im", one row per sample, row-major order.
void write_field_csv(const SampledField& u, std::ostream& os);
SampledField read_field_csv(const Grid& g, Side side, std::istream& is);

// Binary dump: little-endian header (uint32 n, uint32 N, float64 L) followed
// by N^n little-endian float64 (re,im) pairs in row-major order.
void write_field_binary(const SampledField& u, std::ostream& os);
SampledField read_field_binary(std::istream& is, Side side);

}  // namespace fiolab

#endif
