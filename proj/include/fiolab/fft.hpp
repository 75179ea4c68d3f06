#ifndef FIOLAB_FFT_HPP
#define FIOLAB_FFT_HPP

#include <complex>
#include <vector>

namespace fiolab {

using cdouble = std::complex<double>;

// In-place unnormalized DFT of length a.size():
//   forward:  X_k = sum_j a_j exp(-2 pi i jk / N)
//   inverse:  X_j = sum_k a_k exp(+2 pi i jk / N)     (no 1/N factor)
// Power-of-two lengths run the radix-2 path, anything else Bluestein.
void dft(std::vector<cdouble>& a, bool inverse);

// Apply dft along every axis of a row-major dim-dimensional cube with
// `n_per_axis` entries per axis.  data.size() must be n_per_axis^dim.
void dft_nd(std::vector<cdouble>& data, int dim, int n_per_axis, bool inverse);

}  // namespace fiolab

#endif
