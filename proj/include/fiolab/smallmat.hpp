#ifndef FIOLAB_SMALLMAT_HPP
#define FIOLAB_SMALLMAT_HPP

#include <array>
#include <cmath>

#include "fiolab/grid.hpp"

namespace fiolab {

// Dense n x n matrix with n <= kMaxDim, stored row-major in a fixed array.
struct SmallMat {
  int n = 1;
  std::array<double, kMaxDim * kMaxDim> a{};

  double& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  double operator()(int i, int j) const { return a[i * kMaxDim + j]; }
};

double det(const SmallMat& m);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps.
std::array<double, kMaxDim> symmetric_eigenvalues(const SmallMat& m);

// Rank of a symmetric matrix: eigenvalues below tol * max|eig| count as zero.
int symmetric_rank(const SmallMat& m, double tol);

// det_{n-1}: product of the eigenvalues that survive the rank tolerance,
// i.e. the determinant of PMP with P projecting off ker M.  Returns det(m)
// itself when m has full rank and 1 for the zero matrix.
double det_reduced(const SmallMat& m, double tol);

}  // namespace fiolab

#endif
