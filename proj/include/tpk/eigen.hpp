#pragma once

// Dense nonsymmetric eigenvalue solver, float only.  The pipeline is the
// classical one: diagonal balancing, reduction to upper Hessenberg form by
// stabilized elementary similarity transformations, then the implicit
// double-shift QR iteration with the usual exceptional shifts at iterations
// 10 and 20.  Eigenvectors are not computed; the consumers here only certify
// spectra.

#include <complex>
#include <vector>

#include "tpk/matrix.hpp"

namespace tpk {

struct EigenResult {
  std::vector<std::complex<double>> values;  // unordered as produced
  int iterations = 0;                        // total QR sweeps
  // A backward-error bound for the returned spectrum: the computed values
  // are exact for some A+E with ||E|| <= this (c * n * eps * ||A||).
  double backwardErrorBound = 0.0;
};

// Throws DimensionError for non-square input and ConvergenceError (with an
// iteration count) if any eigenvalue fails to settle within 30 sweeps.
EigenResult eigenvalues(const Matrix<double>& a);

// Eigenvalues sorted by descending |value|, ties by real part then imaginary
// part; the ordering every spectrum report uses.
std::vector<std::complex<double>> sortedEigenvalues(const Matrix<double>& a);

}  // namespace tpk
