#pragma once

// Every tolerance used by the library and its verification suites, pinned in
// one place.  Nothing here is tuned at runtime; config/CLI overrides replace
// a suite's headline tolerance but default to these values.

namespace tpk::tol {

// Adaptive tail cutoff for series windows and k-sums: summation stops once
// terms stay below this for three consecutive indices.
inline constexpr double kTail = 1e-12;

// Agreement between the resolvent route and the closed block formula for the
// kernel (both float): an exact matrix identity, so only roundoff remains.
inline constexpr double kDirectVsBlocks = 1e-10;

// Agreement between either matrix route and the coefficient-series route,
// which carries truncation error on top of roundoff.
inline constexpr double kCrossRoute = 1e-8;

// Residual of (1+L)(1-K) = 1 on the computed resolvent.
inline constexpr double kDefiningResidual = 1e-10;

// Spectrum certification: maximum tolerated |Im lambda|, and the allowed
// overshoot of Re lambda outside [0,1].
inline constexpr double kImag = 1e-8;
inline constexpr double kEdge = 1e-8;

// Eigenvalues within this distance of 1 are counted separately in spectrum
// reports: at an endpoint the open-interval claim degrades to closure.
inline constexpr double kNearOne = 1e-6;

// Hausdorff distance between sorted nonzero spectra of two operators that
// must agree (corner of the kernel vs. the Toeplitz-ratio form).
inline constexpr double kSpectrumMatch = 1e-10;

// Floor below which an eigenvalue is treated as numerically zero when
// comparing nonzero spectra across different truncation sizes.
inline constexpr double kEigenFloor = 1e-12;

// Float-mode floor for "this minor is nonnegative" audits (exact mode uses
// true sign tests and ignores this).
inline constexpr double kMinorFloat = 1e-12;

// Final-step Hausdorff distance demanded by the truncation-convergence sweep.
inline constexpr double kConvergence = 1e-8;

// Slack added on top of the enumerated tail bound when brute-force
// correlation sums are compared against kernel determinants.
inline constexpr double kCorrelation = 1e-7;

// Relative agreement demanded between the series form and the closed product
// form of the normalization constant.
inline constexpr double kZRelative = 1e-6;

// A pivot below this multiple of the max row norm makes float Gauss-Jordan
// declare the matrix numerically singular.
inline constexpr double kSingularPivotFactor = 1e-13;

// |det(1+L)| below this makes the float resolvent route refuse to invert.
// (The determinant approximates the measure normalization, which is >= 1
// for admissible parameters, so hitting the floor signals real trouble.)
inline constexpr double kResolventDetFloor = 1e-9;

// Monotonicity checks on convergence traces allow regressions up to this
// noise floor (differences of quantities that are themselves ~1e-12).
inline constexpr double kMonotonicitySlack = 1e-12;

// The brute-force total measure mass is a sum of positive weights whose
// true value sits below 1 by a geometrically small tail; accumulated float
// rounding may still land a hair above 1, so the mass check allows this
// much overshoot.
inline constexpr double kMassSlack = 1e-12;

}  // namespace tpk::tol
