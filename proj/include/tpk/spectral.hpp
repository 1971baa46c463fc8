#pragma once

// Spectrum certification, total-positivity audits, truncation-convergence
// sweeps, and the exact corner-minor identity harness.

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tpk/eigen.hpp"
#include "tpk/matrix.hpp"

namespace tpk {

enum class Verdict { pass, fail, inconclusive };

inline const char* verdictName(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

struct SpectrumReport {
  std::string operatorTag;
  int truncationOrder = 0;
  int tailStart = 0;
  std::vector<std::complex<double>> eigenvalues;  // descending |value|
  double maxImagAbs = 0.0;
  double minReal = 0.0;
  double maxReal = 0.0;
  // Eigenvalues within tol::kNearOne of 1: at truncation the open-ended
  // interval claim cannot be told apart from its closure, so these are
  // counted rather than failed.
  int nearOneCount = 0;
  std::vector<std::pair<int, double>> convergenceTrace;  // (order, distance)
  std::vector<double> determinantTrace;                  // det(1 + M_N)
  double imagTolerance = 0.0;
  double edgeTolerance = 0.0;
  Verdict verdict = Verdict::fail;
};

// Eigenvalues of m with the reality/range verdict: pass iff every
// eigenvalue has |Im| < imagTolerance and Re in [-edgeTolerance,
// 1 + edgeTolerance].
inline SpectrumReport spectrumVerdict(const Matrix<double>& m,
                                      const std::string& tag,
                                      double imagTolerance = tol::kImag,
                                      double edgeTolerance = tol::kEdge) {
  SpectrumReport rep;
  rep.operatorTag = tag;
  rep.truncationOrder = m.rows();
  rep.imagTolerance = imagTolerance;
  rep.edgeTolerance = edgeTolerance;
  rep.eigenvalues = sortedEigenvalues(m);
  for (const auto& ev : rep.eigenvalues) {
    rep.maxImagAbs = std::max(rep.maxImagAbs, std::fabs(ev.imag()));
    if (std::abs(ev - std::complex<double>(1.0, 0.0)) < tol::kNearOne)
      ++rep.nearOneCount;
  }
  if (rep.eigenvalues.empty()) {
    rep.minReal = rep.maxReal = 0.0;
  } else {
    rep.minReal = rep.maxReal = rep.eigenvalues.front().real();
    for (const auto& ev : rep.eigenvalues) {
      rep.minReal = std::min(rep.minReal, ev.real());
      rep.maxReal = std::max(rep.maxReal, ev.real());
    }
  }
  const bool ok = rep.maxImagAbs < imagTolerance &&
                  rep.minReal >= -edgeTolerance &&
                  rep.maxReal <= 1.0 + edgeTolerance;
  rep.verdict = ok ? Verdict::pass : Verdict::fail;
  return rep;
}

// Hausdorff distance between the nonzero parts of two spectra (eigenvalues
// with |value| <= floor are dropped: a truncation limit may gain or lose the
// point 0).  Empty vs empty is 0; empty vs nonempty is the largest surviving
// magnitude on the other side.
inline double spectrumHausdorff(const std::vector<std::complex<double>>& a,
                                const std::vector<std::complex<double>>& b,
                                double floor = tol::kEigenFloor) {
  std::vector<std::complex<double>> fa, fb;
  for (const auto& v : a)
    if (std::abs(v) > floor) fa.push_back(v);
  for (const auto& v : b)
    if (std::abs(v) > floor) fb.push_back(v);
  if (fa.empty() && fb.empty()) return 0.0;
  auto largest = [](const std::vector<std::complex<double>>& xs) {
    double m = 0.0;
    for (const auto& x : xs) m = std::max(m, std::abs(x));
    return m;
  };
  if (fa.empty()) return largest(fb);
  if (fb.empty()) return largest(fa);
  auto oneSided = [](const std::vector<std::complex<double>>& xs,
                     const std::vector<std::complex<double>>& ys) {
    double worst = 0.0;
    for (const auto& x : xs) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : ys) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(oneSided(fa, fb), oneSided(fb, fa));
}

// Truncation-convergence sweep: build the operator at every order in the
// schedule, track consecutive Hausdorff distances between nonzero spectra
// and det(1 + M_N).  Non-convergence at the end of the schedule is an
// inconclusive verdict, not an error.
inline SpectrumReport sweepConvergence(
    const std::function<Matrix<double>(int)>& builder,
    const std::vector<int>& schedule, const std::string& tag,
    double convergenceTolerance = tol::kConvergence,
    double imagTolerance = tol::kImag, double edgeTolerance = tol::kEdge,
    bool requireUnitUpperBound = true) {
  if (schedule.empty()) throw DimensionError("sweep schedule is empty");
  for (size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1])
      throw DomainError("sweep schedule must be strictly increasing");

  SpectrumReport rep;
  rep.operatorTag = tag;
  rep.imagTolerance = imagTolerance;
  rep.edgeTolerance = edgeTolerance;
  std::vector<std::complex<double>> prev;
  bool first = true;
  for (int n : schedule) {
    const Matrix<double> m = builder(n);
    if (!m.square()) throw DimensionError("sweep builder must return square");
    auto eig = sortedEigenvalues(m);
    rep.determinantTrace.push_back(
        determinant(Matrix<double>::identity(m.rows()) + m));
    if (!first)
      rep.convergenceTrace.emplace_back(n, spectrumHausdorff(prev, eig));
    prev = std::move(eig);
    first = false;
    rep.truncationOrder = n;
    rep.eigenvalues = prev;
  }
  for (const auto& ev : rep.eigenvalues) {
    rep.maxImagAbs = std::max(rep.maxImagAbs, std::fabs(ev.imag()));
  }
  if (rep.eigenvalues.empty()) {
    rep.minReal = rep.maxReal = 0.0;
  } else {
    rep.minReal = rep.maxReal = rep.eigenvalues.front().real();
    for (const auto& ev : rep.eigenvalues) {
      rep.minReal = std::min(rep.minReal, ev.real());
      rep.maxReal = std::max(rep.maxReal, ev.real());
    }
  }
  const bool converged = !rep.convergenceTrace.empty() &&
                         rep.convergenceTrace.back().second <
                             convergenceTolerance;
  if (!converged && schedule.size() > 1) {
    rep.verdict = Verdict::inconclusive;
  } else {
    // Some swept operators (products of the half-line builders) have real
    // nonnegative spectra without a unit upper bound; the caller says so.
    const bool ok = rep.maxImagAbs < imagTolerance &&
                    rep.minReal >= -edgeTolerance &&
                    (!requireUnitUpperBound ||
                     rep.maxReal <= 1.0 + edgeTolerance);
    rep.verdict = ok ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Total-positivity audits.

struct MinorViolation {
  std::vector<int> rows, cols;
  double value = 0.0;
};

struct TotalPositivityAudit {
  std::string matrixTag;
  int maxMinorSize = 0;
  int window = 0;  // minors drawn from indices 0..window-1
  bool exact = false;
  double minMinorValue = 0.0;
  long minorsChecked = 0;
  std::vector<MinorViolation> violations;
  bool pass() const { return violations.empty(); }
};

inline constexpr int kMaxAuditMinorSize = 5;
inline constexpr int kMaxAuditWindow = 32;

// Checks minors up to maxMinorSize for nonnegativity: exhaustively over all
// consecutive row/column windows, plus seeded random samples of
// non-consecutive index sets.  Exact scalars use true sign tests; float uses
// the -minorTolerance floor.  This is an audit (evidence), not a proof: only
// the consecutive family is exhaustive.
template <class S>
TotalPositivityAudit auditTotalPositivity(
    const Matrix<S>& m, const std::string& tag, int maxMinorSize,
    int windowCap, std::uint64_t seed = 42, int samplesPerSize = 200,
    double minorTolerance = tol::kMinorFloat) {
  if (maxMinorSize < 1 || maxMinorSize > kMaxAuditMinorSize)
    throw ResourceError("audit minor size must be in [1, " +
                        std::to_string(kMaxAuditMinorSize) + "]");
  if (windowCap < 1 || windowCap > kMaxAuditWindow)
    throw ResourceError("audit window must be in [1, " +
                        std::to_string(kMaxAuditWindow) + "]");
  TotalPositivityAudit audit;
  audit.matrixTag = tag;
  audit.maxMinorSize = maxMinorSize;
  audit.exact = isExactScalar<S>;
  const int window = std::min({windowCap, m.rows(), m.cols()});
  audit.window = window;
  bool haveMin = false;
  auto record = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    const S value = minorDet(m, rows, cols);
    const double asDouble = ScalarTraits<S>::toDouble(value);
    ++audit.minorsChecked;
    if (!haveMin || asDouble < audit.minMinorValue) {
      audit.minMinorValue = asDouble;
      haveMin = true;
    }
    bool violated;
    if constexpr (isExactScalar<S>)
      violated = value < ScalarTraits<S>::zero();
    else
      violated = asDouble < -minorTolerance;
    if (violated) audit.violations.push_back({rows, cols, asDouble});
  };

  for (int size = 1; size <= std::min(maxMinorSize, window); ++size) {
    // Exhaustive over consecutive windows.
    for (int r0 = 0; r0 + size <= window; ++r0)
      for (int c0 = 0; c0 + size <= window; ++c0) {
        std::vector<int> rows(static_cast<size_t>(size)),
            cols(static_cast<size_t>(size));
        for (int t = 0; t < size; ++t) {
          rows[static_cast<size_t>(t)] = r0 + t;
          cols[static_cast<size_t>(t)] = c0 + t;
        }
        record(rows, cols);
      }
    // Seeded samples of arbitrary index sets.
    if (size >= 2 && samplesPerSize > 0 && size <= window) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(size));
      std::vector<int> all(static_cast<size_t>(window));
      for (int t = 0; t < window; ++t) all[static_cast<size_t>(t)] = t;
      for (int s = 0; s < samplesPerSize; ++s) {
        std::vector<int> rows, cols;
        std::sample(all.begin(), all.end(), std::back_inserter(rows), size,
                    rng);
        std::sample(all.begin(), all.end(), std::back_inserter(cols), size,
                    rng);
        record(rows, cols);
      }
    }
  }
  return audit;
}

// ---------------------------------------------------------------------------
// Corner-minor identity harness (exact arithmetic only).
//
// For C of size (m+n) x (m+n), let D be the lower-right n x n corner of
// C(1+C)^{-1} and E = D(1-D)^{-1}.  Two identities are verified exactly:
//  (i)  det(1-D) = sum over X subset of the first m indices of
//       C(X/X) / det(1+C);
//  (ii) for equal-size X, Y inside the last n indices (sizes 0..2):
//       E(X/Y) / det(1+E) = sum over Z subset of the first m indices of
//       C(Z u (m+X) / Z u (m+Y)) / det(1+C).

struct Lemma6Report {
  int m = 0;
  int n = 0;
  bool identityCorner = false;   // (i)
  bool identityMinors = false;   // (ii) over all sizes <= 2
  long casesChecked = 0;
  Rat detOneMinusD{0};
  bool pass() const { return identityCorner && identityMinors; }
};

inline constexpr int kMaxCornerSplit = 12;  // 2^m subsets are enumerated

Lemma6Report lemma6Check(const Matrix<Rat>& c, int m);

// Random instances: entries are small rationals drawn from the seeded
// generator; draws that land on a singular 1+C or 1-D are regenerated.
std::vector<Lemma6Report> lemma6Trials(int m, int n, int trials,
                                       std::uint64_t seed);

}  // namespace tpk
