#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "tpk/kernel.hpp"
#include "tpk/spectral.hpp"

using tpk::Matrix;
using tpk::Rat;
using tpk::SymbolParams;
using tpk::Verdict;

namespace {

SymbolParams mixedPair() {
  SymbolParams p;
  p.alphaPlus = {Rat(3, 10)};
  p.betaPlus = {Rat(1, 5)};
  p.alphaMinus = {Rat(1, 4)};
  p.betaMinus = {Rat(3, 20)};
  return p;
}

SymbolParams exponentialPair() {
  SymbolParams p;
  p.gammaPlus = Rat(1, 2);
  p.gammaMinus = Rat(1, 2);
  return p;
}

Matrix<double> constDiag(int n, double v) {
  Matrix<double> m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = v;
  return m;
}

// Entries 1/(i+j+2): totally positive (Cauchy structure with positive,
// strictly increasing nodes).
Matrix<Rat> cauchyMatrix(int n) {
  Matrix<Rat> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rat(1, i + j + 2);
  return m;
}

}  // namespace

TEST_CASE("spectrum verdict") {
  SUBCASE("real spectrum inside the unit interval passes") {
    const auto rep = tpk::spectrumVerdict(constDiag(3, 0.5), "diag");
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.operatorTag == "diag");
    CHECK(rep.truncationOrder == 3);
    CHECK(rep.minReal == doctest::Approx(0.5));
    CHECK(rep.maxReal == doctest::Approx(0.5));
    CHECK(rep.maxImagAbs < 1e-12);
    CHECK(rep.nearOneCount == 0);
  }
  SUBCASE("an eigenvalue above 1 fails") {
    CHECK(tpk::spectrumVerdict(constDiag(2, 1.2), "hot").verdict ==
          Verdict::fail);
  }
  SUBCASE("a negative eigenvalue fails") {
    CHECK(tpk::spectrumVerdict(constDiag(2, -0.5), "cold").verdict ==
          Verdict::fail);
  }
  SUBCASE("a complex pair fails") {
    const auto m = Matrix<double>::fromRows({{0.0, 1.0}, {-1.0, 0.0}});
    const auto rep = tpk::spectrumVerdict(m, "rotation");
    CHECK(rep.verdict == Verdict::fail);
    CHECK(rep.maxImagAbs == doctest::Approx(1.0));
  }
  SUBCASE("eigenvalues hugging 1 are counted, not failed") {
    Matrix<double> m = constDiag(3, 0.5);
    m(0, 0) = 1.0 - 1e-7;
    const auto rep = tpk::spectrumVerdict(m, "edge");
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.nearOneCount == 1);
  }
  SUBCASE("empty operator") {
    const auto rep = tpk::spectrumVerdict(Matrix<double>(0, 0), "empty");
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.eigenvalues.empty());
  }
}

TEST_CASE("spectrum Hausdorff distance") {
  using C = std::complex<double>;
  const std::vector<C> a{C(0.5, 0.0)};
  CHECK(tpk::spectrumHausdorff(a, a) == 0.0);
  CHECK(tpk::spectrumHausdorff(a, {C(0.6, 0.0)}) == doctest::Approx(0.1));
  // Symmetric: the unmatched 0.1 on the left is 0.4 away from its nearest
  // partner on the right.
  CHECK(tpk::spectrumHausdorff({C(0.5, 0.0), C(0.1, 0.0)}, a) ==
        doctest::Approx(0.4));
  // Near-zero eigenvalues are dropped before matching.
  CHECK(tpk::spectrumHausdorff({C(0.5, 0.0), C(1e-14, 0.0)}, a) == 0.0);
  CHECK(tpk::spectrumHausdorff({}, {}) == 0.0);
  CHECK(tpk::spectrumHausdorff({}, {C(0.5, 0.0), C(0.2, 0.0)}) ==
        doctest::Approx(0.5));
}

TEST_CASE("truncation-convergence sweep") {
  SUBCASE("a stationary family converges and passes") {
    auto builder = [](int n) { return constDiag(n, 0.5); };
    const auto rep =
        tpk::sweepConvergence(builder, {4, 8, 16}, "const");
    CHECK(rep.verdict == Verdict::pass);
    REQUIRE(rep.convergenceTrace.size() == 2);
    CHECK(rep.convergenceTrace.back().second == 0.0);
    REQUIRE(rep.determinantTrace.size() == 3);
    CHECK(rep.determinantTrace[0] == doctest::Approx(std::pow(1.5, 4)));
    CHECK(rep.truncationOrder == 16);
  }
  SUBCASE("a family that keeps moving is inconclusive") {
    auto builder = [](int n) { return constDiag(n, n == 16 ? 0.3 : 0.5); };
    const auto rep = tpk::sweepConvergence(builder, {4, 8, 16}, "drift");
    CHECK(rep.verdict == Verdict::inconclusive);
  }
  SUBCASE("the unit upper bound is optional") {
    auto builder = [](int n) { return constDiag(n, 2.0); };
    CHECK(tpk::sweepConvergence(builder, {4, 8}, "big").verdict ==
          Verdict::fail);
    CHECK(tpk::sweepConvergence(builder, {4, 8}, "big", tpk::tol::kConvergence,
                                tpk::tol::kImag, tpk::tol::kEdge, false)
              .verdict == Verdict::pass);
  }
  SUBCASE("single-order schedules skip the convergence requirement") {
    auto builder = [](int n) { return constDiag(n, 0.5); };
    CHECK(tpk::sweepConvergence(builder, {8}, "one").verdict ==
          Verdict::pass);
  }
  SUBCASE("schedule validation") {
    auto builder = [](int n) { return constDiag(n, 0.5); };
    CHECK_THROWS_AS(tpk::sweepConvergence(builder, {}, "x"),
                    tpk::DimensionError);
    CHECK_THROWS_AS(tpk::sweepConvergence(builder, {8, 8}, "x"),
                    tpk::DomainError);
    auto crooked = [](int n) { return Matrix<double>(n, n + 1); };
    CHECK_THROWS_AS(tpk::sweepConvergence(crooked, {4, 8}, "x"),
                    tpk::DimensionError);
  }
}

TEST_CASE("total-positivity audit") {
  SUBCASE("a totally positive matrix passes exactly") {
    const auto audit =
        tpk::auditTotalPositivity(cauchyMatrix(8), "cauchy", 4, 8);
    CHECK(audit.pass());
    CHECK(audit.exact);
    CHECK(audit.minMinorValue > 0.0);
    CHECK(audit.minorsChecked > 100);
    CHECK(audit.window == 8);
  }
  SUBCASE("a planted sign violation is caught and located") {
    auto m = cauchyMatrix(6);
    m.swapRows(0, 1);
    const auto audit = tpk::auditTotalPositivity(m, "swapped", 3, 6);
    CHECK_FALSE(audit.pass());
    REQUIRE_FALSE(audit.violations.empty());
    CHECK(audit.minMinorValue < 0.0);
    const auto& v = audit.violations.front();
    CHECK(v.value < 0.0);
    CHECK(v.rows.size() == v.cols.size());
  }
  SUBCASE("float mode forgives roundoff-scale negatives, exact does not") {
    // Rank one, so every 2x2 minor is zero; a -1e-15 nudge at one entry
    // drives some of them barely negative.
    Matrix<double> f(6, 6);
    Matrix<Rat> r(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        r(i, j) = Rat(1, (i + 1) * (j + 2));
        f(i, j) = 1.0 / ((i + 1) * (j + 2));
      }
    r(0, 0) -= Rat(1, 1000000000000000);
    f(0, 0) -= 1e-15;
    CHECK(tpk::auditTotalPositivity(f, "nudged-float", 3, 6).pass());
    CHECK_FALSE(tpk::auditTotalPositivity(r, "nudged-exact", 3, 6).pass());
  }
  SUBCASE("library operators are totally positive") {
    const auto a = tpk::buildA<Rat>(mixedPair(), 12);
    CHECK(tpk::auditTotalPositivity(a.matrix, "A", 3, 8).pass());
    const auto h = tpk::hCoefficients<Rat>(mixedPair(), tpk::Side::plus, 12);
    Matrix<Rat> toeplitz(10, 10);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        toeplitz(i, j) = i >= j ? h[i - j] : Rat(0);
    CHECK(tpk::auditTotalPositivity(toeplitz, "toeplitz", 3, 10).pass());
  }
  SUBCASE("resource caps") {
    const auto m = cauchyMatrix(4);
    CHECK_THROWS_AS(tpk::auditTotalPositivity(m, "x", 0, 4),
                    tpk::ResourceError);
    CHECK_THROWS_AS(tpk::auditTotalPositivity(m, "x", 6, 4),
                    tpk::ResourceError);
    CHECK_THROWS_AS(tpk::auditTotalPositivity(m, "x", 2, 0),
                    tpk::ResourceError);
    CHECK_THROWS_AS(tpk::auditTotalPositivity(m, "x", 2, 33),
                    tpk::ResourceError);
  }
}

TEST_CASE("corner-minor identities on random instances") {
  for (const auto& rep : tpk::lemma6Trials(3, 3, 5, 42)) {
    CHECK(rep.pass());
    CHECK(rep.m == 3);
    CHECK(rep.n == 3);
    CHECK(rep.casesChecked > 0);
    CHECK(rep.detOneMinusD != 0);
  }
  for (const auto& rep : tpk::lemma6Trials(2, 2, 10, 7)) CHECK(rep.pass());
  CHECK_THROWS_AS(tpk::lemma6Trials(0, 0, 1, 1), tpk::DomainError);
  CHECK_THROWS_AS(tpk::lemma6Trials(2, 2, -1, 1), tpk::DomainError);
}

TEST_CASE("corner-minor identities on the structured operator") {
  // C is the leading corner of the exact A^t B truncation; its lower-right
  // resolvent corner D should be a small totally positive perturbation with
  // det(1-D) > 0.
  const auto a = tpk::buildA<Rat>(mixedPair(), 16);
  const auto b = tpk::buildB<Rat>(mixedPair(), 16);
  const Matrix<Rat> atb = a.matrix.transpose() * b.matrix;
  const Matrix<Rat> c = atb.block(0, 0, 6, 6);
  const auto rep = tpk::lemma6Check(c, 3);
  CHECK(rep.pass());
  CHECK(rep.detOneMinusD > 0);

  const auto id = Matrix<Rat>::identity(6);
  const Matrix<Rat> k = c * tpk::inverse(id + c);
  const Matrix<Rat> d = k.block(3, 3, 3, 3);
  CHECK(tpk::auditTotalPositivity(d, "resolvent-corner", 3, 3).pass());
}

TEST_CASE("corner-minor identity input validation") {
  CHECK_THROWS_AS(tpk::lemma6Check(Matrix<Rat>(2, 3), 1),
                  tpk::DimensionError);
  const auto c = cauchyMatrix(4);
  CHECK_THROWS_AS(tpk::lemma6Check(c, -1), tpk::IndexError);
  CHECK_THROWS_AS(tpk::lemma6Check(c, 5), tpk::IndexError);
  Matrix<Rat> wide(14, 14);
  CHECK_THROWS_AS(tpk::lemma6Check(wide, 13), tpk::ResourceError);
}

TEST_CASE("graded product operators keep real nonnegative spectra") {
  // Entries of A^t B decay geometrically in both indices, stressing the
  // eigensolver's deflation logic; this must complete and stay on the real
  // axis for both the rational-symbol and exponential-symbol families.
  for (const auto& params : {mixedPair(), exponentialPair()}) {
    const auto a = tpk::buildA<double>(params, 64);
    const auto b = tpk::buildB<double>(params, 64);
    const auto eig = tpk::sortedEigenvalues(a.matrix.transpose() * b.matrix);
    REQUIRE(eig.size() == 64);
    for (const auto& ev : eig) {
      CHECK(std::fabs(ev.imag()) < 1e-8);
      CHECK(ev.real() > -1e-8);
      CHECK(ev.real() < 1.0);
    }
  }
}
