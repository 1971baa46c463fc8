#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tpk/series.hpp"

#include "oracles.hpp"

using tpk::Rat;
using tpk::Side;
using tpk::SymbolParams;
using tpk::TruncatedSeries;

namespace {

Rat ratPow(const Rat& base, int k) {
  Rat v(1);
  for (int i = 0; i < k; ++i) v *= base;
  return v;
}

SymbolParams widomOnePair() {
  SymbolParams p;
  p.betaPlus = {Rat(2, 5)};
  p.alphaMinus = {Rat(2, 5)};
  return p;
}

SymbolParams mixedPair() {
  SymbolParams p;
  p.alphaPlus = {Rat(3, 10)};
  p.betaPlus = {Rat(1, 5)};
  p.alphaMinus = {Rat(1, 4)};
  p.betaMinus = {Rat(3, 20)};
  return p;
}

SymbolParams geometricPair() {
  SymbolParams p;
  p.alphaPlus = {Rat(1, 2)};
  p.alphaMinus = {Rat(1, 2)};
  return p;
}

}  // namespace

TEST_CASE("symbol parameter validation") {
  SymbolParams ok = mixedPair();
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.rho() == Rat(3, 10));
  CHECK(ok.exactCompatible());

  SymbolParams unit;
  unit.alphaPlus = {Rat(1)};
  CHECK_THROWS_AS(unit.validate(), tpk::DomainError);

  SymbolParams negative;
  negative.betaMinus = {Rat(-1, 10)};
  CHECK_THROWS_AS(negative.validate(), tpk::DomainError);

  SymbolParams badGamma;
  badGamma.gammaPlus = Rat(-1);
  CHECK_THROWS_AS(badGamma.validate(), tpk::DomainError);

  SymbolParams expo;
  expo.gammaPlus = Rat(1, 2);
  CHECK_NOTHROW(expo.validate());
  CHECK_FALSE(expo.exactCompatible());

  SUBCASE("admissible radius") {
    SymbolParams empty;
    CHECK(empty.admissibleRadius() == 2.0);
    CHECK(geometricPair().admissibleRadius() ==
          doctest::Approx(std::sqrt(2.0)));
  }
  SUBCASE("swapped exchanges the sides") {
    const SymbolParams s = mixedPair().swapped();
    CHECK(s.alphaPlus == mixedPair().alphaMinus);
    CHECK(s.betaMinus == mixedPair().betaPlus);
    const SymbolParams r = s.swapped();
    CHECK(r.alphaPlus == mixedPair().alphaPlus);
    CHECK(r.betaMinus == mixedPair().betaMinus);
  }
}

TEST_CASE("truncated series arithmetic") {
  CHECK_THROWS_AS(TruncatedSeries<Rat>(-1), tpk::DimensionError);

  SUBCASE("product") {
    TruncatedSeries<Rat> a(4), b(4);
    a[0] = 1;
    a[1] = 1;  // 1 + z
    b[0] = 1;
    b[1] = -1;  // 1 - z
    const auto p = tpk::seriesMul(a, b);
    CHECK(p[0] == Rat(1));
    CHECK(p[1] == Rat(0));
    CHECK(p[2] == Rat(-1));
    CHECK(p[3] == Rat(0));
    CHECK_THROWS_AS(tpk::seriesMul(a, TruncatedSeries<Rat>(3)),
                    tpk::DimensionError);
    CHECK_THROWS_AS(a[5], tpk::IndexError);
    CHECK_THROWS_AS(a[-1], tpk::IndexError);
  }
  SUBCASE("reciprocal round-trip") {
    TruncatedSeries<Rat> a(12);
    a[0] = Rat(2);
    for (int k = 1; k <= 12; ++k) a[k] = Rat(k % 5 - 2, k + 2);
    const auto inv = tpk::seriesReciprocal(a);
    const auto prod = tpk::seriesMul(a, inv);
    CHECK(prod[0] == Rat(1));
    for (int k = 1; k <= 12; ++k) CHECK(prod[k] == Rat(0));
    CHECK_THROWS_AS(tpk::seriesReciprocal(TruncatedSeries<Rat>(3)),
                    tpk::DomainError);
  }
  SUBCASE("log and exp round-trip") {
    TruncatedSeries<Rat> a(10);
    a[0] = 1;
    for (int k = 1; k <= 10; ++k) a[k] = Rat(2 * (k % 3) - 1, k * k + 1);
    const auto back = tpk::seriesExp(tpk::seriesLog(a));
    for (int k = 0; k <= 10; ++k) CHECK(back[k] == a[k]);

    TruncatedSeries<Rat> notOne(2);
    notOne[0] = 2;
    CHECK_THROWS_AS(tpk::seriesLog(notOne), tpk::DomainError);
    CHECK_THROWS_AS(tpk::seriesExp(notOne), tpk::DomainError);
  }
  SUBCASE("log of the geometric series") {
    TruncatedSeries<Rat> g(9);
    for (int k = 0; k <= 9; ++k) g[k] = 1;  // 1/(1-z)
    const auto lg = tpk::seriesLog(g);
    CHECK(lg[0] == Rat(0));
    for (int k = 1; k <= 9; ++k) CHECK(lg[k] == Rat(1, k));
  }
}

TEST_CASE("power sums") {
  const std::vector<Rat> alphas{Rat(1, 2)};
  const std::vector<Rat> betas{Rat(1, 3)};
  const auto p = tpk::powerSums(alphas, betas, Rat(1, 4), 3);
  CHECK(p[1] == Rat(13, 12));
  CHECK(p[2] == Rat(5, 36));
  CHECK(p[3] == Rat(35, 216));

  const auto q = tpk::powerSums<Rat>({}, {}, Rat(1, 4), 3);
  CHECK(q[1] == Rat(1, 4));
  CHECK(q[2] == Rat(0));
  CHECK(q[3] == Rat(0));
}

TEST_CASE("h-coefficients: single-factor closed forms") {
  SUBCASE("single alpha gives a geometric sequence") {
    const auto h = tpk::hCoefficients<Rat>(geometricPair(), Side::plus, 10);
    for (int k = 0; k <= 10; ++k) CHECK(h[k] == ratPow(Rat(1, 2), k));
  }
  SUBCASE("single beta gives a linear polynomial") {
    const auto h = tpk::hCoefficients<Rat>(widomOnePair(), Side::plus, 8);
    CHECK(h[0] == Rat(1));
    CHECK(h[1] == Rat(2, 5));
    for (int k = 2; k <= 8; ++k) CHECK(h[k] == Rat(0));
    const auto hm = tpk::hCoefficients<Rat>(widomOnePair(), Side::minus, 8);
    for (int k = 0; k <= 8; ++k) CHECK(hm[k] == ratPow(Rat(2, 5), k));
  }
  SUBCASE("duals swap the roles") {
    const auto e = tpk::eCoefficients<Rat>(geometricPair(), Side::plus, 8);
    CHECK(e[0] == Rat(1));
    CHECK(e[1] == Rat(1, 2));
    for (int k = 2; k <= 8; ++k) CHECK(e[k] == Rat(0));
  }
  SUBCASE("exponential factor, float only") {
    SymbolParams expo;
    expo.gammaPlus = Rat(1, 2);
    expo.gammaMinus = Rat(1, 2);
    const auto h = tpk::hCoefficients<double>(expo, Side::plus, 6);
    double factorial = 1.0;
    for (int k = 0; k <= 6; ++k) {
      if (k > 0) factorial *= k;
      CHECK(h[k] == doctest::Approx(std::pow(0.5, k) / factorial));
    }
    CHECK_THROWS_AS(tpk::hCoefficients<Rat>(expo, Side::plus, 6),
                    tpk::DomainError);
  }
  SUBCASE("invalid parameters are rejected") {
    SymbolParams bad;
    bad.alphaPlus = {Rat(3, 2)};
    CHECK_THROWS_AS(tpk::hCoefficients<Rat>(bad, Side::plus, 4),
                    tpk::DomainError);
  }
}

TEST_CASE("h-coefficient routes agree exactly") {
  SymbolParams p = mixedPair();
  p.alphaPlus.push_back(Rat(1, 7));
  p.betaMinus.push_back(Rat(2, 9));
  for (const Side side : {Side::plus, Side::minus}) {
    const auto prod = tpk::hCoefficients<Rat>(p, side, 30);
    const auto newton =
        tpk::hCoefficients<Rat>(p, side, 30, tpk::HRoute::newtonIdentities);
    for (int k = 0; k <= 30; ++k) CHECK(prod[k] == newton[k]);
    const auto eProd = tpk::eCoefficients<Rat>(p, side, 30);
    const auto eNewton =
        tpk::eCoefficients<Rat>(p, side, 30, tpk::HRoute::newtonIdentities);
    for (int k = 0; k <= 30; ++k) CHECK(eProd[k] == eNewton[k]);
  }
}

TEST_CASE("h and e convolve to a delta") {
  // sum_k (-1)^k h_k e_{n-k} extracts [z^n] of H(-z) * (1/H(-z)).
  const SymbolParams p = mixedPair();
  for (const Side side : {Side::plus, Side::minus}) {
    const auto h = tpk::hCoefficients<Rat>(p, side, 30);
    const auto e = tpk::eCoefficients<Rat>(p, side, 30);
    for (int n = 0; n <= 30; ++n) {
      Rat acc(0);
      for (int k = 0; k <= n; ++k) {
        const Rat term = h[k] * e[n - k];
        acc += (k % 2 == 0) ? term : Rat(-term);
      }
      CHECK(acc == (n == 0 ? Rat(1) : Rat(0)));
    }
  }
}

TEST_CASE("ratio window: trivial symbol is a delta") {
  const auto w = tpk::ratioWindow<Rat>(SymbolParams{}, -8, 8);
  for (int k = -8; k <= 8; ++k) {
    CHECK(w.ratioAt(k) == (k == 0 ? Rat(1) : Rat(0)));
    CHECK(w.dualAt(k) == (k == 0 ? Rat(1) : Rat(0)));
  }
  CHECK_THROWS_AS(w.ratioAt(9), tpk::TruncationError);
  CHECK_THROWS_AS(w.dualAt(-9), tpk::TruncationError);
}

TEST_CASE("ratio window: rational closed forms") {
  // For one beta factor s above and one alpha factor r below, the ratio
  // R = 1 / ((1 - r/z)(1 + s z)) has Laurent coefficients
  //   R_k = (-s)^k / (1 + r s)   for k >= 0,
  //   R_k = r^{-k} / (1 + r s)   for k < 0,
  // and the dual is the Laurent polynomial (1 + s z)(1 - r/z).
  const Rat r(2, 5), s(2, 5);
  const Rat norm = Rat(1) + r * s;  // 29/25
  CHECK(norm == Rat(29, 25));

  SUBCASE("exact window") {
    const auto w = tpk::ratioWindow<Rat>(widomOnePair(), -6, 6);
    for (int k = -6; k <= 6; ++k) {
      const Rat closed = k >= 0 ? Rat(ratPow(Rat(-2, 5), k) / norm)
                                : Rat(ratPow(r, -k) / norm);
      // The window is assembled from truncated expansions, so the values
      // carry a truncation error of order (r s)^{internalOrder}.
      const Rat diff = w.ratioAt(k) - closed;
      CHECK(std::fabs(diff.get_d()) < 1e-25);
    }
    // The dual expansion terminates, so it comes out exactly.
    CHECK(w.dualAt(0) == Rat(21, 25));
    CHECK(w.dualAt(1) == Rat(2, 5));
    CHECK(w.dualAt(-1) == Rat(-2, 5));
    for (int k = -6; k <= 6; ++k)
      if (k < -1 || k > 1) CHECK(w.dualAt(k) == Rat(0));
  }
  SUBCASE("float window") {
    const auto w = tpk::ratioWindow<double>(widomOnePair(), -6, 6);
    const double n = norm.get_d();
    for (int k = 0; k <= 6; ++k)
      CHECK(w.ratioAt(k) == doctest::Approx(std::pow(-0.4, k) / n));
    for (int k = -6; k < 0; ++k)
      CHECK(w.ratioAt(k) == doctest::Approx(std::pow(0.4, -k) / n));
  }
}

TEST_CASE("ratio window matches the contour-integral oracle") {
  SUBCASE("rational parameters") {
    const SymbolParams p = mixedPair();
    const auto w = tpk::ratioWindow<double>(p, -6, 6);
    for (int k = -6; k <= 6; ++k) {
      CHECK(std::fabs(w.ratioAt(k) - oracle::ratioCoefficient(p, k)) < 1e-9);
      CHECK(std::fabs(w.dualAt(k) - oracle::dualRatioCoefficient(p, k)) <
            1e-9);
    }
  }
  SUBCASE("exponential parameters") {
    SymbolParams p;
    p.gammaPlus = Rat(1, 2);
    p.gammaMinus = Rat(1, 2);
    const auto w = tpk::ratioWindow<double>(p, -6, 6);
    for (int k = -6; k <= 6; ++k) {
      CHECK(std::fabs(w.ratioAt(k) - oracle::ratioCoefficient(p, k)) < 1e-9);
      CHECK(std::fabs(w.dualAt(k) - oracle::dualRatioCoefficient(p, k)) <
            1e-9);
    }
  }
}

TEST_CASE("ratio and dual convolve to a delta") {
  // sum_k R_{a-k} psi_{k-b} = [a == b], the coefficient statement of
  // R * (1/R) = 1.
  const auto w = tpk::ratioWindow<double>(mixedPair(), -40, 40);
  for (int a = -3; a <= 3; ++a) {
    for (int b = -3; b <= 3; ++b) {
      double acc = 0.0;
      for (int k = -34; k <= 34; ++k)
        acc += w.ratioAt(a - k) * w.dualAt(k - b);
      CHECK(std::fabs(acc - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("ratio window input validation") {
  CHECK_THROWS_AS(tpk::ratioWindow<double>(SymbolParams{}, 3, 2),
                  tpk::DimensionError);
  SymbolParams bad;
  bad.alphaMinus = {Rat(1)};
  CHECK_THROWS_AS(tpk::ratioWindow<double>(bad, -2, 2), tpk::DomainError);
  // A window this wide needs an internal order past the hard cap.
  CHECK_THROWS_AS(tpk::ratioWindow<double>(geometricPair(), -20000, 20000),
                  tpk::ConvergenceError);
}

TEST_CASE("tail sums agree with a plain window sum") {
  const auto w = tpk::ratioWindow<double>(mixedPair(), -700, 700);
  auto plainUpper = [&](int i, int j) {
    double acc = 0.0;
    for (int k = 1; k <= 600; ++k) acc += w.ratioAt(i + k) * w.dualAt(-j - k);
    return acc;
  };
  auto plainLower = [&](int i, int j) {
    double acc = 0.0;
    for (int k = 1; k <= 600; ++k) acc += w.ratioAt(-i - k) * w.dualAt(j + k);
    return acc;
  };
  auto plainCross = [&](int p, int q) {
    double acc = 0.0;
    for (int k = 0; k <= 600; ++k) acc += w.ratioAt(p - k) * w.dualAt(q + 1 + k);
    return acc;
  };
  const int pairs[][2] = {{0, 0}, {3, 1}, {-8, -8}, {-1, 5}, {5, -2}};
  for (const auto& ij : pairs) {
    CHECK(std::fabs(tpk::upperTailSum(w, ij[0], ij[1]) -
                    plainUpper(ij[0], ij[1])) < 1e-11);
    CHECK(std::fabs(tpk::lowerTailSum(w, ij[0], ij[1]) -
                    plainLower(ij[0], ij[1])) < 1e-11);
    CHECK(std::fabs(tpk::crossSum(w, ij[0], ij[1]) -
                    plainCross(ij[0], ij[1])) < 1e-11);
  }
}

TEST_CASE("tail sums survive a late-surging summand") {
  // With both indices deep on the negative side the first several terms sit
  // far below any tolerance, then surge as the factor indices cross zero.
  // A naive quiet-run exit returns 0 here.
  const auto w = tpk::ratioWindow<double>(geometricPair(), -200, 200);
  const double v = tpk::lowerTailSum(w, -8, -8);
  CHECK(v > 0.5);
  double plain = 0.0;
  for (int k = 1; k <= 150; ++k) plain += w.ratioAt(8 - k) * w.dualAt(k - 8);
  CHECK(v == doctest::Approx(plain).epsilon(1e-10));
}

TEST_CASE("tail sums flag a window that is too narrow") {
  // The mixed pair keeps every term nonzero, so an absurd tolerance can
  // never settle and the sum must run off the window edge.  (The geometric
  // pair would not do: its upper sum is exactly finite and settles anyway.)
  const auto w = tpk::ratioWindow<double>(mixedPair(), -4, 4);
  CHECK_THROWS_AS(tpk::upperTailSum(w, 0, 0, 1e-30), tpk::TruncationError);
  CHECK_THROWS_AS(tpk::lowerTailSum(w, 0, 0, 1e-30), tpk::TruncationError);
  CHECK_THROWS_AS(tpk::crossSum(w, 0, 0, 1e-30), tpk::TruncationError);
}
