#include "tpk/spectral.hpp"

namespace tpk {

namespace {

// All subsets of {0..m-1} as sorted index lists, by bitmask.
std::vector<std::vector<int>> allSubsets(int m) {
  std::vector<std::vector<int>> out;
  out.reserve(static_cast<size_t>(1) << m);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

// Sorted index subsets of {0..n-1} of a given size.
void subsetsOfSize(int n, int size, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  const std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<int> joinShifted(const std::vector<int>& z,
                             const std::vector<int>& x, int shift) {
  std::vector<int> out = z;
  for (int v : x) out.push_back(v + shift);
  return out;  // z < shift <= shifted x keeps the list strictly increasing
}

}  // namespace

Lemma6Report lemma6Check(const Matrix<Rat>& c, int m) {
  if (!c.square()) throw DimensionError("corner identity needs a square C");
  if (m < 0 || m > c.rows())
    throw IndexError("split must lie within the matrix");
  if (m > kMaxCornerSplit)
    throw ResourceError("split enumerates 2^m subsets; cap is " +
                        std::to_string(kMaxCornerSplit));
  Lemma6Report rep;
  rep.m = m;
  rep.n = c.rows() - m;
  const int n = rep.n;

  const Matrix<Rat> onePlusC = Matrix<Rat>::identity(c.rows()) + c;
  const Rat detOnePlusC = determinant(onePlusC);
  if (detOnePlusC == 0) throw SingularMatrixError("1+C is singular");
  const Matrix<Rat> k = c * inverse(onePlusC);
  const Matrix<Rat> d = k.block(m, m, n, n);
  const Matrix<Rat> oneMinusD = Matrix<Rat>::identity(n) - d;
  rep.detOneMinusD = determinant(oneMinusD);
  if (rep.detOneMinusD == 0) throw SingularMatrixError("1-D is singular");

  const auto zSubsets = allSubsets(m);

  // Identity (i): det(1-D) = sum_X C(X/X) / det(1+C).
  Rat cornerSum(0);
  for (const auto& x : zSubsets) cornerSum += minorDet(c, x, x);
  rep.identityCorner = (cornerSum / detOnePlusC == rep.detOneMinusD);

  // Identity (ii) over equal-size X, Y in the last n indices, sizes 0..2.
  const Matrix<Rat> e = d * inverse(oneMinusD);
  const Rat detOnePlusE = determinant(Matrix<Rat>::identity(n) + e);
  if (detOnePlusE == 0) throw SingularMatrixError("1+E is singular");
  rep.identityMinors = true;
  for (int size = 0; size <= std::min(2, n); ++size) {
    std::vector<std::vector<int>> xs;
    subsetsOfSize(n, size, xs);
    for (const auto& x : xs)
      for (const auto& y : xs) {
        Rat rhs(0);
        for (const auto& z : zSubsets)
          rhs += minorDet(c, joinShifted(z, x, m), joinShifted(z, y, m));
        const Rat lhs = minorDet(e, x, y) / detOnePlusE;
        ++rep.casesChecked;
        if (lhs != rhs / detOnePlusC) rep.identityMinors = false;
      }
  }
  return rep;
}

std::vector<Lemma6Report> lemma6Trials(int m, int n, int trials,
                                       std::uint64_t seed) {
  if (m < 0 || n < 0 || m + n <= 0)
    throw DomainError("trial split needs m + n >= 1");
  if (trials < 0) throw DomainError("trial count must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Lemma6Report> out;
  out.reserve(static_cast<size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 100)
        throw ConvergenceError(
            "could not draw a nonsingular trial matrix in 100 attempts",
            attempt);
      Matrix<Rat> c(m + n, m + n);
      for (int i = 0; i < m + n; ++i)
        for (int j = 0; j < m + n; ++j) {
          Rat v(num(rng), den(rng));
          v.canonicalize();
          c(i, j) = v;
        }
      try {
        out.push_back(lemma6Check(c, m));
        break;
      } catch (const SingularMatrixError&) {
        continue;  // singular 1+C or 1-D: redraw
      }
    }
  }
  return out;
}

}  // namespace tpk
