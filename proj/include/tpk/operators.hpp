#pragma once

// Truncated operator builders.
//
// The central object is the half-line operator A (and its mirror B for the
// minus side), defined through the two-variable generating function
//
//   sum_{p,q >= 0} A_{pq} u^p v^q = (H(u)/H(-v) - 1) / (u + v),
//
// where H is the plus symbol (B uses the minus symbol).  Entries are hook
// evaluations of the underlying totally positive sequence, so two
// independent assembly routes exist and must agree:
//   * generatingRecurrence: march the anti-diagonal recurrence implied by
//     multiplying both sides by (u + v);
//   * hookSchur: the closed hook formula A_{pq} = sum_{j=0}^{q} (-1)^j
//     h_{p+1+j} e_{q-j}.
//
// buildT assembles the one-sided ratio form T_{pq} = sum_{k>=1} R_{p+k}
// psi_{-q-k} on indices p,q >= tailStart, summed adaptively from a ratio
// window (the seriesSum route).

#include <string>

#include "tpk/matrix.hpp"
#include "tpk/series.hpp"

namespace tpk {

enum class BuildRoute { generatingRecurrence, hookSchur, seriesSum };

inline const char* routeName(BuildRoute r) {
  switch (r) {
    case BuildRoute::generatingRecurrence:
      return "generatingRecurrence";
    case BuildRoute::hookSchur:
      return "hookSchur";
    case BuildRoute::seriesSum:
      return "seriesSum";
  }
  return "unknown";
}

template <class S>
struct OperatorTruncation {
  Matrix<S> matrix;
  int order = 0;      // requested truncation order N
  int tailStart = 0;  // first retained index (nonzero for tail-projected T)
  BuildRoute route = BuildRoute::generatingRecurrence;
  // Max |entry| over the last two anti-diagonals of the stored matrix: a
  // cheap proxy for how much the truncation still holds at the far corner.
  double tailBound = 0.0;
};

namespace detail {

template <class S>
double lastAntiDiagonalsMax(const Matrix<S>& m) {
  const int n = m.rows();
  if (n == 0) return 0.0;
  double best = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (i + j >= n + m.cols() - 4)
        best = std::max(
            best, ScalarTraits<S>::toDouble(ScalarTraits<S>::abs(m(i, j))));
  return best;
}

// Anti-diagonal march.  Multiplying the generating identity by (u+v) gives
// A_{p-1,q} + A_{p,q-1} = h_p e_q - [p=0][q=0], so along the diagonal
// p + q = s each entry follows from its neighbor:
//   A_{s,0} = h_{s+1} e_0,   A_{p,q} = h_{p+1} e_q - A_{p+1,q-1}.
// Entries beyond the stored block are carried as scratch so the recurrence
// never reads outside its own diagonal.
template <class S>
Matrix<S> assembleRecurrence(const TruncatedSeries<S>& h,
                             const TruncatedSeries<S>& e, int n) {
  Matrix<S> out(n, n);
  if (n == 0) return out;
  if (h.order() < 2 * n - 1 || e.order() < 2 * n - 1)
    throw TruncationError("coefficient series too short for recurrence");
  for (int s = 0; s <= 2 * n - 2; ++s) {
    S prev = ScalarTraits<S>::zero();
    for (int q = 0; q <= s; ++q) {
      const int p = s - q;
      S val = h[p + 1] * e[q];
      if (q > 0) val -= prev;
      prev = val;
      if (p < n && q < n) out(p, q) = val;
    }
  }
  return out;
}

template <class S>
Matrix<S> assembleHook(const TruncatedSeries<S>& h, const TruncatedSeries<S>& e,
                       int n) {
  Matrix<S> out(n, n);
  if (n == 0) return out;
  if (h.order() < 2 * n - 1 || e.order() < 2 * n - 1)
    throw TruncationError("coefficient series too short for hook formula");
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      S acc = ScalarTraits<S>::zero();
      for (int j = 0; j <= q; ++j) {
        const S term = h[p + 1 + j] * e[q - j];
        acc += (j % 2 == 0) ? term : S(-term);
      }
      out(p, q) = acc;
    }
  return out;
}

template <class S>
OperatorTruncation<S> buildHalfLine(const SymbolParams& params, Side side,
                                    int n, BuildRoute route) {
  if (n < 0) throw DimensionError("operator truncation order must be >= 0");
  const int seriesOrder = std::max(1, 2 * n - 1);
  const auto h = hCoefficients<S>(params, side, seriesOrder);
  const auto e = eCoefficients<S>(params, side, seriesOrder);
  OperatorTruncation<S> op;
  op.order = n;
  op.route = route;
  switch (route) {
    case BuildRoute::generatingRecurrence:
      op.matrix = assembleRecurrence(h, e, n);
      break;
    case BuildRoute::hookSchur:
      op.matrix = assembleHook(h, e, n);
      break;
    default:
      throw DomainError("half-line operators support the recurrence and hook "
                        "routes only");
  }
  op.tailBound = lastAntiDiagonalsMax(op.matrix);
  return op;
}

}  // namespace detail

// A from the plus symbol.
template <class S>
OperatorTruncation<S> buildA(const SymbolParams& params, int n,
                             BuildRoute route = BuildRoute::hookSchur) {
  return detail::buildHalfLine<S>(params, Side::plus, n, route);
}

// B from the minus symbol (same generating function on swapped data).
template <class S>
OperatorTruncation<S> buildB(const SymbolParams& params, int n,
                             BuildRoute route = BuildRoute::hookSchur) {
  return detail::buildHalfLine<S>(params, Side::minus, n, route);
}

// The doubled operator pairing the two half-line blocks:
//   L = [ 0    A^t ]
//       [ -B   0   ]
template <class S>
Matrix<S> buildL(const OperatorTruncation<S>& a,
                 const OperatorTruncation<S>& b) {
  if (a.order != b.order)
    throw DimensionError("A and B truncations must share an order");
  const int n = a.order;
  Matrix<S> l(2 * n, 2 * n);
  l.setBlock(0, n, a.matrix.transpose());
  const S minusOne = -ScalarTraits<S>::one();
  l.setBlock(n, 0, minusOne * b.matrix);
  return l;
}

// Keep rows/columns >= start of a square truncation (corner projection).
template <class S>
Matrix<S> projectTail(const Matrix<S>& m, int start) {
  if (!m.square()) throw DimensionError("tail projection needs a square input");
  if (start < 0 || start > m.rows())
    throw IndexError("tail start outside matrix");
  return m.block(start, start, m.rows() - start, m.rows() - start);
}

// How far past the requested window the ratio expansion is carried so that
// adaptive k-sums always settle before hitting the window edge.
inline constexpr int kTailReach = 160;

// The ratio-form tail operator on indices tailStart..n-1:
//   T_{pq} = sum_{k>=1} R_{p+k} psi_{-q-k}.
// Entries are summed adaptively (terms below tailTolerance three times in a
// row end the sum).  Float mode is the intended instantiation; exact scalars
// are accepted but inherit the window truncation documented in series.hpp.
template <class S>
OperatorTruncation<S> buildT(const SymbolParams& params, int tailStart, int n,
                             double tailTolerance = tol::kTail) {
  if (n < 0) throw DimensionError("operator truncation order must be >= 0");
  if (tailStart < 0 || tailStart > n)
    throw IndexError("tail start must lie in [0, n]");
  const int side = n - tailStart;
  OperatorTruncation<S> op;
  op.order = n;
  op.tailStart = tailStart;
  op.route = BuildRoute::seriesSum;
  op.matrix = Matrix<S>(side, side);
  if (side == 0) return op;
  const int reach = n - 1 + kTailReach;
  const auto w = ratioWindow<S>(params, -reach, reach, tailTolerance);
  for (int p = tailStart; p < n; ++p)
    for (int q = tailStart; q < n; ++q)
      op.matrix(p - tailStart, q - tailStart) =
          upperTailSum(w, p, q, tailTolerance);
  op.tailBound = detail::lastAntiDiagonalsMax(op.matrix);
  return op;
}

}  // namespace tpk
