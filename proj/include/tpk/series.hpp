#pragma once

// Symbol parameters and truncated power-series arithmetic.
//
// A symbol pair is determined by parameter lists (alpha, beta, gamma) for
// each side.  The plus side generates H(z) = e^{gamma z} prod(1 + beta_i z)
// / prod(1 - alpha_i z) = sum h_n z^n, whose coefficients h_n form a totally
// positive sequence; the minus side is the same data in 1/z.  Everything
// downstream (operator entries, kernels, measures) is built from the h_n,
// their duals e_n, and the two-sided Laurent coefficients of the ratio of
// the two symbols.

#include <cstdint>
#include <string>
#include <vector>

#include "tpk/errors.hpp"
#include "tpk/matrix.hpp"
#include "tpk/scalar.hpp"
#include "tpk/tolerances.hpp"

namespace tpk {

enum class Side { plus, minus };

// Which expansion produces the h-coefficients.  Both must agree; tests and
// the audit suites exercise them against each other.
enum class HRoute {
  productExpansion,  // multiply the linear/geometric factors together
  newtonIdentities,  // n h_n = sum_{k=1}^{n} p_k h_{n-k} from power sums
};

struct SymbolParams {
  std::vector<Rat> alphaPlus, betaPlus;
  std::vector<Rat> alphaMinus, betaMinus;
  Rat gammaPlus{0}, gammaMinus{0};

  // All alphas/betas must lie in [0,1) and gammas must be >= 0; anything
  // else throws DomainError.  The strict upper bound keeps every ratio
  // expansion used here inside its annulus of convergence.
  void validate() const;

  // Largest parameter over all four lists (0 when all are empty).
  Rat rho() const;

  // Radius within which both symbol expansions converge comfortably:
  // 1/sqrt(rho) for rho > 0, otherwise 2.
  double admissibleRadius() const;

  // Exact rational arithmetic supports gamma = 0 only; the exponential
  // factor is handled in float mode.
  bool exactCompatible() const { return gammaPlus == 0 && gammaMinus == 0; }

  // Plus and minus data exchanged.
  SymbolParams swapped() const;
};

inline void SymbolParams::validate() const {
  auto checkList = [](const std::vector<Rat>& xs, const char* name) {
    for (const Rat& x : xs)
      if (x < 0 || x >= 1)
        throw DomainError(std::string(name) + " parameter " + x.get_str() +
                          " outside [0,1)");
  };
  checkList(alphaPlus, "alphaPlus");
  checkList(betaPlus, "betaPlus");
  checkList(alphaMinus, "alphaMinus");
  checkList(betaMinus, "betaMinus");
  if (gammaPlus < 0 || gammaMinus < 0)
    throw DomainError("gamma parameters must be nonnegative");
}

inline Rat SymbolParams::rho() const {
  Rat best(0);
  for (const auto* list : {&alphaPlus, &betaPlus, &alphaMinus, &betaMinus})
    for (const Rat& x : *list)
      if (x > best) best = x;
  return best;
}

inline double SymbolParams::admissibleRadius() const {
  const Rat r = rho();
  if (r == 0) return 2.0;
  return 1.0 / std::sqrt(r.get_d());
}

inline SymbolParams SymbolParams::swapped() const {
  SymbolParams s;
  s.alphaPlus = alphaMinus;
  s.betaPlus = betaMinus;
  s.gammaPlus = gammaMinus;
  s.alphaMinus = alphaPlus;
  s.betaMinus = betaPlus;
  s.gammaMinus = gammaPlus;
  return s;
}

template <class S>
std::vector<S> convertList(const std::vector<Rat>& xs) {
  std::vector<S> out;
  out.reserve(xs.size());
  for (const Rat& x : xs) out.push_back(ScalarTraits<S>::fromRat(x));
  return out;
}

// ---------------------------------------------------------------------------
// Truncated power series: coefficients of z^0..z^order.

template <class S>
struct TruncatedSeries {
  std::vector<S> c;

  explicit TruncatedSeries(int order)
      : c(static_cast<size_t>(order) + 1, ScalarTraits<S>::zero()) {
    if (order < 0) throw DimensionError("series order must be >= 0");
  }

  static TruncatedSeries one(int order) {
    TruncatedSeries s(order);
    s.c[0] = ScalarTraits<S>::one();
    return s;
  }

  int order() const { return static_cast<int>(c.size()) - 1; }

  const S& operator[](int k) const {
    if (k < 0 || k > order())
      throw IndexError("series coefficient index " + std::to_string(k) +
                       " outside order " + std::to_string(order()));
    return c[static_cast<size_t>(k)];
  }
  S& operator[](int k) {
    if (k < 0 || k > order())
      throw IndexError("series coefficient index " + std::to_string(k) +
                       " outside order " + std::to_string(order()));
    return c[static_cast<size_t>(k)];
  }
};

template <class S>
TruncatedSeries<S> seriesMul(const TruncatedSeries<S>& a,
                             const TruncatedSeries<S>& b) {
  if (a.order() != b.order())
    throw DimensionError("series product needs equal orders");
  TruncatedSeries<S> out(a.order());
  for (int n = 0; n <= a.order(); ++n) {
    S acc = ScalarTraits<S>::zero();
    for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
    out[n] = acc;
  }
  return out;
}

// 1/a as a series; a[0] must be nonzero.
template <class S>
TruncatedSeries<S> seriesReciprocal(const TruncatedSeries<S>& a) {
  if (a[0] == ScalarTraits<S>::zero())
    throw DomainError("series reciprocal needs a nonzero constant term");
  TruncatedSeries<S> out(a.order());
  const S inv0 = ScalarTraits<S>::one() / a[0];
  out[0] = inv0;
  for (int n = 1; n <= a.order(); ++n) {
    S acc = ScalarTraits<S>::zero();
    for (int k = 1; k <= n; ++k) acc += a[k] * out[n - k];
    out[n] = -inv0 * acc;
  }
  return out;
}

// log(a) as a series; a[0] must be exactly 1.  Recurrence from f' a = a':
// n f_n = n a_n - sum_{k=1}^{n-1} k f_k a_{n-k}.
template <class S>
TruncatedSeries<S> seriesLog(const TruncatedSeries<S>& a) {
  if (a[0] != ScalarTraits<S>::one())
    throw DomainError("series log needs constant term 1");
  TruncatedSeries<S> out(a.order());
  for (int n = 1; n <= a.order(); ++n) {
    S acc = ScalarTraits<S>::fromLong(n) * a[n];
    for (int k = 1; k < n; ++k)
      acc -= ScalarTraits<S>::fromLong(k) * out[k] * a[n - k];
    out[n] = acc / ScalarTraits<S>::fromLong(n);
  }
  return out;
}

// exp(a) as a series; a[0] must be exactly 0.  Recurrence from b' = a' b:
// n b_n = sum_{k=1}^{n} k a_k b_{n-k}.
template <class S>
TruncatedSeries<S> seriesExp(const TruncatedSeries<S>& a) {
  if (a[0] != ScalarTraits<S>::zero())
    throw DomainError("series exp needs constant term 0");
  TruncatedSeries<S> out(a.order());
  out[0] = ScalarTraits<S>::one();
  for (int n = 1; n <= a.order(); ++n) {
    S acc = ScalarTraits<S>::zero();
    for (int k = 1; k <= n; ++k)
      acc += ScalarTraits<S>::fromLong(k) * a[k] * out[n - k];
    out[n] = acc / ScalarTraits<S>::fromLong(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbol coefficient sequences.

// Power sums of one side's parameter multiset: p_1 = gamma + sum alpha +
// sum beta, p_k = sum alpha^k + (-1)^{k-1} sum beta^k for k >= 2.  These are
// the k-th log-coefficients of the symbol scaled by k.
template <class S>
std::vector<S> powerSums(const std::vector<S>& alphas,
                         const std::vector<S>& betas, const S& gamma,
                         int kmax) {
  std::vector<S> p(static_cast<size_t>(kmax) + 1, ScalarTraits<S>::zero());
  std::vector<S> apow = alphas, bpow = betas;
  for (int k = 1; k <= kmax; ++k) {
    S acc = ScalarTraits<S>::zero();
    for (size_t i = 0; i < apow.size(); ++i) {
      acc += apow[i];
      apow[i] *= alphas[i];
    }
    for (size_t i = 0; i < bpow.size(); ++i) {
      acc += (k % 2 == 1) ? bpow[i] : S(-bpow[i]);
      bpow[i] *= betas[i];
    }
    if (k == 1) acc += gamma;
    p[static_cast<size_t>(k)] = acc;
  }
  return p;
}

namespace detail {

template <class S>
void requireExactGammaZero(const S& gamma) {
  if constexpr (isExactScalar<S>) {
    if (gamma != ScalarTraits<S>::zero())
      throw DomainError(
          "exact mode requires gamma = 0; the exponential factor is "
          "float-only");
  }
}

template <class S>
TruncatedSeries<S> hSeriesProduct(const std::vector<S>& alphas,
                                  const std::vector<S>& betas, const S& gamma,
                                  int order) {
  requireExactGammaZero(gamma);
  TruncatedSeries<S> h = TruncatedSeries<S>::one(order);
  // (1 + beta z) factors: one in-place pass each, descending.
  for (const S& b : betas)
    for (int n = order; n >= 1; --n) h[n] += b * h[n - 1];
  // 1/(1 - alpha z) factors: geometric recurrence, ascending.
  for (const S& a : alphas)
    for (int n = 1; n <= order; ++n) h[n] += a * h[n - 1];
  if (gamma != ScalarTraits<S>::zero()) {
    TruncatedSeries<S> expArg(order);
    if (order >= 1) expArg[1] = gamma;
    h = seriesMul(h, seriesExp(expArg));
  }
  return h;
}

template <class S>
TruncatedSeries<S> hSeriesNewton(const std::vector<S>& alphas,
                                 const std::vector<S>& betas, const S& gamma,
                                 int order) {
  requireExactGammaZero(gamma);
  const auto p = powerSums(alphas, betas, gamma, order);
  TruncatedSeries<S> h = TruncatedSeries<S>::one(order);
  for (int n = 1; n <= order; ++n) {
    S acc = ScalarTraits<S>::zero();
    for (int k = 1; k <= n; ++k) acc += p[static_cast<size_t>(k)] * h[n - k];
    h[n] = acc / ScalarTraits<S>::fromLong(n);
  }
  return h;
}

template <class S>
void pickSide(const SymbolParams& params, Side side, std::vector<S>& alphas,
              std::vector<S>& betas, S& gamma) {
  params.validate();
  if (side == Side::plus) {
    alphas = convertList<S>(params.alphaPlus);
    betas = convertList<S>(params.betaPlus);
    gamma = ScalarTraits<S>::fromRat(params.gammaPlus);
  } else {
    alphas = convertList<S>(params.alphaMinus);
    betas = convertList<S>(params.betaMinus);
    gamma = ScalarTraits<S>::fromRat(params.gammaMinus);
  }
}

}  // namespace detail

// Coefficients h_0..h_order of the chosen side's symbol, by either route.
template <class S>
TruncatedSeries<S> hCoefficients(const SymbolParams& params, Side side,
                                 int order,
                                 HRoute route = HRoute::productExpansion) {
  std::vector<S> alphas, betas;
  S gamma = ScalarTraits<S>::zero();
  detail::pickSide(params, side, alphas, betas, gamma);
  switch (route) {
    case HRoute::productExpansion:
      return detail::hSeriesProduct(alphas, betas, gamma, order);
    case HRoute::newtonIdentities:
      return detail::hSeriesNewton(alphas, betas, gamma, order);
  }
  throw DomainError("unknown h-coefficient route");
}

// Dual coefficients e_n, defined by sum_n e_n z^n = 1 / H(-z).  Swapping the
// alpha and beta lists of a side realizes exactly this, so the duals are
// computed by the same expansions.
template <class S>
TruncatedSeries<S> eCoefficients(const SymbolParams& params, Side side,
                                 int order,
                                 HRoute route = HRoute::productExpansion) {
  std::vector<S> alphas, betas;
  S gamma = ScalarTraits<S>::zero();
  detail::pickSide(params, side, alphas, betas, gamma);
  std::swap(alphas, betas);
  switch (route) {
    case HRoute::productExpansion:
      return detail::hSeriesProduct(alphas, betas, gamma, order);
    case HRoute::newtonIdentities:
      return detail::hSeriesNewton(alphas, betas, gamma, order);
  }
  throw DomainError("unknown h-coefficient route");
}

// ---------------------------------------------------------------------------
// Two-sided Laurent window of the symbol ratio.
//
// ratio[k]  holds R_k   = [z^k] (minus symbol) / (plus symbol),
// dual[k]   holds psi_k = [z^k] (plus symbol) / (minus symbol),
// for k in [lo, hi].  Both are computed from truncated one-sided expansions
// of internal order M; M is grown adaptively until the mass in the top
// eighth of every contributing expansion drops below tailTolerance, so the
// window values carry only a controlled truncation error.  (Exact scalars
// are accepted; the values are then exact sums of the truncated expansions,
// with the same documented truncation.)

template <class S>
struct RatioWindow {
  int lo = 0;
  int hi = -1;
  std::vector<S> ratio;
  std::vector<S> dual;
  int internalOrder = 0;
  double tailMassLastOctave = 0.0;

  const S& ratioAt(int k) const {
    if (k < lo || k > hi)
      throw TruncationError("ratio index " + std::to_string(k) +
                            " outside window [" + std::to_string(lo) + "," +
                            std::to_string(hi) + "]");
    return ratio[static_cast<size_t>(k - lo)];
  }
  const S& dualAt(int k) const {
    if (k < lo || k > hi)
      throw TruncationError("dual index " + std::to_string(k) +
                            " outside window [" + std::to_string(lo) + "," +
                            std::to_string(hi) + "]");
    return dual[static_cast<size_t>(k - lo)];
  }
};

namespace detail {

template <class S>
double octaveMass(const TruncatedSeries<S>& s) {
  double mass = 0.0;
  const int start = s.order() - s.order() / 8;
  for (int n = start; n <= s.order(); ++n)
    mass += ScalarTraits<S>::toDouble(ScalarTraits<S>::abs(s[n]));
  return mass;
}

}  // namespace detail

template <class S>
RatioWindow<S> ratioWindow(const SymbolParams& params, int lo, int hi,
                           double tailTolerance = tol::kTail) {
  if (lo > hi) throw DimensionError("ratio window needs lo <= hi");
  params.validate();
  const int reach = std::max(std::abs(lo), std::abs(hi));
  int m = std::max(64, 2 * (reach + 8));
  constexpr int kMaxInternalOrder = 1 << 15;
  for (;; m *= 2) {
    if (m > kMaxInternalOrder)
      throw ConvergenceError(
          "ratio window expansions failed to settle below tolerance " +
              std::to_string(tailTolerance),
          m);
    const auto hp = hCoefficients<S>(params, Side::plus, m);
    const auto hm = hCoefficients<S>(params, Side::minus, m);
    const auto ip = seriesReciprocal(hp);
    const auto im = seriesReciprocal(hm);
    const double mass =
        std::max(std::max(detail::octaveMass(hp), detail::octaveMass(hm)),
                 std::max(detail::octaveMass(ip), detail::octaveMass(im)));
    if (mass >= tailTolerance) continue;

    RatioWindow<S> w;
    w.lo = lo;
    w.hi = hi;
    w.internalOrder = m;
    w.tailMassLastOctave = mass;
    w.ratio.resize(static_cast<size_t>(hi - lo) + 1, ScalarTraits<S>::zero());
    w.dual.resize(static_cast<size_t>(hi - lo) + 1, ScalarTraits<S>::zero());
    for (int k = lo; k <= hi; ++k) {
      // R_k = sum_a hm_a ip_{a+k}; psi_k = sum_c im_c hp_{c+k}.
      S r = ScalarTraits<S>::zero();
      S d = ScalarTraits<S>::zero();
      for (int a = std::max(0, -k); a + k <= m && a <= m; ++a) {
        r += hm[a] * ip[a + k];
        d += im[a] * hp[a + k];
      }
      w.ratio[static_cast<size_t>(k - lo)] = r;
      w.dual[static_cast<size_t>(k - lo)] = d;
    }
    return w;
  }
}

// ---------------------------------------------------------------------------
// Adaptive tail sums over a ratio window.  Summation stops once the term
// magnitude stays below tailTolerance for three consecutive indices; running
// out of window before that throws TruncationError.

namespace detail {

template <class S>
bool settled(const S& term, double tailTolerance, int& quietRun) {
  const double mag = ScalarTraits<S>::toDouble(ScalarTraits<S>::abs(term));
  quietRun = mag < tailTolerance ? quietRun + 1 : 0;
  return quietRun >= 3;
}

[[noreturn]] inline void tooNarrow(const char* what) {
  throw TruncationError(std::string(what) +
                        ": ratio window too narrow for the requested sum");
}

}  // namespace detail

// Coefficient magnitudes peak around index 0 and decay geometrically away
// from it, so a summand can sit below the tolerance for many leading k and
// surge once its factor indices cross zero.  Each sum therefore arms the
// quiet-run exit only after every factor index has passed its peak.

// sum_{k>=1} R_{i+k} psi_{-j-k}
template <class S>
S upperTailSum(const RatioWindow<S>& w, int i, int j,
               double tailTolerance = tol::kTail) {
  S acc = ScalarTraits<S>::zero();
  const int armAt = std::max({1, -i, -j});
  int quietRun = 0;
  for (int k = 1;; ++k) {
    if (i + k > w.hi || -j - k < w.lo) detail::tooNarrow("upper tail sum");
    const S term = w.ratioAt(i + k) * w.dualAt(-j - k);
    acc += term;
    if (k >= armAt && detail::settled(term, tailTolerance, quietRun))
      return acc;
  }
}

// sum_{k>=1} R_{-i-k} psi_{j+k}
template <class S>
S lowerTailSum(const RatioWindow<S>& w, int i, int j,
               double tailTolerance = tol::kTail) {
  S acc = ScalarTraits<S>::zero();
  const int armAt = std::max({1, -i, -j});
  int quietRun = 0;
  for (int k = 1;; ++k) {
    if (-i - k < w.lo || j + k > w.hi) detail::tooNarrow("lower tail sum");
    const S term = w.ratioAt(-i - k) * w.dualAt(j + k);
    acc += term;
    if (k >= armAt && detail::settled(term, tailTolerance, quietRun))
      return acc;
  }
}

// sum_{k>=0} R_{p-k} psi_{q+1+k}
template <class S>
S crossSum(const RatioWindow<S>& w, int p, int q,
           double tailTolerance = tol::kTail) {
  S acc = ScalarTraits<S>::zero();
  const int armAt = std::max({0, p, -q - 1});
  int quietRun = 0;
  for (int k = 0;; ++k) {
    if (p - k < w.lo || q + 1 + k > w.hi) detail::tooNarrow("cross sum");
    const S term = w.ratioAt(p - k) * w.dualAt(q + 1 + k);
    acc += term;
    if (k >= armAt && detail::settled(term, tailTolerance, quietRun))
      return acc;
  }
}

}  // namespace tpk
