#pragma once

// The partition measure attached to a symbol pair, and its brute-force
// correlation sums.
//
// Weights are P{lambda} = s+_lambda s-_lambda / Z, where s±_lambda evaluates
// the Schur polynomial at the respective parameter specialization (computed
// from the h-coefficient series through the Jacobi-Trudi determinant, or
// through the Giambelli determinant of hook values, which are exactly the
// half-line operator entries).  Z normalizes the total mass; the point
// process lives on L(lambda) = {lambda_i - i} and its correlations are what
// the lattice kernel reproduces.

#include <map>
#include <mutex>
#include <vector>

#include "tpk/kernel.hpp"
#include "tpk/partition.hpp"
#include "tpk/series.hpp"

namespace tpk {

// s_lambda = det[h_{lambda_i - i + j}] over the parts (negative index = 0).
template <class S>
S schurJacobiTrudi(const Partition& p, const TruncatedSeries<S>& h) {
  const int len = p.length();
  if (len == 0) return ScalarTraits<S>::one();
  if (h.order() < p.parts[0] + len)
    throw TruncationError("series order " + std::to_string(h.order()) +
                          " too small for partition " + p.toString());
  Matrix<S> m(len, len);
  for (int i = 0; i < len; ++i)
    for (int j = 0; j < len; ++j) {
      const int idx = p.parts[static_cast<size_t>(i)] - i + j;
      m(i, j) = idx < 0 ? ScalarTraits<S>::zero() : h[idx];
    }
  return determinant(m);
}

// s_lambda = det[A_{p_i q_j}] over the Frobenius coordinates: the hook
// values are the half-line operator entries.
template <class S>
S schurGiambelli(const Partition& p, const OperatorTruncation<S>& a) {
  const auto f = frobenius(p);
  const int d = f.rank();
  if (d == 0) return ScalarTraits<S>::one();
  if (f.arms.front() >= a.order || f.legs.front() >= a.order)
    throw TruncationError("operator truncation " + std::to_string(a.order) +
                          " too small for partition " + p.toString());
  Matrix<S> m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      m(i, j) = a.matrix(f.arms[static_cast<size_t>(i)],
                         f.legs[static_cast<size_t>(j)]);
  return determinant(m);
}

// ---------------------------------------------------------------------------
// Normalization.

// Closed product form: exp of the gamma cross terms times
// prod (1 + a+ b-)(1 + b+ a-) / ((1 - a+ a-)(1 - b+ b-)) over all index
// pairs.  Exact in rational mode (which requires gamma = 0).
template <class S>
S zClosedForm(const SymbolParams& params) {
  params.validate();
  if constexpr (isExactScalar<S>) {
    if (!params.exactCompatible())
      throw DomainError(
          "exact mode requires gamma = 0; the exponential factor is "
          "float-only");
  }
  const auto ap = convertList<S>(params.alphaPlus);
  const auto bp = convertList<S>(params.betaPlus);
  const auto am = convertList<S>(params.alphaMinus);
  const auto bm = convertList<S>(params.betaMinus);
  S z = ScalarTraits<S>::one();
  const S one = ScalarTraits<S>::one();
  for (const S& a : ap) {
    for (const S& a2 : am) z /= one - a * a2;
    for (const S& b2 : bm) z *= one + a * b2;
  }
  for (const S& b : bp) {
    for (const S& a2 : am) z *= one + b * a2;
    for (const S& b2 : bm) z /= one - b * b2;
  }
  if constexpr (!isExactScalar<S>) {
    // Gamma enters only through exp(g+ g- + g+ sum(minus params) +
    // g- sum(plus params)).
    double cross = params.gammaMinus.get_d() * params.gammaPlus.get_d();
    for (const Rat& x : params.alphaMinus)
      cross += params.gammaPlus.get_d() * x.get_d();
    for (const Rat& x : params.betaMinus)
      cross += params.gammaPlus.get_d() * x.get_d();
    for (const Rat& x : params.alphaPlus)
      cross += params.gammaMinus.get_d() * x.get_d();
    for (const Rat& x : params.betaPlus)
      cross += params.gammaMinus.get_d() * x.get_d();
    z *= std::exp(cross);
  }
  return z;
}

// Series form: Z = exp sum_{k>=1} k (log phi_+)_k (log phi_-)_{-k}; the
// log-coefficients are power sums over k, so the exponent is
// sum_k p+_k p-_k / k, truncated at `order`.  The truncation must have
// settled: the summed magnitude of the last eighth of the terms has to fall
// below tailTolerance, else TruncationError.
inline double normalizationZSeries(const SymbolParams& params, int order,
                                   double tailTolerance = tol::kTail) {
  params.validate();
  if (order < 1) throw DimensionError("normalization needs order >= 1");
  const auto pPlus =
      powerSums<double>(convertList<double>(params.alphaPlus),
                        convertList<double>(params.betaPlus),
                        params.gammaPlus.get_d(), order);
  const auto pMinus =
      powerSums<double>(convertList<double>(params.alphaMinus),
                        convertList<double>(params.betaMinus),
                        params.gammaMinus.get_d(), order);
  double expo = 0.0;
  double octave = 0.0;
  for (int k = 1; k <= order; ++k) {
    const double term = pPlus[static_cast<size_t>(k)] *
                        pMinus[static_cast<size_t>(k)] / k;
    expo += term;
    if (k > order - order / 8) octave += std::fabs(term);
  }
  if (octave >= tailTolerance)
    throw TruncationError(
        "normalization series tail has not settled at order " +
        std::to_string(order));
  return std::exp(expo);
}

// Mass per partition size: coefficients c_n of exp(sum_k p+_k p-_k t^k / k)
// satisfy c_n = sum over |lambda| = n of s+ s-.  Float only.
inline TruncatedSeries<double> sizeMassSeries(const SymbolParams& params,
                                              int order) {
  params.validate();
  TruncatedSeries<double> expo(order);
  if (order >= 1) {
    const auto pPlus =
        powerSums<double>(convertList<double>(params.alphaPlus),
                          convertList<double>(params.betaPlus),
                          params.gammaPlus.get_d(), order);
    const auto pMinus =
        powerSums<double>(convertList<double>(params.alphaMinus),
                          convertList<double>(params.betaMinus),
                          params.gammaMinus.get_d(), order);
    for (int k = 1; k <= order; ++k)
      expo[k] = pPlus[static_cast<size_t>(k)] *
                pMinus[static_cast<size_t>(k)] / k;
  }
  return seriesExp(expo);
}

// Σ_{|lambda| > maxSize} P{lambda}, from the generating function rather than
// enumeration, floored at zero against roundoff.  This is an exact tail
// identity (not just an envelope), so it doubles as the tail bound reported
// by brute-force sums.
inline double enumerationTailBound(const SymbolParams& params, int maxSize) {
  const auto mass = sizeMassSeries(params, maxSize);
  double captured = 0.0;
  for (int n = 0; n <= maxSize; ++n) captured += mass[n];
  const double z = normalizationZSeries(
      params, std::max(64, 4 * std::max(maxSize, 1)));
  return std::max(0.0, 1.0 - captured / z);
}

// ---------------------------------------------------------------------------
// Measure context: shared series, normalization, and a weight cache.

template <class S>
struct MeasureContext {
  SymbolParams params;
  int maxPartitionSize = 0;
  TruncatedSeries<S> hPlus, hMinus;
  S z = ScalarTraits<S>::zero();

  MeasureContext(const SymbolParams& p, int maxSize)
      : params(p),
        maxPartitionSize(maxSize),
        hPlus(hCoefficients<S>(p, Side::plus, seriesOrderFor(maxSize))),
        hMinus(hCoefficients<S>(p, Side::minus, seriesOrderFor(maxSize))) {
    if constexpr (isExactScalar<S>)
      z = zClosedForm<S>(p);
    else
      z = normalizationZSeries(p, std::max(64, 4 * std::max(maxSize, 1)));
    if (ScalarTraits<S>::toDouble(z) <= 0.0)
      throw DomainError("normalization must be positive");
  }

  MeasureContext(const MeasureContext&) = delete;
  MeasureContext& operator=(const MeasureContext&) = delete;

  // Validates the cap before any series work happens (this runs inside the
  // first series member initializer).
  static int seriesOrderFor(int maxSize) {
    if (maxSize < 0) throw DomainError("partition size cap must be >= 0");
    if (maxSize > kMaxEnumerationSize)
      throw ResourceError("partition size cap exceeds " +
                          std::to_string(kMaxEnumerationSize));
    return maxSize + 8;
  }

  mutable std::mutex cacheMutex;
  mutable std::map<std::vector<int>, S> weightCache;
};

template <class S>
S normalizationZ(const MeasureContext<S>& ctx) {
  return ctx.z;
}

// P{lambda} = s+ s- / Z, cached per context.
template <class S>
S measureWeight(const MeasureContext<S>& ctx, const Partition& p) {
  {
    std::lock_guard<std::mutex> lock(ctx.cacheMutex);
    auto it = ctx.weightCache.find(p.parts);
    if (it != ctx.weightCache.end()) return it->second;
  }
  const S splus = schurJacobiTrudi(p, ctx.hPlus);
  const S sminus = schurJacobiTrudi(p, ctx.hMinus);
  S w = splus * sminus / ctx.z;
  std::lock_guard<std::mutex> lock(ctx.cacheMutex);
  auto [it, inserted] = ctx.weightCache.emplace(p.parts, w);
  return it->second;
}

// ---------------------------------------------------------------------------
// Brute-force correlations.

template <class S>
struct BruteCorrelation {
  S value = ScalarTraits<S>::zero();
  double tailBound = 0.0;
  long partitionsVisited = 0;
  long matched = 0;
};

// Σ P{lambda} over all |lambda| <= maxSize whose point set L(lambda)
// contains every listed point, plus the exact tail of the full sum.
template <class S>
BruteCorrelation<S> bruteCorrelation(const MeasureContext<S>& ctx,
                                     const std::vector<int>& points,
                                     int maxSize) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw DomainError("correlation points must be distinct");
  if (maxSize > ctx.maxPartitionSize)
    throw ResourceError(
        "context was built for partition sizes <= " +
        std::to_string(ctx.maxPartitionSize));
  BruteCorrelation<S> out;
  enumeratePartitions(maxSize, [&](const Partition& p) {
    ++out.partitionsVisited;
    for (int x : points)
      if (!lContains(p, x)) return;
    ++out.matched;
    out.value += measureWeight(ctx, p);
  });
  out.tailBound = enumerationTailBound(ctx.params, maxSize);
  return out;
}

// ---------------------------------------------------------------------------
// Correlation verification: brute force vs. kernel determinant.

struct Theorem3Entry {
  std::vector<int> points;
  double bruteValue = 0.0;
  double detValue = 0.0;
  double diff = 0.0;
  double tailBound = 0.0;
  bool pass = false;
};

struct Theorem3Report {
  int maxSize = 0;
  double tolerance = tol::kCorrelation;
  std::vector<Theorem3Entry> entries;
  bool pass = false;
};

// For each point set: |brute force - det[kernel(x_i, x_j)]| must not exceed
// the enumeration tail bound plus the stated tolerance.  The kernel window
// must cover every point.
inline Theorem3Report verifyTheorem3(const MeasureContext<double>& ctx,
                                     const ZKernel<double>& kappa,
                                     const std::vector<std::vector<int>>& sets,
                                     int maxSize,
                                     double tolerance = tol::kCorrelation) {
  Theorem3Report rep;
  rep.maxSize = maxSize;
  rep.tolerance = tolerance;
  rep.pass = true;
  for (const auto& points : sets) {
    Theorem3Entry e;
    e.points = points;
    const auto brute = bruteCorrelation(ctx, points, maxSize);
    e.bruteValue = brute.value;
    e.tailBound = brute.tailBound;
    const int n = static_cast<int>(points.size());
    Matrix<double> k(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k(i, j) = kappa.at(points[static_cast<size_t>(i)],
                           points[static_cast<size_t>(j)]);
    e.detValue = determinant(k);
    e.diff = std::fabs(e.bruteValue - e.detValue);
    e.pass = e.diff <= e.tailBound + tolerance;
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

}  // namespace tpk
