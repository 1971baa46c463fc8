#include "tpk/suites.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <limits>

#include "tpk/eigen.hpp"
#include "tpk/kernel.hpp"
#include "tpk/operators.hpp"
#include "tpk/partition.hpp"
#include "tpk/report.hpp"
#include "tpk/schur.hpp"
#include "tpk/spectral.hpp"

namespace tpk {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

SuiteResult finishSuite(
    const RunConfig& cfg, const std::string& name, Json results,
    const std::string& verdict, const Stopwatch& sw,
    std::vector<std::pair<std::string, std::string>> artifacts) {
  SuiteResult out;
  out.name = name;
  out.verdict = verdict;
  out.pass = verdict == "pass";
  out.artifacts = std::move(artifacts);
  Json j;
  j["schemaVersion"] = 1;
  j["suite"] = name;
  j["preset"] = cfg.presetName;
  j["scalar"] = cfg.rationalMode ? "rational" : "float";
  j["inputs"] = configToJson(cfg);
  j["results"] = std::move(results);
  j["verdict"] = verdict;
  j["pass"] = out.pass;
  // The only field excluded from byte determinism.
  j["wallClockSeconds"] = sw.seconds();
  out.report = std::move(j);
  return out;
}

Json spectrumToJson(const SpectrumReport& rep) {
  Json j;
  j["tag"] = rep.operatorTag;
  j["truncationOrder"] = rep.truncationOrder;
  j["tailStart"] = rep.tailStart;
  j["maxImagAbs"] = rep.maxImagAbs;
  j["minReal"] = rep.minReal;
  j["maxReal"] = rep.maxReal;
  j["nearOneCount"] = rep.nearOneCount;
  j["imagTolerance"] = rep.imagTolerance;
  j["edgeTolerance"] = rep.edgeTolerance;
  if (!rep.convergenceTrace.empty()) {
    Json trace = Json::array();
    for (const auto& [order, distance] : rep.convergenceTrace) {
      Json step;
      step["order"] = order;
      step["distance"] = distance;
      trace.push_back(std::move(step));
    }
    j["convergenceTrace"] = std::move(trace);
  }
  if (!rep.determinantTrace.empty())
    j["determinantTrace"] = rep.determinantTrace;
  j["eigenvalues"] = complexListToJson(rep.eigenvalues);
  j["verdict"] = verdictName(rep.verdict);
  return j;
}

Json auditToJson(const TotalPositivityAudit& a) {
  Json j;
  j["tag"] = a.matrixTag;
  j["window"] = a.window;
  j["maxMinorSize"] = a.maxMinorSize;
  j["exact"] = a.exact;
  j["minorsChecked"] = a.minorsChecked;
  j["minMinorValue"] = a.minMinorValue;
  j["violationCount"] = a.violations.size();
  Json v = Json::array();
  const size_t cap = 20;
  for (size_t i = 0; i < a.violations.size() && i < cap; ++i) {
    Json one;
    one["rows"] = a.violations[i].rows;
    one["cols"] = a.violations[i].cols;
    one["value"] = a.violations[i].value;
    v.push_back(std::move(one));
  }
  j["violations"] = std::move(v);
  if (a.violations.size() > cap) j["violationsTruncated"] = true;
  j["pass"] = a.pass();
  return j;
}

Json lemma6ToJson(const Lemma6Report& r) {
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["identityCorner"] = r.identityCorner;
  j["identityMinors"] = r.identityMinors;
  j["casesChecked"] = r.casesChecked;
  j["detOneMinusD"] = ratToString(r.detOneMinusD);
  j["pass"] = r.pass();
  return j;
}

Json theorem1ToJson(const Theorem1Report& r) {
  Json j;
  j["order"] = r.order;
  Json res;
  for (const auto& [key, value] : r.residuals) res[key] = value;
  j["residuals"] = std::move(res);
  j["detOnePlusL"] = r.detOnePlusL;
  j["directBlocksTolerance"] = r.directBlocksTolerance;
  j["crossRouteTolerance"] = r.crossRouteTolerance;
  j["routeAgreement"] = r.pass;
  return j;
}

Json theorem3ToJson(const Theorem3Report& r) {
  Json j;
  j["maxSize"] = r.maxSize;
  j["tolerance"] = r.tolerance;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json one;
    one["points"] = e.points;
    one["bruteValue"] = e.bruteValue;
    one["detValue"] = e.detValue;
    one["diff"] = e.diff;
    one["tailBound"] = e.tailBound;
    one["pass"] = e.pass;
    entries.push_back(std::move(one));
  }
  j["entries"] = std::move(entries);
  j["pass"] = r.pass;
  return j;
}

template <class S>
Matrix<S> toeplitzFromSeries(const TruncatedSeries<S>& h, int w) {
  Matrix<S> m(w, w);
  for (int i = 0; i < w; ++i)
    for (int j = 0; j < w; ++j)
      m(i, j) = (i - j >= 0 && i - j <= h.order()) ? h[i - j]
                                                   : ScalarTraits<S>::zero();
  return m;
}

}  // namespace

SuiteResult runTheorem1Suite(const RunConfig& cfg) {
  Stopwatch sw;
  validateCaps(cfg);
  const auto rep =
      verifyTheorem1(cfg.params, cfg.matrixOrder, cfg.directBlocksTolerance,
                     cfg.crossRouteTolerance);
  Json res = theorem1ToJson(rep);

  // det(1+L) approaches the measure normalization; compare against the
  // independent series value.
  const double z =
      normalizationZSeries(cfg.params, std::max(64, 4 * cfg.matrixOrder));
  const double zRel = std::fabs(rep.detOnePlusL - z) / z;
  res["zSeries"] = z;
  res["zRelativeError"] = zRel;
  const bool zOk = zRel <= cfg.zRelTolerance;
  res["zAgrees"] = zOk;

  bool exactOk = true;
  if (cfg.rationalMode && cfg.params.exactCompatible()) {
    const int nr = std::min(cfg.matrixOrder, 12);
    const auto a = buildA<Rat>(cfg.params, nr);
    const auto b = buildB<Rat>(cfg.params, nr);
    const auto direct = kernelDirect(buildL(a, b));
    const auto blocks = kernelBlocks(a, b);
    const bool blocksEqual =
        direct.k11 == blocks.k11 && direct.k12 == blocks.k12 &&
        direct.k21 == blocks.k21 && direct.k22 == blocks.k22;
    const Matrix<Rat> at = a.matrix.transpose();
    const Matrix<Rat> id = Matrix<Rat>::identity(nr);
    const Rat d2 = determinant(id + at * b.matrix);
    const Rat d3 = determinant(id + b.matrix * at);
    const bool detsEqual = direct.detOnePlusL == d2 && d2 == d3;
    exactOk = blocksEqual && detsEqual;
    Json ex;
    ex["status"] = exactOk ? "pass" : "fail";
    ex["order"] = nr;
    ex["blockEquality"] = blocksEqual;
    ex["determinantEquality"] = detsEqual;
    ex["detOnePlusL"] = ratToString(direct.detOnePlusL);
    res["exactCheck"] = std::move(ex);
  } else {
    Json ex;
    ex["status"] = "skipped";
    ex["reason"] = cfg.rationalMode
                       ? "exact arithmetic needs gamma = 0 on both sides"
                       : "float scalar mode";
    res["exactCheck"] = std::move(ex);
  }

  const bool pass = rep.pass && zOk && exactOk;
  return finishSuite(cfg, "theorem1", std::move(res), pass ? "pass" : "fail",
                     sw, {});
}

SuiteResult runTheorem3Suite(const RunConfig& cfg) {
  Stopwatch sw;
  validateCaps(cfg);
  MeasureContext<double> ctx(cfg.params, cfg.enumerationCap);
  const int w = std::max(32, cfg.pointWindow);
  const auto kappa = zKernel<double>(cfg.params, -w, w);

  std::vector<std::vector<int>> sets;
  for (int x = -cfg.pointWindow; x <= cfg.pointWindow; ++x)
    sets.push_back({x});
  for (int x = -cfg.pointWindow; x <= cfg.pointWindow; ++x)
    for (int y = x + 1; y <= cfg.pointWindow; ++y) sets.push_back({x, y});

  const auto rep = verifyTheorem3(ctx, kappa, sets, cfg.enumerationCap,
                                  cfg.correlationTolerance);
  Json res = theorem3ToJson(rep);

  // Total mass and mean size, Kahan-compensated (the mass should sit just
  // below 1, so naive accumulation noise matters).
  double mass = 0.0, carry = 0.0;
  double meanSizeEnum = 0.0;
  long visited = 0;
  enumeratePartitions(cfg.enumerationCap, [&](const Partition& p) {
    ++visited;
    const double weight = measureWeight(ctx, p);
    const double y = weight - carry;
    const double t = mass + y;
    carry = (t - mass) - y;
    mass = t;
    meanSizeEnum += weight * p.size();
  });
  const double tail = enumerationTailBound(cfg.params, cfg.enumerationCap);
  const bool massOk =
      mass >= 1.0 - 1e-8 && mass <= 1.0 + tol::kMassSlack;
  res["partitionsVisited"] = visited;
  res["totalMass"] = mass;
  res["tailBound"] = tail;
  res["massInWindow"] = massOk;

  // Mean point-count balance: the expected size computed from the diagonal
  // of the kernel (particles right of the origin, holes left of it) should
  // match the enumeration side.  Informational; not part of the verdict.
  double meanSizeKernel = 0.0;
  for (int x = 0; x <= w; ++x) meanSizeKernel += (x + 0.5) * kappa.at(x, x);
  for (int x = -w; x < 0; ++x)
    meanSizeKernel += (-x - 0.5) * (1.0 - kappa.at(x, x));
  Json mean;
  mean["enumeration"] = meanSizeEnum;
  mean["kernelDiagonal"] = meanSizeKernel;
  mean["diff"] = std::fabs(meanSizeEnum - meanSizeKernel);
  mean["agrees"] = std::fabs(meanSizeEnum - meanSizeKernel) <= 1e-6;
  res["meanSize"] = std::move(mean);

  res["kernelWindow"] = w;
  res["kernelInternalOrder"] = kappa.internalOrder;

  std::vector<std::pair<std::string, std::string>> artifacts;
  artifacts.emplace_back("theorem3.kappa.matrix.csv", matrixCsv(kappa.values));

  const bool pass = rep.pass && massOk;
  return finishSuite(cfg, "theorem3", std::move(res), pass ? "pass" : "fail",
                     sw, std::move(artifacts));
}

SuiteResult runTheorem4Suite(const RunConfig& cfg) {
  Stopwatch sw;
  validateCaps(cfg);
  const int n = cfg.matrixOrder;
  const auto bundle = kernelSeries<double>(cfg.params, n);

  Json res;
  Json ops = Json::array();
  std::vector<std::pair<std::string, std::string>> artifacts;
  bool spectraOk = true;
  bool matchOk = true;
  for (int start : cfg.tailStarts) {
    const std::string suffix = ".n" + std::to_string(start);
    auto r11 = spectrumVerdict(projectTail(bundle.k11, start), "k11" + suffix,
                               cfg.imagTolerance, cfg.edgeTolerance);
    auto r22 = spectrumVerdict(projectTail(bundle.k22, start), "k22" + suffix,
                               cfg.imagTolerance, cfg.edgeTolerance);
    const auto t = buildT<double>(cfg.params, start, n);
    auto rt = spectrumVerdict(t.matrix, "t" + suffix, cfg.imagTolerance,
                              cfg.edgeTolerance);
    r11.tailStart = r22.tailStart = rt.tailStart = start;

    // The tail operator and the upper-left kernel block are conjugate by a
    // diagonal sign matrix, so their spectra must coincide.
    const double distance =
        spectrumHausdorff(r11.eigenvalues, rt.eigenvalues);
    const bool match = distance <= cfg.spectrumMatchTolerance;
    const bool ok = r11.verdict == Verdict::pass &&
                    r22.verdict == Verdict::pass &&
                    rt.verdict == Verdict::pass;
    spectraOk = spectraOk && ok;
    matchOk = matchOk && match;

    Json entry;
    entry["tailStart"] = start;
    entry["k11"] = spectrumToJson(r11);
    entry["k22"] = spectrumToJson(r22);
    entry["t"] = spectrumToJson(rt);
    entry["tailKernelSpectrumDistance"] = distance;
    entry["spectraMatch"] = match;
    ops.push_back(std::move(entry));

    artifacts.emplace_back("theorem4.k11" + suffix + ".eigenvalues.csv",
                           eigenvaluesCsv(r11.eigenvalues));
    artifacts.emplace_back("theorem4.k22" + suffix + ".eigenvalues.csv",
                           eigenvaluesCsv(r22.eigenvalues));
    artifacts.emplace_back("theorem4.t" + suffix + ".eigenvalues.csv",
                           eigenvaluesCsv(rt.eigenvalues));
  }
  res["tailOperators"] = std::move(ops);

  // The half-line product has real nonnegative spectrum (no unit upper
  // bound is claimed for it).
  const auto a = buildA<double>(cfg.params, n);
  const auto b = buildB<double>(cfg.params, n);
  const Matrix<double> atb = a.matrix.transpose() * b.matrix;
  const auto atbEig = sortedEigenvalues(atb);
  double atbMaxImag = 0.0;
  double atbMinReal = atbEig.empty() ? 0.0 : atbEig.front().real();
  for (const auto& ev : atbEig) {
    atbMaxImag = std::max(atbMaxImag, std::fabs(ev.imag()));
    atbMinReal = std::min(atbMinReal, ev.real());
  }
  const bool atbOk =
      atbMaxImag < cfg.imagTolerance && atbMinReal >= -cfg.edgeTolerance;
  Json prod;
  prod["order"] = n;
  prod["maxImagAbs"] = atbMaxImag;
  prod["minReal"] = atbMinReal;
  prod["eigenvalues"] = complexListToJson(atbEig);
  prod["pass"] = atbOk;
  res["productSpectrum"] = std::move(prod);

  // Truncation-convergence sweep on the same product operator.
  auto builder = [&cfg](int order) {
    const auto aa = buildA<double>(cfg.params, order);
    const auto bb = buildB<double>(cfg.params, order);
    return aa.matrix.transpose() * bb.matrix;
  };
  auto sweep = sweepConvergence(builder, cfg.sweepSchedule, "atb.sweep",
                                cfg.convergenceTolerance, cfg.imagTolerance,
                                cfg.edgeTolerance,
                                /*requireUnitUpperBound=*/false);
  Json sweepJson = spectrumToJson(sweep);

  // det(1 + product) tracks the normalization as the order grows.
  const double z = normalizationZSeries(
      cfg.params, std::max(64, 4 * cfg.sweepSchedule.back()));
  const double zFinalRel =
      std::fabs(sweep.determinantTrace.back() - z) / z;
  sweepJson["zSeries"] = z;
  sweepJson["zFinalRelativeError"] = zFinalRel;
  const bool zOk = zFinalRel <= cfg.zRelTolerance;
  sweepJson["zAgrees"] = zOk;
  res["sweep"] = std::move(sweepJson);
  artifacts.emplace_back("theorem4.sweep.eigenvalues.csv",
                         eigenvaluesCsv(sweep.eigenvalues));

  std::string verdict;
  if (!spectraOk || !matchOk || !atbOk ||
      sweep.verdict == Verdict::fail ||
      (sweep.verdict == Verdict::pass && !zOk)) {
    verdict = "fail";
  } else if (sweep.verdict == Verdict::inconclusive) {
    verdict = "inconclusive";
  } else {
    verdict = "pass";
  }
  return finishSuite(cfg, "theorem4", std::move(res), verdict, sw,
                     std::move(artifacts));
}

SuiteResult runLemma6Suite(const RunConfig& cfg) {
  Stopwatch sw;
  validateCaps(cfg);
  Json res;

  const auto trials =
      lemma6Trials(cfg.lemma6M, cfg.lemma6N, cfg.lemma6TrialCount, cfg.seed);
  bool trialsOk = true;
  Json trialArr = Json::array();
  for (const auto& t : trials) {
    trialsOk = trialsOk && t.pass();
    trialArr.push_back(lemma6ToJson(t));
  }
  Json trialsJson;
  trialsJson["count"] = cfg.lemma6TrialCount;
  trialsJson["m"] = cfg.lemma6M;
  trialsJson["n"] = cfg.lemma6N;
  trialsJson["seed"] = cfg.seed;
  trialsJson["allPass"] = trialsOk;
  trialsJson["reports"] = std::move(trialArr);
  res["randomTrials"] = std::move(trialsJson);

  // Structured instance: the corner of the exact operator product, which
  // the theory says is totally nonnegative with det(1-D) > 0.
  bool structuredOk = true;
  if (cfg.params.exactCompatible()) {
    const int size = cfg.lemma6M + cfg.lemma6N;
    const int order = std::max(16, 2 * size);
    const auto a = buildA<Rat>(cfg.params, order);
    const auto b = buildB<Rat>(cfg.params, order);
    const Matrix<Rat> atb = a.matrix.transpose() * b.matrix;
    const Matrix<Rat> c = atb.block(0, 0, size, size);
    const auto rep = lemma6Check(c, cfg.lemma6M);
    const bool detPositive = rep.detOneMinusD > 0;

    const Matrix<Rat> k = c * inverse(Matrix<Rat>::identity(size) + c);
    const Matrix<Rat> d =
        k.block(cfg.lemma6M, cfg.lemma6M, cfg.lemma6N, cfg.lemma6N);
    const Matrix<Rat> e =
        d * inverse(Matrix<Rat>::identity(cfg.lemma6N) - d);
    const int auditSize = std::min(3, cfg.lemma6N);
    const auto dAudit =
        auditTotalPositivity(d, "structured.d", auditSize, cfg.lemma6N,
                             cfg.seed, cfg.auditSamples, cfg.minorTolerance);
    const auto eAudit =
        auditTotalPositivity(e, "structured.e", auditSize, cfg.lemma6N,
                             cfg.seed, cfg.auditSamples, cfg.minorTolerance);

    structuredOk =
        rep.pass() && detPositive && dAudit.pass() && eAudit.pass();
    Json s;
    s["status"] = structuredOk ? "pass" : "fail";
    s["operatorOrder"] = order;
    s["report"] = lemma6ToJson(rep);
    s["detOneMinusDPositive"] = detPositive;
    s["dAudit"] = auditToJson(dAudit);
    s["eAudit"] = auditToJson(eAudit);
    res["structured"] = std::move(s);
  } else {
    Json s;
    s["status"] = "skipped";
    s["reason"] = "exact arithmetic needs gamma = 0 on both sides";
    res["structured"] = std::move(s);
  }

  const bool pass = trialsOk && structuredOk;
  return finishSuite(cfg, "lemma6", std::move(res), pass ? "pass" : "fail",
                     sw, {});
}

SuiteResult runTpAuditSuite(const RunConfig& cfg) {
  Stopwatch sw;
  validateCaps(cfg);
  const int w = cfg.auditWindow;
  const bool exact = cfg.rationalMode && cfg.params.exactCompatible();

  Json res;
  Json audits = Json::array();
  bool allOk = true;
  double minMin = std::numeric_limits<double>::infinity();
  auto push = [&](const TotalPositivityAudit& a) {
    allOk = allOk && a.pass();
    minMin = std::min(minMin, a.minMinorValue);
    audits.push_back(auditToJson(a));
  };

  auto runAudits = [&](auto scalarTag) {
    using S = decltype(scalarTag);
    const auto a = buildA<S>(cfg.params, w);
    const auto b = buildB<S>(cfg.params, w);
    const Matrix<S> atb = a.matrix.transpose() * b.matrix;
    push(auditTotalPositivity(a.matrix, "a", cfg.auditMinorSize, w, cfg.seed,
                              cfg.auditSamples, cfg.minorTolerance));
    push(auditTotalPositivity(b.matrix, "b", cfg.auditMinorSize, w, cfg.seed,
                              cfg.auditSamples, cfg.minorTolerance));
    push(auditTotalPositivity(atb, "atb", cfg.auditMinorSize, w, cfg.seed,
                              cfg.auditSamples, cfg.minorTolerance));
    const auto hp = hCoefficients<S>(cfg.params, Side::plus, w);
    const auto hm = hCoefficients<S>(cfg.params, Side::minus, w);
    push(auditTotalPositivity(toeplitzFromSeries(hp, w), "toeplitzH.plus",
                              cfg.auditMinorSize, w, cfg.seed,
                              cfg.auditSamples, cfg.minorTolerance));
    push(auditTotalPositivity(toeplitzFromSeries(hm, w), "toeplitzH.minus",
                              cfg.auditMinorSize, w, cfg.seed,
                              cfg.auditSamples, cfg.minorTolerance));
  };

  if (exact) {
    runAudits(Rat());
  } else {
    runAudits(double());
    if (cfg.rationalMode)
      res["note"] =
          "rational scalars need gamma = 0 on both sides; ran float audits";
  }
  res["scalar"] = exact ? "rational" : "float";
  res["audits"] = std::move(audits);
  res["minMinorValue"] = minMin;

  return finishSuite(cfg, "tpAudit", std::move(res),
                     allOk ? "pass" : "fail", sw, {});
}

const std::vector<std::string>& suiteNames() {
  static const std::vector<std::string> names = {
      "theorem1", "theorem3", "theorem4", "lemma6", "tpAudit"};
  return names;
}

std::vector<SuiteResult> runSuites(const RunConfig& cfg,
                                   const std::string& name, bool parallel) {
  validateCaps(cfg);
  std::vector<std::string> todo;
  if (name == "all") {
    todo = suiteNames();
  } else {
    bool known = false;
    for (const auto& s : suiteNames()) known = known || s == name;
    if (!known) {
      std::string choices;
      for (const auto& s : suiteNames()) {
        if (!choices.empty()) choices += ", ";
        choices += s;
      }
      throw ConfigError("unknown suite '" + name + "' (available: " +
                        choices + ", all)");
    }
    todo.push_back(name);
  }

  auto runOne = [&cfg](const std::string& s) {
    if (s == "theorem1") return runTheorem1Suite(cfg);
    if (s == "theorem3") return runTheorem3Suite(cfg);
    if (s == "theorem4") return runTheorem4Suite(cfg);
    if (s == "lemma6") return runLemma6Suite(cfg);
    return runTpAuditSuite(cfg);
  };

  std::vector<SuiteResult> results;
  if (parallel && todo.size() > 1) {
    std::vector<std::future<SuiteResult>> futures;
    futures.reserve(todo.size());
    for (const auto& s : todo)
      futures.push_back(std::async(std::launch::async, runOne, s));
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (const auto& s : todo) results.push_back(runOne(s));
  }
  return results;
}

}  // namespace tpk
