#pragma once

// Run configuration: symbol parameters plus every knob the suites read.
// Configs come from JSON files (strict: unknown keys are rejected, the six
// parameter fields are required) or from the named presets, with CLI flags
// applied on top.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tpk/series.hpp"
#include "tpk/tolerances.hpp"

namespace tpk {

using Json = nlohmann::ordered_json;

struct RunConfig {
  SymbolParams params;

  int seriesOrder = 64;      // coefficient dumps and Z series
  int matrixOrder = 32;      // operator/kernel truncation N
  int enumerationCap = 40;   // brute-force partition size cap
  std::vector<int> tailStarts = {0, 1, 2, 3, 4, 5};
  int pointWindow = 4;       // correlation points drawn from [-w, w]
  std::vector<int> sweepSchedule = {8, 16, 32, 64};
  bool rationalMode = false;
  std::uint64_t seed = 42;
  std::string outDir = "reports";

  int lemma6TrialCount = 20;
  int lemma6M = 3;
  int lemma6N = 3;
  int auditWindow = 12;
  int auditMinorSize = 4;
  int auditSamples = 200;

  double imagTolerance = tol::kImag;
  double edgeTolerance = tol::kEdge;
  double directBlocksTolerance = tol::kDirectVsBlocks;
  double crossRouteTolerance = tol::kCrossRoute;
  double convergenceTolerance = tol::kConvergence;
  double correlationTolerance = tol::kCorrelation;
  double minorTolerance = tol::kMinorFloat;
  double spectrumMatchTolerance = tol::kSpectrumMatch;
  double zRelTolerance = tol::kZRelative;

  std::string presetName;  // echo only; empty for file configs
};

// Strict parse: unknown keys throw ConfigError naming the key; the six
// parameter fields (alphaPlus, betaPlus, alphaMinus, betaMinus, gammaPlus,
// gammaMinus) are required; numbers may be given as JSON numbers or as
// strings like "2/5".
RunConfig configFromJson(const Json& j);
RunConfig configFromFile(const std::string& path);

// Full echo, parameters rendered as canonical fraction strings.
Json configToJson(const RunConfig& cfg);

// Resource-limit enforcement; throws ResourceError.
void validateCaps(const RunConfig& cfg);

}  // namespace tpk
