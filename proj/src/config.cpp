#include "tpk/config.hpp"

#include <fstream>
#include <set>

#include "tpk/partition.hpp"
#include "tpk/spectral.hpp"

namespace tpk {

namespace {

Rat ratFromJson(const Json& v, const std::string& field) {
  if (v.is_string()) return ratFromString(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  if (v.is_number_float()) return ratFromDouble(v.get<double>());
  throw ConfigError("field '" + field + "' must be a number or a string");
}

std::vector<Rat> ratListFromJson(const Json& v, const std::string& field) {
  if (!v.is_array())
    throw ConfigError("field '" + field + "' must be an array");
  std::vector<Rat> out;
  for (const auto& item : v) out.push_back(ratFromJson(item, field));
  return out;
}

int intFromJson(const Json& v, const std::string& field) {
  if (!v.is_number_integer())
    throw ConfigError("field '" + field + "' must be an integer");
  return v.get<int>();
}

std::vector<int> intListFromJson(const Json& v, const std::string& field) {
  if (!v.is_array())
    throw ConfigError("field '" + field + "' must be an array");
  std::vector<int> out;
  for (const auto& item : v) out.push_back(intFromJson(item, field));
  return out;
}

double doubleFromJson(const Json& v, const std::string& field) {
  if (!v.is_number())
    throw ConfigError("field '" + field + "' must be a number");
  return v.get<double>();
}

}  // namespace

RunConfig configFromJson(const Json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  static const std::set<std::string> known = {
      "alphaPlus",        "betaPlus",
      "alphaMinus",       "betaMinus",
      "gammaPlus",        "gammaMinus",
      "seriesOrder",      "matrixOrder",
      "enumerationCap",   "tailStarts",
      "pointWindow",      "sweepSchedule",
      "scalar",           "seed",
      "outDir",           "lemma6Trials",
      "lemma6M",          "lemma6N",
      "auditWindow",      "auditMinorSize",
      "auditSamples",     "imagTolerance",
      "edgeTolerance",    "directBlocksTolerance",
      "crossRouteTolerance", "convergenceTolerance",
      "correlationTolerance", "minorTolerance",
      "spectrumMatchTolerance", "zRelTolerance"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (known.find(it.key()) == known.end())
      throw ConfigError("unknown config key '" + it.key() + "'");

  RunConfig cfg;
  for (const char* required :
       {"alphaPlus", "betaPlus", "alphaMinus", "betaMinus", "gammaPlus",
        "gammaMinus"})
    if (!j.contains(required))
      throw ConfigError(std::string("missing required field '") + required +
                        "'");

  cfg.params.alphaPlus = ratListFromJson(j.at("alphaPlus"), "alphaPlus");
  cfg.params.betaPlus = ratListFromJson(j.at("betaPlus"), "betaPlus");
  cfg.params.alphaMinus = ratListFromJson(j.at("alphaMinus"), "alphaMinus");
  cfg.params.betaMinus = ratListFromJson(j.at("betaMinus"), "betaMinus");
  cfg.params.gammaPlus = ratFromJson(j.at("gammaPlus"), "gammaPlus");
  cfg.params.gammaMinus = ratFromJson(j.at("gammaMinus"), "gammaMinus");
  try {
    cfg.params.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid symbol parameters: ") + e.what());
  }

  if (j.contains("seriesOrder"))
    cfg.seriesOrder = intFromJson(j.at("seriesOrder"), "seriesOrder");
  if (j.contains("matrixOrder"))
    cfg.matrixOrder = intFromJson(j.at("matrixOrder"), "matrixOrder");
  if (j.contains("enumerationCap"))
    cfg.enumerationCap = intFromJson(j.at("enumerationCap"), "enumerationCap");
  if (j.contains("tailStarts"))
    cfg.tailStarts = intListFromJson(j.at("tailStarts"), "tailStarts");
  if (j.contains("pointWindow"))
    cfg.pointWindow = intFromJson(j.at("pointWindow"), "pointWindow");
  if (j.contains("sweepSchedule"))
    cfg.sweepSchedule = intListFromJson(j.at("sweepSchedule"), "sweepSchedule");
  if (j.contains("scalar")) {
    const std::string mode = j.at("scalar").is_string()
                                 ? j.at("scalar").get<std::string>()
                                 : std::string();
    if (mode == "float")
      cfg.rationalMode = false;
    else if (mode == "rational")
      cfg.rationalMode = true;
    else
      throw ConfigError("field 'scalar' must be \"float\" or \"rational\"");
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
      throw ConfigError("field 'seed' must be a nonnegative integer");
    const auto s = j.at("seed").get<std::int64_t>();
    if (s < 0) throw ConfigError("field 'seed' must be a nonnegative integer");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("outDir")) {
    if (!j.at("outDir").is_string())
      throw ConfigError("field 'outDir' must be a string");
    cfg.outDir = j.at("outDir").get<std::string>();
  }
  if (j.contains("lemma6Trials"))
    cfg.lemma6TrialCount = intFromJson(j.at("lemma6Trials"), "lemma6Trials");
  if (j.contains("lemma6M")) cfg.lemma6M = intFromJson(j.at("lemma6M"), "lemma6M");
  if (j.contains("lemma6N")) cfg.lemma6N = intFromJson(j.at("lemma6N"), "lemma6N");
  if (j.contains("auditWindow"))
    cfg.auditWindow = intFromJson(j.at("auditWindow"), "auditWindow");
  if (j.contains("auditMinorSize"))
    cfg.auditMinorSize = intFromJson(j.at("auditMinorSize"), "auditMinorSize");
  if (j.contains("auditSamples"))
    cfg.auditSamples = intFromJson(j.at("auditSamples"), "auditSamples");

  auto tolerance = [&](const char* key, double& target) {
    if (j.contains(key)) {
      target = doubleFromJson(j.at(key), key);
      if (!(target > 0))
        throw ConfigError(std::string("field '") + key + "' must be > 0");
    }
  };
  tolerance("imagTolerance", cfg.imagTolerance);
  tolerance("edgeTolerance", cfg.edgeTolerance);
  tolerance("directBlocksTolerance", cfg.directBlocksTolerance);
  tolerance("crossRouteTolerance", cfg.crossRouteTolerance);
  tolerance("convergenceTolerance", cfg.convergenceTolerance);
  tolerance("correlationTolerance", cfg.correlationTolerance);
  tolerance("minorTolerance", cfg.minorTolerance);
  tolerance("spectrumMatchTolerance", cfg.spectrumMatchTolerance);
  tolerance("zRelTolerance", cfg.zRelTolerance);
  return cfg;
}

RunConfig configFromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse failure in " + path + ": " + e.what());
  }
  return configFromJson(j);
}

Json configToJson(const RunConfig& cfg) {
  auto ratList = [](const std::vector<Rat>& xs) {
    Json arr = Json::array();
    for (const Rat& x : xs) arr.push_back(ratToString(x));
    return arr;
  };
  Json j;
  j["alphaPlus"] = ratList(cfg.params.alphaPlus);
  j["betaPlus"] = ratList(cfg.params.betaPlus);
  j["alphaMinus"] = ratList(cfg.params.alphaMinus);
  j["betaMinus"] = ratList(cfg.params.betaMinus);
  j["gammaPlus"] = ratToString(cfg.params.gammaPlus);
  j["gammaMinus"] = ratToString(cfg.params.gammaMinus);
  j["seriesOrder"] = cfg.seriesOrder;
  j["matrixOrder"] = cfg.matrixOrder;
  j["enumerationCap"] = cfg.enumerationCap;
  j["tailStarts"] = cfg.tailStarts;
  j["pointWindow"] = cfg.pointWindow;
  j["sweepSchedule"] = cfg.sweepSchedule;
  j["scalar"] = cfg.rationalMode ? "rational" : "float";
  j["seed"] = cfg.seed;
  j["outDir"] = cfg.outDir;
  j["lemma6Trials"] = cfg.lemma6TrialCount;
  j["lemma6M"] = cfg.lemma6M;
  j["lemma6N"] = cfg.lemma6N;
  j["auditWindow"] = cfg.auditWindow;
  j["auditMinorSize"] = cfg.auditMinorSize;
  j["auditSamples"] = cfg.auditSamples;
  j["imagTolerance"] = cfg.imagTolerance;
  j["edgeTolerance"] = cfg.edgeTolerance;
  j["directBlocksTolerance"] = cfg.directBlocksTolerance;
  j["crossRouteTolerance"] = cfg.crossRouteTolerance;
  j["convergenceTolerance"] = cfg.convergenceTolerance;
  j["correlationTolerance"] = cfg.correlationTolerance;
  j["minorTolerance"] = cfg.minorTolerance;
  j["spectrumMatchTolerance"] = cfg.spectrumMatchTolerance;
  j["zRelTolerance"] = cfg.zRelTolerance;
  return j;
}

void validateCaps(const RunConfig& cfg) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ResourceError(what);
  };
  require(cfg.seriesOrder >= 1 && cfg.seriesOrder <= 4096,
          "seriesOrder must be in [1, 4096]");
  require(cfg.matrixOrder >= 1 && cfg.matrixOrder <= 256,
          "matrixOrder must be in [1, 256]");
  require(cfg.enumerationCap >= 0 &&
              cfg.enumerationCap <= kMaxEnumerationSize,
          "enumerationCap must be in [0, " +
              std::to_string(kMaxEnumerationSize) + "]");
  require(!cfg.tailStarts.empty(), "tailStarts must be nonempty");
  for (int n : cfg.tailStarts)
    require(n >= 0 && n < cfg.matrixOrder,
            "tailStarts entries must be in [0, matrixOrder)");
  require(cfg.pointWindow >= 0 && cfg.pointWindow <= 8,
          "pointWindow must be in [0, 8]");
  require(!cfg.sweepSchedule.empty(), "sweepSchedule must be nonempty");
  for (size_t i = 0; i < cfg.sweepSchedule.size(); ++i) {
    require(cfg.sweepSchedule[i] >= 1 && cfg.sweepSchedule[i] <= 256,
            "sweepSchedule entries must be in [1, 256]");
    require(i == 0 || cfg.sweepSchedule[i] > cfg.sweepSchedule[i - 1],
            "sweepSchedule must be strictly increasing");
  }
  require(cfg.lemma6TrialCount >= 0 && cfg.lemma6TrialCount <= 500,
          "lemma6Trials must be in [0, 500]");
  require(cfg.lemma6M >= 1 && cfg.lemma6M <= 6, "lemma6M must be in [1, 6]");
  require(cfg.lemma6N >= 1 && cfg.lemma6N <= 6, "lemma6N must be in [1, 6]");
  require(cfg.auditWindow >= 1 && cfg.auditWindow <= kMaxAuditWindow,
          "auditWindow must be in [1, " + std::to_string(kMaxAuditWindow) +
              "]");
  require(cfg.auditMinorSize >= 1 && cfg.auditMinorSize <= kMaxAuditMinorSize,
          "auditMinorSize must be in [1, " +
              std::to_string(kMaxAuditMinorSize) + "]");
  require(cfg.auditSamples >= 0 && cfg.auditSamples <= 10000,
          "auditSamples must be in [0, 10000]");
}

}  // namespace tpk
