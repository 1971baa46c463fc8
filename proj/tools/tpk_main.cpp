#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpk/kernel.hpp"
#include "tpk/operators.hpp"
#include "tpk/presets.hpp"
#include "tpk/report.hpp"
#include "tpk/spectral.hpp"
#include "tpk/suites.hpp"

namespace {

struct CliState {
  std::string configPath;
  std::string preset;
  std::string scalar;
  std::string out;
  std::string suite = "all";
  int order = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool parallel = false;
};

void addCommonFlags(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.configPath, "JSON configuration file")
      ->check(CLI::ExistingFile);
  sub->add_option("--preset", st.preset, "built-in parameter set");
  sub->add_option("--order", st.order, "truncation order override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--scalar", st.scalar, "scalar mode")
      ->check(CLI::IsMember({"float", "rational"}));
  sub->add_option("--out", st.out, "output directory (default: reports)");
  sub->add_option("--seed", st.seed, "seed for sampled minor audits");
  sub->add_option("--tolerance", st.tolerance,
                  "headline tolerance override for the chosen command")
      ->check(CLI::PositiveNumber);
  sub->add_flag("--parallel", st.parallel,
                "run independent suites concurrently");
}

std::string joinPath(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

tpk::RunConfig buildConfig(const CliState& st, const CLI::App* active) {
  if (!st.configPath.empty() && !st.preset.empty())
    throw tpk::ConfigError("--config and --preset are mutually exclusive");
  tpk::RunConfig cfg =
      !st.configPath.empty()
          ? tpk::configFromFile(st.configPath)
          : tpk::presetConfig(st.preset.empty() ? "geometric" : st.preset);
  if (active->count("--order") > 0) {
    cfg.matrixOrder = st.order;
    cfg.seriesOrder = std::max(cfg.seriesOrder, st.order);
    // Tail starts beyond the new truncation no longer index anything.
    std::vector<int> kept;
    for (int s : cfg.tailStarts)
      if (s < cfg.matrixOrder) kept.push_back(s);
    if (kept.empty()) kept.push_back(0);
    cfg.tailStarts = std::move(kept);
  }
  if (active->count("--scalar") > 0) cfg.rationalMode = st.scalar == "rational";
  if (active->count("--seed") > 0) cfg.seed = st.seed;
  if (active->count("--out") > 0) cfg.outDir = st.out;
  return cfg;
}

void applyRunTolerance(tpk::RunConfig& cfg, const std::string& suite,
                       double tolerance) {
  const bool all = suite == "all";
  if (all || suite == "theorem1") cfg.crossRouteTolerance = tolerance;
  if (all || suite == "theorem3") cfg.correlationTolerance = tolerance;
  if (all || suite == "theorem4") {
    cfg.imagTolerance = tolerance;
    cfg.edgeTolerance = tolerance;
  }
  if (all || suite == "tpAudit") cfg.minorTolerance = tolerance;
  // lemma6 is exact; there is nothing for a float tolerance to loosen.
}

int cmdRun(const CliState& st, const CLI::App* active) {
  tpk::RunConfig cfg = buildConfig(st, active);
  if (active->count("--tolerance") > 0)
    applyRunTolerance(cfg, st.suite, st.tolerance);
  const auto results = tpk::runSuites(cfg, st.suite, st.parallel);
  tpk::ensureDirectory(cfg.outDir);
  bool allPass = true;
  for (const auto& r : results) {
    allPass = allPass && r.pass;
    const std::string reportPath = joinPath(cfg.outDir, r.name + ".report.json");
    tpk::writeTextFile(reportPath, r.report.dump(2) + "\n");
    for (const auto& [file, content] : r.artifacts)
      tpk::writeTextFile(joinPath(cfg.outDir, file), content);
    std::cout << r.name << ": " << r.verdict << "  (" << reportPath << ")\n";
  }
  return allPass ? 0 : 1;
}

int cmdPresets() {
  tpk::Json arr = tpk::Json::array();
  for (const auto& p : tpk::presetCatalog()) {
    tpk::Json j;
    j["name"] = p.name;
    j["note"] = p.note;
    j["parameters"] = tpk::configToJson(p.config);
    arr.push_back(std::move(j));
  }
  std::cout << arr.dump(2) << "\n";
  return 0;
}

template <class S>
tpk::Json seriesToJson(const tpk::TruncatedSeries<S>& s) {
  tpk::Json arr = tpk::Json::array();
  for (int k = 0; k <= s.order(); ++k) {
    if constexpr (tpk::isExactScalar<S>)
      arr.push_back(tpk::ratToString(s[k]));
    else
      arr.push_back(s[k]);
  }
  return arr;
}

int cmdCoeffs(const CliState& st, const CLI::App* active) {
  tpk::RunConfig cfg = buildConfig(st, active);
  const int order =
      active->count("--order") > 0 ? st.order : cfg.seriesOrder;
  if (order < 1 || order > 4096)
    throw tpk::ConfigError("series order must be in [1, 4096]");
  if (cfg.rationalMode && !cfg.params.exactCompatible())
    throw tpk::ConfigError(
        "rational coefficients need gamma = 0 on both sides");

  tpk::Json j;
  j["schemaVersion"] = 1;
  j["subject"] = "coefficients";
  j["order"] = order;
  j["scalar"] = cfg.rationalMode ? "rational" : "float";
  if (cfg.rationalMode) {
    j["hPlus"] = seriesToJson(
        tpk::hCoefficients<tpk::Rat>(cfg.params, tpk::Side::plus, order));
    j["hMinus"] = seriesToJson(
        tpk::hCoefficients<tpk::Rat>(cfg.params, tpk::Side::minus, order));
    j["ePlus"] = seriesToJson(
        tpk::eCoefficients<tpk::Rat>(cfg.params, tpk::Side::plus, order));
    j["eMinus"] = seriesToJson(
        tpk::eCoefficients<tpk::Rat>(cfg.params, tpk::Side::minus, order));
  } else {
    j["hPlus"] = seriesToJson(
        tpk::hCoefficients<double>(cfg.params, tpk::Side::plus, order));
    j["hMinus"] = seriesToJson(
        tpk::hCoefficients<double>(cfg.params, tpk::Side::minus, order));
    j["ePlus"] = seriesToJson(
        tpk::eCoefficients<double>(cfg.params, tpk::Side::plus, order));
    j["eMinus"] = seriesToJson(
        tpk::eCoefficients<double>(cfg.params, tpk::Side::minus, order));
  }

  // The two-sided ratio coefficients are diagnostics; float is fine.
  const int reach = std::min(order, 256);
  const auto w = tpk::ratioWindow<double>(cfg.params, -reach, reach);
  tpk::Json ratio;
  ratio["lo"] = -reach;
  ratio["hi"] = reach;
  ratio["internalOrder"] = w.internalOrder;
  tpk::Json rArr = tpk::Json::array(), psiArr = tpk::Json::array();
  for (int k = -reach; k <= reach; ++k) {
    rArr.push_back(w.ratioAt(k));
    psiArr.push_back(w.dualAt(k));
  }
  ratio["r"] = std::move(rArr);
  ratio["psi"] = std::move(psiArr);
  j["ratio"] = std::move(ratio);

  tpk::ensureDirectory(cfg.outDir);
  const std::string path = joinPath(cfg.outDir, "coeffs.report.json");
  tpk::writeTextFile(path, j.dump(2) + "\n");
  std::cout << "coeffs: wrote " << path << "\n";
  return 0;
}

int cmdKernel(const CliState& st, const CLI::App* active) {
  tpk::RunConfig cfg = buildConfig(st, active);
  const int n = cfg.matrixOrder;
  tpk::Json j;
  j["schemaVersion"] = 1;
  j["subject"] = "kernel";
  j["order"] = n;
  tpk::ensureDirectory(cfg.outDir);
  std::vector<std::pair<std::string, std::string>> files;
  if (cfg.rationalMode) {
    if (!cfg.params.exactCompatible())
      throw tpk::ConfigError(
          "rational kernel needs gamma = 0 on both sides");
    const auto a = tpk::buildA<tpk::Rat>(cfg.params, n);
    const auto b = tpk::buildB<tpk::Rat>(cfg.params, n);
    const auto bundle = tpk::kernelDirect(tpk::buildL(a, b));
    j["scalar"] = "rational";
    j["route"] = tpk::routeName(bundle.route);
    j["detOnePlusL"] = tpk::ratToString(bundle.detOnePlusL);
    files.emplace_back("kernel.k11.matrix.csv", tpk::matrixCsv(bundle.k11));
    files.emplace_back("kernel.k12.matrix.csv", tpk::matrixCsv(bundle.k12));
    files.emplace_back("kernel.k21.matrix.csv", tpk::matrixCsv(bundle.k21));
    files.emplace_back("kernel.k22.matrix.csv", tpk::matrixCsv(bundle.k22));
  } else {
    const auto bundle = tpk::kernelSeries<double>(cfg.params, n);
    j["scalar"] = "float";
    j["route"] = tpk::routeName(bundle.route);
    files.emplace_back("kernel.k11.matrix.csv", tpk::matrixCsv(bundle.k11));
    files.emplace_back("kernel.k12.matrix.csv", tpk::matrixCsv(bundle.k12));
    files.emplace_back("kernel.k21.matrix.csv", tpk::matrixCsv(bundle.k21));
    files.emplace_back("kernel.k22.matrix.csv", tpk::matrixCsv(bundle.k22));
  }
  tpk::Json written = tpk::Json::array();
  for (const auto& [file, content] : files) {
    const std::string path = joinPath(cfg.outDir, file);
    tpk::writeTextFile(path, content);
    written.push_back(file);
  }
  j["files"] = std::move(written);
  const std::string path = joinPath(cfg.outDir, "kernel.report.json");
  tpk::writeTextFile(path, j.dump(2) + "\n");
  std::cout << "kernel: wrote " << path << "\n";
  return 0;
}

int cmdSpectrum(const CliState& st, const CLI::App* active) {
  tpk::RunConfig cfg = buildConfig(st, active);
  if (active->count("--tolerance") > 0) {
    cfg.imagTolerance = st.tolerance;
    cfg.edgeTolerance = st.tolerance;
  }
  const int n = cfg.matrixOrder;
  const int start = cfg.tailStarts.front();
  const auto bundle = tpk::kernelSeries<double>(cfg.params, n);
  auto rep = tpk::spectrumVerdict(tpk::projectTail(bundle.k11, start),
                                  "k11.n" + std::to_string(start),
                                  cfg.imagTolerance, cfg.edgeTolerance);
  rep.tailStart = start;

  tpk::Json j;
  j["schemaVersion"] = 1;
  j["subject"] = "spectrum";
  j["order"] = n;
  j["tag"] = rep.operatorTag;
  j["tailStart"] = start;
  j["maxImagAbs"] = rep.maxImagAbs;
  j["minReal"] = rep.minReal;
  j["maxReal"] = rep.maxReal;
  j["nearOneCount"] = rep.nearOneCount;
  j["imagTolerance"] = rep.imagTolerance;
  j["edgeTolerance"] = rep.edgeTolerance;
  j["eigenvalues"] = tpk::complexListToJson(rep.eigenvalues);
  j["verdict"] = tpk::verdictName(rep.verdict);

  tpk::ensureDirectory(cfg.outDir);
  const std::string csvPath =
      joinPath(cfg.outDir, rep.operatorTag + ".eigenvalues.csv");
  tpk::writeTextFile(csvPath, tpk::eigenvaluesCsv(rep.eigenvalues));
  const std::string path = joinPath(cfg.outDir, "spectrum.report.json");
  tpk::writeTextFile(path, j.dump(2) + "\n");
  std::cout << "spectrum: " << tpk::verdictName(rep.verdict) << "  (" << path
            << ")\n";
  return rep.verdict == tpk::Verdict::pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tool for totally positive symbol kernels"};
  app.require_subcommand(1);
  CliState st;

  auto* runCmd = app.add_subcommand("run", "run verification suites");
  {
    std::vector<std::string> choices = tpk::suiteNames();
    choices.push_back("all");
    runCmd->add_option("suite", st.suite, "suite name or 'all'")
        ->check(CLI::IsMember(choices));
  }
  addCommonFlags(runCmd, st);

  app.add_subcommand("presets", "list built-in parameter sets");

  auto* coeffsCmd =
      app.add_subcommand("coeffs", "dump series coefficients");
  addCommonFlags(coeffsCmd, st);

  auto* kernelCmd = app.add_subcommand("kernel", "dump kernel blocks");
  addCommonFlags(kernelCmd, st);

  auto* spectrumCmd =
      app.add_subcommand("spectrum", "dump a spectrum report");
  addCommonFlags(spectrumCmd, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("presets")) return cmdPresets();
    if (app.got_subcommand(runCmd)) return cmdRun(st, runCmd);
    if (app.got_subcommand(coeffsCmd)) return cmdCoeffs(st, coeffsCmd);
    if (app.got_subcommand(kernelCmd)) return cmdKernel(st, kernelCmd);
    if (app.got_subcommand(spectrumCmd)) return cmdSpectrum(st, spectrumCmd);
    std::cerr << "no command given\n";
    return 2;
  } catch (const tpk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const tpk::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
