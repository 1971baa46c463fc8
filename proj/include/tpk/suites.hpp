#pragma once

// Verification suites: each one packages a family of checks into a JSON
// report plus optional CSV artifacts.  Suites never write files themselves;
// the caller owns the output directory.

#include <string>
#include <utility>
#include <vector>

#include "tpk/config.hpp"

namespace tpk {

struct SuiteResult {
  std::string name;
  // "pass", "fail", or "inconclusive" (a convergence sweep that has not
  // settled by the end of its schedule is inconclusive, not failed).
  std::string verdict = "fail";
  bool pass = false;
  Json report;
  // (filename, content) pairs, e.g. ("theorem4.t.n0.eigenvalues.csv", ...).
  std::vector<std::pair<std::string, std::string>> artifacts;
};

// Route agreement for the kernel constructions, plus the normalization
// cross-check det(1+L) vs the series value of Z.
SuiteResult runTheorem1Suite(const RunConfig& cfg);

// Brute-force correlation sums against kernel determinants, total measure
// mass, and the mean point-count balance.
SuiteResult runTheorem3Suite(const RunConfig& cfg);

// Spectra of the tail-restricted kernels: reality, range, tail/kernel
// spectral agreement, and the truncation-convergence sweep.
SuiteResult runTheorem4Suite(const RunConfig& cfg);

// Corner-minor identities on random rational instances plus the structured
// instance drawn from the configured operators.
SuiteResult runLemma6Suite(const RunConfig& cfg);

// Total-positivity audits of the operator matrices and the Toeplitz
// coefficient matrices.
SuiteResult runTpAuditSuite(const RunConfig& cfg);

const std::vector<std::string>& suiteNames();

// name is one of suiteNames() or "all".  With parallel set, independent
// suites run concurrently; results come back in catalog order either way.
std::vector<SuiteResult> runSuites(const RunConfig& cfg,
                                   const std::string& name, bool parallel);

}  // namespace tpk
