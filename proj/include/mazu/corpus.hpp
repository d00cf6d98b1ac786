#pragma once

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mazu/classifier.hpp"
#include "mazu/domain.hpp"

namespace mazu {

enum class Expected { kTrue, kFalse, kNotMachineCheckable };

/// One expected flag at a probe point. `key` selects the check:
///   finitelyConnected, locallyAccessible, omegaLocallyConnected,
///   omegaUnionX0LocallyConnected, boundaryLocallyConnected,
///   boundaryImKleinen, complementLocallyConnected, complementImKleinen
///   (boolean, compared with the aggregate flags);
///   nConnected (classification NConnected(n));
///   nAllScales (N equals n at every ladder scale);
///   locallyConnectedOr2Connected (disjunction);
///   boundaryPathImKleinen, complementPathImKleinen (never machine-checkable).
struct Expectation {
  std::string key;
  Expected value = Expected::kTrue;
  int n = 0;
  std::string claim;  // what the expectation asserts, in words
};

struct ProbePoint {
  std::string label;
  Point x0;
  double r0 = 0.25;
  int kMax = 3;
  std::vector<Expectation> expectations;
};

struct CorpusEntry {
  std::string name;
  int dim = 2;
  std::string description;
  std::string truncation;  // how infinite families are cut off per spacing h
  SpecFactory factory;
  double hRatio = 256.0;  // acceptance spacing h = r / hRatio
  double referenceH = 1.0 / 1024;  // spacing used for the pinned fixture
  std::vector<ProbePoint> probes;
};

std::vector<std::string> exampleNames();
std::vector<std::string> exampleNames2d();
std::vector<std::string> exampleNames3d();

/// Throws UnknownExample for names outside the registry.
CorpusEntry buildExample(const std::string& name);

struct ExpectationResult {
  Expectation expectation;
  std::string observed;
  bool checked = false;
  bool pass = true;
};

struct ProbeResult {
  std::string entry;
  ProbePoint probe;
  std::vector<ExpectationResult> results;
  std::vector<int> nPerScale;
  std::string classification;
  std::vector<std::string> auditViolations;
  bool monotonicityChecked = false;
  bool monotonicityHolds = true;
  std::string error;  // set when the analysis threw
  double seconds = 0.0;
  nlohmann::json verdict;

  bool pass() const;
};

struct CorpusOptions {
  double hRatioOverride = 0.0;  // 0 keeps each entry's hRatio
  bool keepVerdicts = false;
  int threads = 0;  // 0: hardware concurrency capped by MAZU_THREADS
  AnalysisOptions analysis;
  std::function<void(const ProbeResult&)> progress;
};

struct CorpusReport {
  std::vector<ProbeResult> probes;
  int mismatches = 0;
  int skipped = 0;
  int errors = 0;
  int auditViolations = 0;
  int monotonicityExceptions = 0;
  bool pass() const { return mismatches == 0 && errors == 0; }
  nlohmann::json toJson() const;
};

/// Hardware concurrency, capped by the MAZU_THREADS environment variable.
int defaultThreads();

ProbeResult runProbe(const CorpusEntry& entry, const ProbePoint& probe, const CorpusOptions& opts = {});
/// Probes run in parallel; results keep registry order.
CorpusReport runCorpus(const std::vector<std::string>& names, const CorpusOptions& opts = {});

/// Evaluates one expectation against a verdict.
ExpectationResult checkExpectation(const Expectation& e, const BoundaryVerdict& v);

const char* expectedName(Expected e);

}  // namespace mazu
