#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "mazu/connectivity.hpp"
#include "mazu/raster.hpp"

namespace mazu {

/// Lattice over a window where every cell is free; compact sets are cell
/// masks over it and the outside of the window is one extra node.
Raster labLattice(const BBox& window, double h);

/// Closed planar shapes rasterized to the cells whose centers lie within
/// 0.75 h of the shape (curves) or inside it (filled shapes).
struct LabShape {
  enum class Kind { kDisk, kAnnulus, kArc, kSegment, kPoint };
  Kind kind = Kind::kDisk;
  Point a;             // center, or segment start
  Point b;             // segment end
  double r0 = 0.0;     // radius (disk, arc) or inner radius (annulus)
  double r1 = 0.0;     // outer radius (annulus)
  double t0 = 0.0;     // arc start angle
  double t1 = 0.0;     // arc end angle (counterclockwise from t0)
  double width = 0.0;  // extra thickness added around curves
  nlohmann::json toJson() const;
};

CellMask rasterizeShapes(const Raster& lattice, const std::vector<LabShape>& shapes);

/// Components of a cell set under 8-adjacency (26 in 3D).
int setComponentCount(const Raster& lattice, const CellMask& set);

/// Whether some cells of a and b lie within tau * h of each other.
bool withinReach(const Raster& lattice, const CellMask& a, const CellMask& b, double tau);

enum class SepOutcome { kConclusionHolds, kHypothesisViolated, kCounterexample };
const char* sepOutcomeName(SepOutcome o);

struct SepResult {
  SepOutcome outcome = SepOutcome::kConclusionHolds;
  std::string detail;
};

struct UnionResult {
  bool preconditionsMet = false;
  bool connected = false;
  int components = 0;
  std::string detail;
};

/// Union of a connected E0 with connected sets each reaching E0 within
/// tau * h; preconditions are reported, not asserted.
UnionResult unionConnected(const Raster& lattice, const CellMask& e0, const std::vector<CellMask>& others,
                           double tau = 1.5);

/// Throws QueryInObstacle when x or y lies in one of the sets.
SepResult janiszewskiCheck(const Raster& lattice, const CellMask& f1, const CellMask& f2, Point x, Point y);
SepResult countableUnionSeparation(const Raster& lattice, const CellMask& t, const std::vector<CellMask>& ks, Point x,
                                   Point y, double tau = 1.5);
SepResult nestedSeparation(const Raster& lattice, const std::vector<CellMask>& chain, Point x, Point y);

/// Randomized suites: "janiszewski", "countable", "nested", "union".
struct SuiteOptions {
  int count = 200;         // instances whose hypotheses hold
  unsigned seed = 7;
  double h = 1.0 / 128;
  double minSeparation = 4.0;  // in units of h
  int maxAttempts = 20000;
  int maxSets = 8;         // K_j for "countable", levels for "nested" (capped at 6)
};

struct SuiteReport {
  std::string suite;
  int attempts = 0;
  int satisfying = 0;  // hypotheses hold
  int conclusionHolds = 0;
  int hypothesisViolated = 0;
  int counterexamples = 0;
  nlohmann::json failures = nlohmann::json::array();
  double seconds = 0.0;
  bool pass() const;
  nlohmann::json toJson() const;
};

SuiteReport runSeparationSuite(const std::string& suite, const SuiteOptions& opts = {});
std::vector<std::string> separationSuites();

}  // namespace mazu
