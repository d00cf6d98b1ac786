#pragma once

#include <vector>

#include "json.hpp"

#include "mazu/classifier.hpp"
#include "mazu/domain.hpp"
#include "mazu/raster.hpp"

namespace mazu {

/// Greedy epsilon-net under the radius bounds of d_M: for a net point p and a
/// cell c, lo = least over paths p -> c of the largest distance from p, and
/// hi = 2 lo. A cell is covered once lo <= eps for some net point, so after
/// saturation every cell lies within hi-bound 2 eps of the net and net points
/// are pairwise more than eps apart in lo.
struct EpsilonNet {
  double eps = 0.0;
  std::vector<CellId> points;
  bool saturated = false;
  nlohmann::json toJson(const Raster& raster) const;
};

/// Throws InvalidArgument unless eps > 2h. `budget` caps the net size; hitting
/// it returns an unsaturated net.
EpsilonNet epsilonNet(const Raster& raster, double eps, std::size_t budget = 100000);

struct NetProfile {
  std::vector<double> epsilons;           // descending
  std::vector<double> spacings;           // h per refinement, descending
  std::vector<std::vector<int>> netSizes;  // [eps][refinement]
  std::vector<std::vector<bool>> saturated;
  std::vector<bool> divergence;  // per eps: two successive refinements each grew >= 1.5x
  bool divergenceEvidence() const;
  nlohmann::json toJson() const;
};

struct NetPolicy {
  std::vector<double> spacings{1.0 / 64, 1.0 / 256, 1.0 / 1024};
  double growthFactor = 1.5;
  std::size_t budget = 100000;
};

/// Runs epsilonNet on the declared box of the domain at each spacing.
NetProfile totalBoundednessProfile(const SpecFactory& factory, const std::vector<double>& epsilons,
                                   const NetPolicy& policy = {});

struct FiberChain {
  std::vector<Point> representatives;  // coarsest scale first
  std::vector<int> components;         // component label per scale, -1 when unmatched
  std::vector<double> hopHi;           // d_M hi-bound between successive representatives
  bool cauchy = true;                  // hopHi[k] <= 2 r_k throughout
};

struct FiberReport {
  Point x0;
  std::vector<FiberChain> chains;
  std::vector<int> fiberOf;  // cluster index per chain
  int fiberCount = 0;
  std::vector<std::vector<double>> pairwiseDmLo;  // between chain representatives
  double threshold = 0.0;
  bool finitelyConnectedEvidence = true;
  std::string classification;
  nlohmann::json toJson() const;
};

struct FiberOptions {
  double thresholdFactor = 0.5;  // clusters split at thresholdFactor * r0
  bool strict = false;           // throw NotFinitelyConnected on contrary evidence
};

/// Approach chains over x0: every component of the finest ball that comes
/// within half its radius of x0, followed to coarser scales by inclusion and
/// clustered by d_M lower bounds.
FiberReport boundaryFibers(const BoundaryVerdict& verdict, const FiberOptions& opts = {});

struct PhiReport {
  std::vector<Point> images;  // one per fiber
  int distinctImages = 0;
  int pairsChecked = 0;
  int lipschitzViolations = 0;
  nlohmann::json toJson() const;
};

/// Maps every fiber to x0 and checks |a - b| <= d_M hi-bound on `samples`
/// random cell pairs of the coarsest ball raster.
PhiReport projectPhi(const FiberReport& report, const BoundaryVerdict& verdict, int samples = 100,
                     unsigned seed = 1);

}  // namespace mazu
