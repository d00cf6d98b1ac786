#include "doctest.h"

#include <cmath>

#include "mazu/completion.hpp"
#include "mazu/corpus.hpp"
#include "mazu/error.hpp"

using namespace mazu;

namespace {

Raster squareRaster(double h) {
  DomainSpec spec = buildExample("unit-square").factory(h);
  return rasterize(spec, spec.defaultWindow(), h);
}

BoundaryVerdict verdict(const char* name, Point x0, double r0, double hRatio = 64) {
  LadderPolicy policy;
  policy.hRatio = hRatio;
  return classifyPoint(buildExample(name).factory, x0, r0, 3, policy);
}

}  // namespace

TEST_CASE("nets need eps above two cells") {
  Raster r = squareRaster(1.0 / 32);
  try {
    epsilonNet(r, 1.0 / 32, 100);
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("square net covers and packs in the Euclidean oracle") {
  const double h = 1.0 / 64, eps = 0.25;
  Raster r = squareRaster(h);
  EpsilonNet net = epsilonNet(r, eps);
  REQUIRE(net.saturated);
  // In a convex domain the radius bound from p is the Euclidean distance.
  for (CellId c : r.domainCells()) {
    double best = INFINITY;
    for (CellId p : net.points) best = std::min(best, dist(r.center(c), r.center(p)));
    CHECK(best <= eps + 1e-12);
  }
  for (std::size_t i = 0; i < net.points.size(); ++i)
    for (std::size_t j = i + 1; j < net.points.size(); ++j)
      CHECK(dist(r.center(net.points[i]), r.center(net.points[j])) > eps);
}

TEST_CASE("net budget leaves the net unsaturated") {
  EpsilonNet net = epsilonNet(squareRaster(1.0 / 64), 0.1, 3);
  CHECK(net.points.size() == 3);
  CHECK_FALSE(net.saturated);
}

TEST_CASE("square profile stays bounded") {
  NetPolicy policy;
  policy.spacings = {1.0 / 32, 1.0 / 64, 1.0 / 128};
  NetProfile p = totalBoundednessProfile(buildExample("unit-square").factory, {0.4, 0.2}, policy);
  CHECK_FALSE(p.divergenceEvidence());
  for (const auto& row : p.netSizes)
    for (int n : row) CHECK(std::abs(n - row.front()) <= 0.1 * row.front());
}

TEST_CASE("slit interior point has two separated fibers with one image") {
  BoundaryVerdict v = verdict("slit-disc", {-0.5, 0}, 0.4);
  FiberReport f = boundaryFibers(v);
  CHECK(f.fiberCount == 2);
  for (const auto& chain : f.chains) CHECK(chain.cauchy);
  for (std::size_t i = 0; i < f.chains.size(); ++i)
    for (std::size_t j = i + 1; j < f.chains.size(); ++j)
      if (f.fiberOf[i] != f.fiberOf[j]) CHECK(f.pairwiseDmLo[i][j] >= 0.4);
  PhiReport phi = projectPhi(f, v);
  CHECK(phi.distinctImages == 1);
  CHECK(phi.images.size() == 2);
  CHECK(phi.lipschitzViolations == 0);
  CHECK(phi.pairsChecked > 0);
}

TEST_CASE("corner and tip have one fiber") {
  CHECK(boundaryFibers(verdict("unit-square", {0, 0}, 0.2)).fiberCount == 1);
  CHECK(boundaryFibers(verdict("slit-disc", {0, 0}, 0.4)).fiberCount == 1);
}

TEST_CASE("comb-I fibers grow under refinement and strict mode refuses them") {
  int coarse = boundaryFibers(verdict("comb-I", {0, 0}, 0.3, 32)).fiberCount;
  BoundaryVerdict fineV = verdict("comb-I", {0, 0}, 0.3, 64);
  FiberReport fine = boundaryFibers(fineV);
  CHECK(fine.fiberCount > coarse);
  CHECK_FALSE(fine.finitelyConnectedEvidence);
  FiberOptions strict;
  strict.strict = true;
  try {
    boundaryFibers(fineV, strict);
    FAIL("expected NotFinitelyConnected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotFinitelyConnected);
  }
}
