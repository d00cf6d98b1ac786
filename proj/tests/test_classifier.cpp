#include "doctest.h"

#include <cmath>
#include <deque>

#include "mazu/classifier.hpp"
#include "mazu/completion.hpp"
#include "mazu/corpus.hpp"
#include "mazu/error.hpp"
#include "mazu/raster.hpp"

using namespace mazu;

namespace {

std::vector<int> nPerScale(const BoundaryVerdict& v) {
  std::vector<int> out;
  for (const auto& b : v.ladder.scales) out.push_back(b.N);
  return out;
}

BoundaryVerdict classifyExample(const std::string& name, Point x0, double r0 = 0.25, int kMax = 3) {
  return classifyPoint(buildExample(name).factory, x0, r0, kMax);
}

// Independent count of the components of B(x0, r) in the domain that come
// within two cells of x0, by BFS over linked cells.
int touchingComponents(const DomainSpec& spec, Point x0, double r, double h) {
  Raster ras = rasterize(spec, windowAround(x0, r, spec.dim), h);
  std::vector<int> seen(ras.cellCount(), 0);
  int count = 0;
  for (CellId c = 0; c < ras.cellCount(); ++c) {
    if (!ras.inside(c) || seen[c] || dist(ras.center(c), x0) >= r) continue;
    bool touches = false;
    std::deque<CellId> q{c};
    seen[c] = 1;
    while (!q.empty()) {
      CellId u = q.front();
      q.pop_front();
      touches = touches || dist(ras.center(u), x0) <= 2 * h;
      for (int a = 0; a < ras.dim(); ++a)
        for (int d : {-1, 1})
          if (ras.linked(u, a, d)) {
            CellId v = ras.step(u, a, d);
            if (!seen[v] && dist(ras.center(v), x0) < r) {
              seen[v] = 1;
              q.push_back(v);
            }
          }
    }
    count += touches;
  }
  return count;
}

}  // namespace

TEST_CASE("delta ladder halves down to the floor") {
  auto d = deltaLadder(1.0, 0.1);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 0.5);
  CHECK(d[2] == 0.125);
  CHECK(deltaLadder(1.0, 2.0).size() == 1);
}

TEST_CASE("square edge midpoint is 1-connected") {
  BoundaryVerdict v = classifyExample("unit-square", {0, 0.5});
  CHECK(v.classification.label() == "NConnected(1)");
  for (int n : nPerScale(v)) CHECK(n == 1);
  CHECK(v.auditViolations.empty());
  CHECK(v.aggregate.accessible == Tri::kTrue);
}

TEST_CASE("slit interior point is 2-connected and matches an independent flood fill") {
  BoundaryVerdict v = classifyExample("slit-disc", {-0.5, 0});
  CHECK(v.classification.kind == Classification::Kind::kNConnected);
  CHECK(v.classification.N == 2);
  for (const auto& b : v.ladder.scales) {
    CHECK(b.N == 2);
    CHECK(touchingComponents(buildExample("slit-disc").factory(b.h), {-0.5, 0}, b.r, b.h) == 2);
  }
  CHECK(v.auditViolations.empty());
}

TEST_CASE("slit tip is 1-connected") {
  BoundaryVerdict v = classifyExample("slit-disc", {0, 0});
  CHECK(v.classification.label() == "NConnected(1)");
}

TEST_CASE("comb-I base of the limit tooth: one component at every scale but not finitely connected") {
  BoundaryVerdict v = classifyExample("comb-I", {0, 0});
  for (int n : nPerScale(v)) CHECK(n == 1);
  CHECK(v.classification.kind == Classification::Kind::kNotFinitelyConnectedEvidence);
  CHECK(v.aggregate.finitelyConnected == Tri::kFalse);
  CHECK(v.auditViolations.empty());
}

TEST_CASE("interior points are rejected") {
  CHECK_THROWS_AS(classifyExample("slit-disc", {0.3, 0.3}), Error);
  try {
    classifyExample("slit-disc", {0.3, 0.3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotBoundary);
  }
}

TEST_CASE("analysis refuses coarse spacing") {
  DomainSpec spec = buildExample("unit-square").factory(1.0 / 256);
  try {
    analyzeBall(spec, {0, 0.5}, 0.25, 0.25 / 16);
    FAIL("expected ResolutionTooCoarse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResolutionTooCoarse);
  }
}

TEST_CASE("N never decreases under refinement at fixed radius") {
  DomainSpec spec = buildExample("slit-disc").factory(1.0 / 1024);
  int coarse = analyzeBall(spec, {-0.5, 0}, 0.25, 0.25 / 32).N;
  int fine = analyzeBall(spec, {-0.5, 0}, 0.25, 0.25 / 64).N;
  CHECK(fine >= coarse);
}

TEST_CASE("fiber count equals N on N-connected probes") {
  struct Probe {
    const char* name;
    Point x0;
    double r0;
  };
  for (Probe p : {Probe{"slit-disc", {-0.5, 0}, 0.4}, Probe{"slit-disc", {0, 0}, 0.4}, Probe{"unit-square", {0, 0}, 0.2},
                  Probe{"unit-square", {0, 0.5}, 0.25}}) {
    CAPTURE(p.name);
    BoundaryVerdict v = classifyExample(p.name, p.x0, p.r0);
    REQUIRE(v.classification.kind == Classification::Kind::kNConnected);
    FiberReport f = boundaryFibers(v);
    CHECK(f.fiberCount == v.classification.N);
  }
}

TEST_CASE("implication audit flags a contradicted implication") {
  BoundaryVerdict v = classifyExample("unit-square", {0, 0.5});
  REQUIRE(implicationAudit(v).empty());
  v.aggregate.finitelyConnected = Tri::kTrue;
  v.aggregate.accessible = Tri::kFalse;
  CHECK_FALSE(implicationAudit(v).empty());
}
