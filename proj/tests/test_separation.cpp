#include "doctest.h"

#include <cmath>
#include <numbers>

#include "mazu/connectivity.hpp"
#include "mazu/error.hpp"
#include "mazu/separation.hpp"

using namespace mazu;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kH = 1.0 / 64;

Raster lab() { return labLattice({{-1, -1}, {1, 1}}, kH); }

LabShape disk(Point c, double r) {
  LabShape s;
  s.kind = LabShape::Kind::kDisk;
  s.a = c;
  s.r0 = r;
  return s;
}

LabShape arc(Point c, double r, double t0, double t1, double width = 0.0) {
  LabShape s;
  s.kind = LabShape::Kind::kArc;
  s.a = c;
  s.r0 = r;
  s.t0 = t0;
  s.t1 = t1;
  s.width = width;
  return s;
}

LabShape annulus(Point c, double r0, double r1) {
  LabShape s;
  s.kind = LabShape::Kind::kAnnulus;
  s.a = c;
  s.r0 = r0;
  s.r1 = r1;
  return s;
}

LabShape segment(Point a, Point b) {
  LabShape s;
  s.kind = LabShape::Kind::kSegment;
  s.a = a;
  s.b = b;
  return s;
}

CellMask raster(const Raster& g, std::vector<LabShape> shapes) { return rasterizeShapes(g, shapes); }

const Point kCenter{0, 0};
const Point kFar{0.95, 0.95};

}  // namespace

TEST_CASE("the empty set separates nothing") {
  Raster g = lab();
  CellMask none(g.cellCount(), 0);
  CHECK_FALSE(separates(g, none, g.locate(kCenter), g.locate(kFar)));
  auto r = janiszewskiCheck(g, none, none, kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kConclusionHolds);
}

TEST_CASE("a closed circle separates its center from the outside, an open arc does not") {
  Raster g = lab();
  CHECK(separates(g, raster(g, {arc(kCenter, 0.5, 0, 2 * kPi)}), g.locate(kCenter), g.locate(kFar)));
  CHECK_FALSE(separates(g, raster(g, {arc(kCenter, 0.5, 0.3, 2 * kPi - 0.3)}), g.locate(kCenter), g.locate(kFar)));
}

TEST_CASE("component counts use diagonal adjacency") {
  Raster g = lab();
  CHECK(setComponentCount(g, raster(g, {disk({-0.5, 0}, 0.1), disk({0.5, 0}, 0.1)})) == 2);
  CHECK(setComponentCount(g, raster(g, {segment({-0.5, -0.5}, {0.5, 0.5})})) == 1);
}

TEST_CASE("janiszewski: half annuli with connected overlap do not separate") {
  Raster g = lab();
  CellMask f1 = raster(g, {arc(kCenter, 0.5, 0, kPi + 0.5, kH)});
  CellMask f2 = raster(g, {arc(kCenter, 0.5, kPi, 2 * kPi - 0.5, kH)});
  auto r = janiszewskiCheck(g, f1, f2, kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kConclusionHolds);
}

TEST_CASE("janiszewski: complementary arcs meet in two pieces and their union separates") {
  Raster g = lab();
  CellMask f1 = raster(g, {arc(kCenter, 0.5, 0, kPi)});
  CellMask f2 = raster(g, {arc(kCenter, 0.5, kPi, 2 * kPi)});
  auto r = janiszewskiCheck(g, f1, f2, kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kHypothesisViolated);
  CellMask both(f1.size());
  for (std::size_t i = 0; i < both.size(); ++i) both[i] = f1[i] | f2[i];
  CHECK(separates(g, both, g.locate(kCenter), g.locate(kFar)));
}

TEST_CASE("janiszewski: empty F1") {
  Raster g = lab();
  CellMask none(g.cellCount(), 0);
  auto r = janiszewskiCheck(g, none, raster(g, {arc(kCenter, 0.5, 0, kPi)}), kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kConclusionHolds);
}

TEST_CASE("query points inside a set are rejected") {
  Raster g = lab();
  CellMask d = raster(g, {disk(kCenter, 0.2)});
  try {
    janiszewskiCheck(g, d, d, kCenter, kFar);
    FAIL("expected QueryInObstacle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kQueryInObstacle);
  }
}

TEST_CASE("countable union: harmless disks beside a bar") {
  Raster g = lab();
  CellMask t = raster(g, {segment({-0.7, -0.6}, {-0.7, 0.6})});
  std::vector<CellMask> ks;
  for (int j = 0; j < 6; ++j) ks.push_back(raster(g, {disk({0.4, -0.75 + 0.3 * j}, 0.08)}));
  auto r = countableUnionSeparation(g, t, ks, kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kConclusionHolds);
  CHECK(countableUnionSeparation(g, t, {}, kCenter, kFar).outcome == SepOutcome::kConclusionHolds);
}

TEST_CASE("countable union: a member that encircles x violates the hypothesis") {
  Raster g = lab();
  CellMask t = raster(g, {LabShape{LabShape::Kind::kPoint, {-0.8, -0.8}, {}, 0, 0, 0, 0, 0}});
  std::vector<CellMask> ks{raster(g, {arc(kCenter, 0.3, 0, 2 * kPi)}), raster(g, {arc(kCenter, 0.6, 0.5, 2.5)})};
  auto r = countableUnionSeparation(g, t, ks, kCenter, kFar);
  CHECK(r.outcome == SepOutcome::kHypothesisViolated);
}

TEST_CASE("nested separators keep separating") {
  Raster g = lab();
  std::vector<CellMask> chain{raster(g, {annulus(kCenter, 0.3, 0.7)}), raster(g, {annulus(kCenter, 0.4, 0.6)}),
                              raster(g, {annulus(kCenter, 0.45, 0.55)}), raster(g, {arc(kCenter, 0.5, 0, 2 * kPi)})};
  CHECK(nestedSeparation(g, chain, kCenter, kFar).outcome == SepOutcome::kConclusionHolds);
  std::vector<CellMask> same(3, chain[1]);
  CHECK(nestedSeparation(g, same, kCenter, kFar).outcome == SepOutcome::kConclusionHolds);
  std::vector<CellMask> broken{chain[0], raster(g, {arc(kCenter, 0.5, 0.2, 2 * kPi - 0.2)})};
  CHECK(nestedSeparation(g, broken, kCenter, kFar).outcome == SepOutcome::kHypothesisViolated);
}

TEST_CASE("union of a disk with touching segments") {
  Raster g = lab();
  CellMask e0 = raster(g, {disk(kCenter, 0.2)});
  std::vector<CellMask> spokes;
  for (int i = 0; i < 4; ++i) {
    double t = i * kPi / 2;
    spokes.push_back(raster(g, {segment({0.2 * std::cos(t), 0.2 * std::sin(t)}, {0.8 * std::cos(t), 0.8 * std::sin(t)})}));
  }
  UnionResult ok = unionConnected(g, e0, spokes);
  CHECK(ok.preconditionsMet);
  CHECK(ok.connected);
  CHECK(ok.components == 1);

  spokes.push_back(raster(g, {segment({0.3, 0.3}, {0.6, 0.6})}));
  UnionResult gap = unionConnected(g, e0, spokes);
  CHECK_FALSE(gap.preconditionsMet);
  CHECK_FALSE(gap.connected);
  CHECK(gap.components == 2);
}

TEST_CASE("randomized suites find no counterexamples") {
  for (const auto& name : separationSuites()) {
    CAPTURE(name);
    SuiteOptions opts;
    opts.count = 25;
    SuiteReport r = runSeparationSuite(name, opts);
    CHECK(r.satisfying == 25);
    CHECK(r.counterexamples == 0);
    CHECK(r.pass());
  }
  CHECK_THROWS_AS(runSeparationSuite("no-such-suite"), Error);
}
