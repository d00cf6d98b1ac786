#include "doctest.h"

#include <cmath>
#include <deque>

#include "mazu/connectivity.hpp"
#include "mazu/raster.hpp"
#include "mazu/spec_io.hpp"

using namespace mazu;

namespace {

DomainSpec unitSquare() {
  DomainSpec s;
  s.name = "square";
  s.dim = 2;
  s.solid = CsgNode::box({0, 0}, {1, 1});
  s.declaredBox = {{0, 0}, {1, 1}};
  return s;
}

DomainSpec slitDisc() {
  DomainSpec s;
  s.name = "slit";
  s.dim = 2;
  s.solid = CsgNode::ball({0, 0}, 1.0);
  s.thin.push_back({SegmentObs{{-1, 0}, {0, 0}}, std::nullopt});
  s.declaredBox = {{-1, -1}, {1, 1}};
  return s;
}

// Independent flood fill: counts components by BFS over linked cells.
int floodCount(const Raster& r, const CellMask& mask) {
  std::vector<int> seen(r.cellCount(), 0);
  int count = 0;
  for (CellId c = 0; c < r.cellCount(); ++c) {
    if (!mask[c] || !r.inside(c) || seen[c]) continue;
    ++count;
    std::deque<CellId> q{c};
    seen[c] = 1;
    while (!q.empty()) {
      CellId u = q.front();
      q.pop_front();
      for (int a = 0; a < r.dim(); ++a)
        for (int d : {-1, 1})
          if (r.linked(u, a, d)) {
            CellId v = r.step(u, a, d);
            if (mask[v] && !seen[v]) {
              seen[v] = 1;
              q.push_back(v);
            }
          }
    }
  }
  return count;
}

}  // namespace

TEST_CASE("lattice centers avoid dyadic coordinates") {
  Raster r = rasterize(unitSquare(), {{0, 0}, {1, 1}}, 1.0 / 64);
  CHECK(r.size()[0] == 64);
  CHECK(r.size()[1] == 64);
  CHECK(r.center(0).x == doctest::Approx(1.0 / 128));
  CHECK(r.locate({0.5 + 1e-9, 0.25 + 1e-9}) == r.index(32, 16));
  CHECK(r.domainCells().size() == 64u * 64u);
}

TEST_CASE("unit square is one component") {
  Raster r = rasterize(unitSquare(), {{-0.25, -0.25}, {1.25, 1.25}}, 1.0 / 32);
  CellMask all(r.cellCount(), 1);
  auto lab = components(r, all);
  CHECK(lab.componentCount == 1);
}

TEST_CASE("slit disc stays connected and matches flood fill") {
  Raster r = rasterize(slitDisc(), {{-1.25, -1.25}, {1.25, 1.25}}, 1.0 / 64);
  CellMask all(r.cellCount(), 1);
  auto lab = components(r, all);
  CHECK(lab.componentCount == 1);
  CHECK(floodCount(r, all) == 1);
  CHECK(r.blockedEdgeCount() == 64u);
}

TEST_CASE("slit disc halves separate inside a ball left of the tip") {
  Raster r = rasterize(slitDisc(), {{-1.25, -1.25}, {1.25, 1.25}}, 1.0 / 64);
  CellMask ball(r.cellCount(), 0);
  for (CellId c = 0; c < r.cellCount(); ++c) ball[c] = dist(r.center(c), {-0.5, 0}) < 0.3;
  auto lab = components(r, ball);
  CHECK(lab.componentCount == 2);
  CHECK(floodCount(r, ball) == 2);
}

TEST_CASE("component diameter equals brute force") {
  Raster r = rasterize(slitDisc(), {{-1.25, -1.25}, {1.25, 1.25}}, 1.0 / 16);
  CellMask ball(r.cellCount(), 0);
  for (CellId c = 0; c < r.cellCount(); ++c) ball[c] = dist(r.center(c), {-0.5, 0.1}) < 0.45;
  auto lab = components(r, ball);
  for (int i = 0; i < lab.componentCount; ++i) {
    const auto& cells = lab.componentCells[i];
    double best = 0;
    for (CellId a : cells)
      for (CellId b : cells) best = std::max(best, dist(r.center(a), r.center(b)));
    CHECK(lab.componentDiameterBound[i] == doctest::Approx(best));
  }
}

TEST_CASE("contact threshold") {
  Raster r = rasterize(unitSquare(), {{-0.25, -0.25}, {1.25, 1.25}}, 1.0 / 64);
  auto cells = r.domainCells();
  CHECK(contact(r, cells, {0, 0.5}));
  CHECK_FALSE(contact(r, cells, {-0.1, 0.5}));
}

TEST_CASE("separation by a circle but not a half circle") {
  DomainSpec s = unitSquare();
  Raster r = rasterize(s, {{-1, -1}, {1, 1}}, 1.0 / 64);
  CellMask circle(r.cellCount(), 0), arc(r.cellCount(), 0), none(r.cellCount(), 0);
  for (CellId c = 0; c < r.cellCount(); ++c) {
    Point p = r.center(c);
    bool ring = std::abs(norm(p) - 0.5) < r.h();
    circle[c] = ring;
    arc[c] = ring && p.y > 0;
  }
  CellId x = r.locate({0.001, 0.001}), y = r.locate({0.9, 0.9});
  CHECK(separates(r, circle, x, y));
  CHECK_FALSE(separates(r, arc, x, y));
  CHECK_FALSE(separates(r, none, x, y));
}

TEST_CASE("raster json round trip") {
  Raster r = rasterize(slitDisc(), {{-1.25, -1.25}, {1.25, 1.25}}, 1.0 / 16);
  Raster back = Raster::fromJson(r.toJson());
  CHECK(back == r);
}

TEST_CASE("spec json round trip keeps hash") {
  DomainSpec s = slitDisc();
  DomainSpec back = specFromJson(specToJson(s));
  CHECK(specHash(back) == specHash(s));
}
