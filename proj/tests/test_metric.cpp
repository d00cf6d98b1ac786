#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "mazu/error.hpp"
#include "mazu/metric.hpp"

using namespace mazu;

namespace {

DomainSpec slitDisc() {
  DomainSpec s;
  s.name = "slit";
  s.dim = 2;
  s.solid = CsgNode::ball({0, 0}, 1.0);
  s.thin.push_back({SegmentObs{{-1, 0}, {0, 0}}, std::nullopt});
  s.declaredBox = {{-1, -1}, {1, 1}};
  return s;
}

// Enumerates every simple path and keeps the least center-set diameter.
double exhaustiveDm(const Raster& r, CellId x, CellId y) {
  double best = INFINITY;
  std::vector<CellId> path{x};
  std::vector<int> on(r.cellCount(), 0);
  on[x] = 1;
  std::function<void()> rec = [&]() {
    CellId c = path.back();
    if (c == y) {
      double d = 0;
      for (CellId a : path)
        for (CellId b : path) d = std::max(d, dist(r.center(a), r.center(b)));
      best = std::min(best, d);
      return;
    }
    for (int a = 0; a < r.dim(); ++a)
      for (int s : {-1, 1})
        if (r.linked(c, a, s)) {
          CellId nb = r.step(c, a, s);
          if (on[nb]) continue;
          on[nb] = 1;
          path.push_back(nb);
          rec();
          path.pop_back();
          on[nb] = 0;
        }
  };
  rec();
  return best;
}

}  // namespace

TEST_CASE("dmExact matches exhaustive enumeration on small rasters") {
  std::mt19937 rng(7);
  int checked = 0;
  while (checked < 60) {
    int w = 5, hgt = 4;
    std::vector<std::uint8_t> mask(w * hgt);
    for (auto& m : mask) m = rng() % 100 < 70;
    Raster r = rasterFromMask(2, 1.0, {0, 0}, {w, hgt, 1}, mask);
    auto cells = r.domainCells();
    if (cells.size() < 2) continue;
    CellId x = cells[rng() % cells.size()], y = cells[rng() % cells.size()];
    double oracle = exhaustiveDm(r, x, y);
    if (std::isinf(oracle)) {
      CHECK_THROWS_AS(dmExact(r, x, y), Error);
      continue;
    }
    auto res = dmExact(r, x, y);
    CHECK(res.exact);
    CHECK(res.value == doctest::Approx(oracle).epsilon(1e-12));
    ++checked;
  }
}

TEST_CASE("convex domain: d_M equals the Euclidean distance up to lattice error") {
  DomainSpec s;
  s.dim = 2;
  s.solid = CsgNode::box({0, 0}, {1, 1});
  s.declaredBox = {{0, 0}, {1, 1}};
  Raster r = rasterize(s, {{0, 0}, {1, 1}}, 1.0 / 64);
  CellId x = r.locate({0.2, 0.2}), y = r.locate({0.8, 0.8});
  auto b = dmBounds(r, x, y);
  double d = dist(r.center(x), r.center(y));
  CHECK(b.lo >= d - 1e-12);
  CHECK(b.hi <= d + std::sqrt(2.0) / 64 + 1e-12);
  auto e = dmExact(r, x, y, 200000);
  CHECK(e.value <= b.hi + 1e-12);
  CHECK(e.value >= b.lo - 1e-12);
  CHECK(innerDistance(r, x, y) == doctest::Approx(2 * (r.center(y).x - r.center(x).x)));
}

TEST_CASE("slit disc pair must round the tip") {
  Raster r = rasterize(slitDisc(), {{-1.25, -1.25}, {1.25, 1.25}}, 1.0 / 128);
  CellId x = r.locate({-0.5, 2.0 / 128 - 1e-9}), y = r.locate({-0.5, -2.0 / 128 + 1e-9});
  auto b = dmBounds(r, x, y);
  CHECK(b.lo >= 0.45);
  CHECK(b.hi <= 0.55);
  CHECK(b.lo <= b.hi);
  double inner = innerDistance(r, x, y);
  CHECK(inner >= b.hi);
  CHECK(inner == doctest::Approx(1.0).epsilon(0.1));
}
