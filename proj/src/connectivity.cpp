#include "mazu/connectivity.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <tuple>

#include "mazu/error.hpp"

namespace mazu {

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

std::size_t DisjointSet::find(std::size_t a) {
  while (parent_[a] != a) {
    parent_[a] = parent_[parent_[a]];
    a = parent_[a];
  }
  return a;
}

bool DisjointSet::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = static_cast<std::uint32_t>(a);
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

nlohmann::json ComponentLabeling::toJson() const {
  nlohmann::json out;
  out["componentCount"] = componentCount;
  out["components"] = nlohmann::json::array();
  for (int i = 0; i < componentCount; ++i)
    out["components"].push_back({{"id", i}, {"cells", componentCells[i]}, {"diameter", componentDiameterBound[i]}});
  return out;
}

namespace {

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

// Cells that are extreme along every lattice axis within their line. Every
// vertex of the convex hull of the center set survives this filter.
std::vector<Point> hullCandidates(const Raster& raster, const std::vector<CellId>& cells) {
  const int dim = raster.dim();
  std::vector<std::uint8_t> keep(cells.size(), 1);
  for (int axis = 0; axis < dim; ++axis) {
    // line key = coordinates on the other axes
    std::vector<std::tuple<std::int64_t, int, std::size_t>> keyed;
    keyed.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      auto c = raster.coords(cells[i]);
      std::int64_t key = 0;
      for (int a = 0; a < 3; ++a)
        if (a != axis) key = key * 1000003 + c[a];
      keyed.emplace_back(key, c[axis], i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::uint8_t> extreme(cells.size(), 0);
    for (std::size_t s = 0; s < keyed.size();) {
      std::size_t e = s;
      while (e < keyed.size() && std::get<0>(keyed[e]) == std::get<0>(keyed[s])) ++e;
      extreme[std::get<2>(keyed[s])] = 1;
      extreme[std::get<2>(keyed[e - 1])] = 1;
      s = e;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) keep[i] &= extreme[i];
  }
  std::vector<Point> pts;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (keep[i]) pts.push_back(raster.center(cells[i]));
  return pts;
}

double bruteDiameter(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0.0;
  Point lo = pts[0], hi = pts[0];
  for (Point p : pts)
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  // Farthest-corner bound lets most rows stop early.
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Point far;
    for (int a = 0; a < 3; ++a) far[a] = std::max(pts[i][a] - lo[a], hi[a] - pts[i][a]);
    order.push_back({norm2(far), i});
  }
  std::sort(order.begin(), order.end(), std::greater<>());
  double best = 0.0;
  for (auto [bound, i] : order) {
    if (bound <= best) break;
    for (const Point& q : pts) best = std::max(best, norm2(pts[i] - q));
  }
  return std::sqrt(best);
}

}  // namespace

double centerSetDiameter(const Raster& raster, const std::vector<CellId>& cells) {
  if (cells.size() < 2) return 0.0;
  std::vector<Point> pts = hullCandidates(raster, cells);
  if (raster.dim() == 2 && pts.size() > 3) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
      hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
      while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
      hull[k++] = pts[i - 1];
    }
    hull.resize(k > 1 ? k - 1 : k);
    return bruteDiameter(hull);
  }
  return bruteDiameter(pts);
}

ComponentLabeling components(const Raster& raster, const CellMask& subset) {
  const CellId n = raster.cellCount();
  DisjointSet ds(static_cast<std::size_t>(n));
  auto in = [&](CellId c) { return subset[c] && raster.inside(c); };
  for (CellId c = 0; c < n; ++c) {
    if (!in(c)) continue;
    for (int a = 0; a < raster.dim(); ++a) {
      CellId nb = raster.step(c, a, 1);
      if (nb != kNoCell && in(nb) && !raster.blocked(c, a)) ds.unite(c, nb);
    }
  }
  ComponentLabeling out;
  out.labels.assign(n, -1);
  std::vector<std::int32_t> rootLabel(n, -1);
  for (CellId c = 0; c < n; ++c) {
    if (!in(c)) continue;
    auto root = ds.find(c);
    if (rootLabel[root] < 0) {
      rootLabel[root] = out.componentCount++;
      out.componentCells.emplace_back();
    }
    out.labels[c] = rootLabel[root];
    out.componentCells[rootLabel[root]].push_back(c);
  }
  for (const auto& cells : out.componentCells) out.componentDiameterBound.push_back(centerSetDiameter(raster, cells));
  return out;
}

ComponentLabeling components(const Raster& raster, const std::vector<CellId>& subset) {
  CellMask mask(raster.cellCount(), 0);
  for (CellId c : subset) {
    if (c < 0 || c >= raster.cellCount()) throw Error(ErrorCode::kInvalidArgument, "cell outside raster");
    mask[c] = 1;
  }
  return components(raster, mask);
}

double contactTau(int dim) { return dim == 3 ? 1.8 : 1.5; }

double minCenterDistance(const Raster& raster, const std::vector<CellId>& cells, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (CellId c : cells) best = std::min(best, norm2(raster.center(c) - p));
  return std::sqrt(best);
}

bool contact(const Raster& raster, const std::vector<CellId>& cells, Point p) {
  return minCenterDistance(raster, cells, p) <= contactTau(raster.dim()) * raster.h();
}

bool separates(const Raster& raster, const CellMask& K, CellId x, CellId y) {
  const CellId n = raster.cellCount();
  if (x < 0 || y < 0 || x >= n || y >= n) throw Error(ErrorCode::kInvalidArgument, "query cell outside window");
  if (K[x] || K[y]) throw Error(ErrorCode::kQueryInObstacle, "query cell lies in the separating set");
  if (x == y) return false;
  // Node n is the merged exterior.
  const CellId inf = n;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
  std::deque<CellId> queue{x};
  seen[x] = 1;
  const auto& sz = raster.size();
  auto onFrame = [&](CellId c) {
    auto ijk = raster.coords(c);
    for (int a = 0; a < raster.dim(); ++a)
      if (ijk[a] == 0 || ijk[a] == sz[a] - 1) return true;
    return false;
  };
  while (!queue.empty()) {
    CellId c = queue.front();
    queue.pop_front();
    if (c == y) return false;
    if (c == inf) {
      for (CellId f = 0; f < n; ++f)
        if (!seen[f] && !K[f] && onFrame(f)) {
          seen[f] = 1;
          queue.push_back(f);
        }
      continue;
    }
    if (onFrame(c) && !seen[inf]) {
      seen[inf] = 1;
      queue.push_back(inf);
    }
    for (int a = 0; a < raster.dim(); ++a)
      for (int d : {-1, 1}) {
        CellId nb = raster.step(c, a, d);
        if (nb != kNoCell && !seen[nb] && !K[nb]) {
          seen[nb] = 1;
          queue.push_back(nb);
        }
      }
  }
  return true;
}

CellMask floodFrom(const Raster& raster, CellId seed, const CellMask& allowed) {
  CellMask reached(raster.cellCount(), 0);
  if (seed == kNoCell || !raster.inside(seed) || (!allowed.empty() && !allowed[seed])) return reached;
  std::vector<CellId> stack{seed};
  reached[seed] = 1;
  while (!stack.empty()) {
    CellId c = stack.back();
    stack.pop_back();
    raster.forEachLinked(c, [&](CellId nb) {
      if (!reached[nb] && (allowed.empty() || allowed[nb])) {
        reached[nb] = 1;
        stack.push_back(nb);
      }
    });
  }
  return reached;
}

}  // namespace mazu
