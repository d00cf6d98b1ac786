#include "mazu/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "mazu/error.hpp"

namespace mazu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void requireDomainCell(const Raster& raster, CellId c) {
  if (c < 0 || c >= raster.cellCount()) throw Error(ErrorCode::kInvalidArgument, "cell outside raster");
  if (!raster.inside(c)) throw Error(ErrorCode::kQueryInObstacle, "query point is not a domain cell");
}

nlohmann::json pathJson(const Raster& raster, const std::vector<CellId>& path) {
  nlohmann::json pts = nlohmann::json::array();
  for (CellId c : path) {
    Point p = raster.center(c);
    if (raster.dim() == 3)
      pts.push_back({p.x, p.y, p.z});
    else
      pts.push_back({p.x, p.y});
  }
  return pts;
}

BottleneckField bottleneckImpl(const Raster& raster, CellId source, const std::function<double(CellId)>& weight,
                               const CellMask& allowed, CellId target) {
  const CellId n = raster.cellCount();
  BottleneckField f;
  f.value.assign(n, kInf);
  f.parent.assign(n, kNoCell);
  std::vector<double> len(n, kInf);
  using Key = std::tuple<double, double, CellId>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> pq;
  f.value[source] = weight(source);
  len[source] = 0.0;
  pq.push({f.value[source], 0.0, source});
  std::vector<std::uint8_t> done(n, 0);
  while (!pq.empty()) {
    auto [v, l, c] = pq.top();
    pq.pop();
    if (done[c]) continue;
    done[c] = 1;
    if (c == target) break;
    raster.forEachLinked(c, [&](CellId nb) {
      if (done[nb] || (!allowed.empty() && !allowed[nb])) return;
      double nv = std::max(v, weight(nb));
      double nl = l + 1.0;
      if (nv < f.value[nb] || (nv == f.value[nb] && nl < len[nb])) {
        f.value[nb] = nv;
        len[nb] = nl;
        f.parent[nb] = c;
        pq.push({nv, nl, nb});
      }
    });
  }
  return f;
}

}  // namespace

std::vector<CellId> BottleneckField::pathTo(CellId target) const {
  std::vector<CellId> path;
  if (target == kNoCell || value[target] == kInf) return path;
  for (CellId c = target; c != kNoCell; c = parent[c]) path.push_back(c);
  std::reverse(path.begin(), path.end());
  return path;
}

BottleneckField bottleneckField(const Raster& raster, CellId source, const std::function<double(CellId)>& weight,
                                const CellMask& allowed) {
  requireDomainCell(raster, source);
  return bottleneckImpl(raster, source, weight, allowed, kNoCell);
}

double pathDiameter(const Raster& raster, const std::vector<CellId>& path) {
  return centerSetDiameter(raster, path);
}

nlohmann::json DmBound::toJson(const Raster& raster) const {
  return {{"lo", lo}, {"hi", hi}, {"loCertificate", loCertificate}, {"witnessPath", pathJson(raster, witnessPath)}};
}

nlohmann::json DmExactResult::toJson(const Raster& raster) const {
  return {{"value", value}, {"exact", exact}, {"nodes", nodes}, {"witnessPath", pathJson(raster, path)}};
}

DmBound dmBounds(const Raster& raster, CellId x, CellId y, const std::vector<double>& candidateGrid) {
  requireDomainCell(raster, x);
  requireDomainCell(raster, y);
  DmBound out;
  const Point px = raster.center(x), py = raster.center(y);
  const double d = dist(px, py);
  if (x == y) {
    out.witnessPath = {x};
    return out;
  }
  // Lens threshold: smallest D with x, y joined inside B(x,D) and B(y,D).
  auto lensWeight = [&](CellId c) {
    Point p = raster.center(c);
    return std::max(dist(p, px), dist(p, py));
  };
  BottleneckField lens = bottleneckImpl(raster, x, lensWeight, {}, y);
  const double threshold = lens.value[y];
  if (threshold == kInf) throw Error(ErrorCode::kDisconnected, "points lie in different components");
  if (candidateGrid.empty()) {
    out.lo = threshold;
    out.loCertificate = std::nextafter(threshold, 0.0);
  } else {
    double best = -1.0;
    for (double D : candidateGrid)
      if (D < threshold) best = std::max(best, D);
    out.loCertificate = std::max(best, 0.0);
    out.lo = std::max(best, 0.0);
  }
  out.lo = std::max(out.lo, d);

  // Upper bound: minimax paths around sampled centers.
  std::vector<CellId> bestPath = lens.pathTo(y);
  double bestDiam = pathDiameter(raster, bestPath);
  std::vector<Point> centers{0.5 * (px + py), px, py};
  for (std::size_t i = 1; i < 8; ++i) centers.push_back(raster.center(bestPath[i * (bestPath.size() - 1) / 8]));
  Point lo = px, hi = px;
  for (CellId c : bestPath)
    for (int a = 0; a < raster.dim(); ++a) {
      lo[a] = std::min(lo[a], raster.center(c)[a]);
      hi[a] = std::max(hi[a], raster.center(c)[a]);
    }
  const int g = 4;
  for (int i = 0; i <= g; ++i)
    for (int j = 0; j <= g; ++j)
      for (int k = 0; k <= (raster.dim() == 3 ? g : 0); ++k) {
        Point z{lo.x + (hi.x - lo.x) * i / g, lo.y + (hi.y - lo.y) * j / g,
                raster.dim() == 3 ? lo.z + (hi.z - lo.z) * k / g : 0.0};
        centers.push_back(z);
      }
  for (Point z : centers) {
    auto w = [&](CellId c) { return dist(raster.center(c), z); };
    BottleneckField f = bottleneckImpl(raster, x, w, {}, y);
    if (f.value[y] == kInf) continue;
    std::vector<CellId> path = f.pathTo(y);
    double diam = pathDiameter(raster, path);
    if (diam < bestDiam) {
      bestDiam = diam;
      bestPath = std::move(path);
    }
  }
  out.hi = std::max(bestDiam, out.lo);
  out.witnessPath = std::move(bestPath);
  return out;
}

double innerDistance(const Raster& raster, CellId x, CellId y) {
  requireDomainCell(raster, x);
  requireDomainCell(raster, y);
  if (x == y) return 0.0;
  // Unit weights: breadth-first search.
  std::vector<std::int32_t> depth(raster.cellCount(), -1);
  std::vector<CellId> queue{x};
  depth[x] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    CellId c = queue[head];
    if (c == y) return depth[c] * raster.h();
    raster.forEachLinked(c, [&](CellId nb) {
      if (depth[nb] < 0) {
        depth[nb] = depth[c] + 1;
        queue.push_back(nb);
      }
    });
  }
  throw Error(ErrorCode::kDisconnected, "points lie in different components");
}

DmExactResult dmExact(const Raster& raster, CellId x, CellId y, std::uint64_t nodeBudget) {
  requireDomainCell(raster, x);
  requireDomainCell(raster, y);
  DmExactResult out;
  if (x == y) {
    out.exact = true;
    out.path = {x};
    return out;
  }
  const Point px = raster.center(x), py = raster.center(y);
  // Completion bound: any continuation from c reaches y through cells whose
  // distance to x and to y is at least field(c) somewhere.
  auto lensWeight = [&](CellId c) {
    Point p = raster.center(c);
    return std::max(dist(p, px), dist(p, py));
  };
  BottleneckField toY = bottleneckImpl(raster, y, lensWeight, {}, kNoCell);
  if (toY.value[x] == kInf) throw Error(ErrorCode::kDisconnected, "points lie in different components");
  const double globalLb = toY.value[x];

  DmBound seed = dmBounds(raster, x, y);
  double incumbent = seed.hi;
  std::vector<CellId> bestPath = seed.witnessPath;
  if (incumbent <= globalLb) {
    out.value = incumbent;
    out.exact = true;
    out.path = bestPath;
    return out;
  }

  struct Frame {
    CellId cell;
    double diam;
    double maxToY;
    std::vector<std::pair<double, CellId>> options;
    std::size_t next = 0;
  };
  std::vector<std::uint8_t> onPath(raster.cellCount(), 0);
  std::vector<Point> pathPts;
  std::vector<Frame> stack;
  auto expand = [&](Frame& f) {
    f.options.clear();
    f.next = 0;
    raster.forEachLinked(f.cell, [&](CellId nb) {
      if (onPath[nb]) return;
      Point p = raster.center(nb);
      double nd = f.diam;
      for (const Point& q : pathPts) nd = std::max(nd, dist(p, q));
      double lb = std::max({nd, toY.value[nb], f.maxToY, dist(p, py)});
      if (lb < incumbent) f.options.push_back({nd, nb});
    });
    std::sort(f.options.begin(), f.options.end());
  };
  auto push = [&](CellId c, double diam, double maxToY) {
    onPath[c] = 1;
    pathPts.push_back(raster.center(c));
    stack.push_back({c, diam, maxToY, {}, 0});
  };
  push(x, 0.0, dist(px, py));
  expand(stack.back());
  std::uint64_t nodes = 1;
  bool aborted = false;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next >= top.options.size()) {
      onPath[top.cell] = 0;
      pathPts.pop_back();
      stack.pop_back();
      continue;
    }
    auto [nd, nb] = top.options[top.next++];
    if (nd >= incumbent) continue;
    double maxToY = std::max(top.maxToY, dist(raster.center(nb), py));
    if (std::max({nd, maxToY, toY.value[nb]}) >= incumbent) continue;
    if (nb == y) {
      incumbent = nd;
      bestPath.clear();
      for (const Frame& f : stack) bestPath.push_back(f.cell);
      bestPath.push_back(y);
      if (incumbent <= globalLb) break;
      continue;
    }
    if (++nodes > nodeBudget) {
      aborted = true;
      break;
    }
    push(nb, nd, maxToY);
    expand(stack.back());
  }
  out.value = incumbent;
  out.exact = !aborted;
  out.path = std::move(bestPath);
  out.nodes = nodes;
  return out;
}

std::vector<std::vector<DmBound>> dmMatrix(const Raster& raster, const std::vector<CellId>& points,
                                           const std::vector<double>& candidateGrid) {
  std::size_t n = points.size();
  std::vector<std::vector<DmBound>> m(n, std::vector<DmBound>(n));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i].witnessPath = {points[i]};
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = dmBounds(raster, points[i], points[j], candidateGrid);
      m[j][i] = m[i][j];
      std::reverse(m[j][i].witnessPath.begin(), m[j][i].witnessPath.end());
    }
  }
  return m;
}

}  // namespace mazu
