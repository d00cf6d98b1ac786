#include "mazu/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mazu/error.hpp"

namespace mazu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool inRange(double v, double lo, double hi, bool loClosed, bool hiClosed) {
  return (loClosed ? v >= lo : v > lo) && (hiClosed ? v <= hi : v < hi);
}

bool primContains(const Primitive& prim, Point p, int dim) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoxPrim>) {
          for (int i = 0; i < dim; ++i)
            if (!inRange(p[i], s.lo[i], s.hi[i], s.loClosed[i], s.hiClosed[i])) return false;
          return true;
        } else if constexpr (std::is_same_v<T, BallPrim>) {
          double d2 = 0.0;
          for (int i = 0; i < dim; ++i)
            if (s.axes[i]) d2 += (p[i] - s.center[i]) * (p[i] - s.center[i]);
          double r2 = s.radius * s.radius;
          return s.closed ? d2 <= r2 : d2 < r2;
        } else {
          double v = 0.0;
          for (int i = 0; i < dim; ++i) v += s.normal[i] * p[i];
          return s.closed ? v <= s.offset : v < s.offset;
        }
      },
      prim);
}

BBox primBounds(const Primitive& prim, int dim) {
  return std::visit(
      [&](const auto& s) -> BBox {
        using T = std::decay_t<decltype(s)>;
        BBox b{{-kInf, -kInf, -kInf}, {kInf, kInf, kInf}};
        if constexpr (std::is_same_v<T, BoxPrim>) {
          b = {s.lo, s.hi};
        } else if constexpr (std::is_same_v<T, BallPrim>) {
          for (int i = 0; i < dim; ++i) {
            if (!s.axes[i]) continue;
            b.lo[i] = s.center[i] - s.radius;
            b.hi[i] = s.center[i] + s.radius;
          }
        }
        for (int i = dim; i < 3; ++i) b.lo[i] = b.hi[i] = 0.0;
        return b;
      },
      prim);
}

// Sample along a segment at spacing <= step, restricted to clip.
void sampleSegment(Point a, Point b, double step, const BBox& clip, int dim,
                   const std::function<void(Point)>& visit) {
  BBox sb{{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
          {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
  if (!sb.intersects(clip, dim)) return;
  // Restrict to the parameter range inside the clip box.
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < dim; ++k) {
    double d = b[k] - a[k];
    if (d == 0.0) continue;
    double u0 = (clip.lo[k] - a[k]) / d, u1 = (clip.hi[k] - a[k]) / d;
    if (u0 > u1) std::swap(u0, u1);
    t0 = std::max(t0, u0);
    t1 = std::min(t1, u1);
  }
  if (t1 < t0) return;
  double len = dist(a, b) * (t1 - t0);
  int n = std::max(1, static_cast<int>(std::ceil(len / step)));
  for (int i = 0; i <= n; ++i) {
    Point p = a + (t0 + (t1 - t0) * static_cast<double>(i) / n) * (b - a);
    if (clip.inflated(1e-12).contains(p, dim)) visit(p);
  }
}

bool angleInArc(double theta, double from, double to) {
  double twoPi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta - from, twoPi);
  if (t < 0) t += twoPi;
  return t <= (to - from) + 1e-15;
}

// Parameters t in [0,1] where a + t(b-a) meets the circle (planar).
int segmentCircleHits(Point a, Point b, Point c, double r, double out[2]) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double fx = a.x - c.x, fy = a.y - c.y;
  double A = dx * dx + dy * dy;
  double B = 2 * (fx * dx + fy * dy);
  double C = fx * fx + fy * fy - r * r;
  if (A == 0.0) {
    if (C == 0.0) {
      out[0] = 0.0;
      return 1;
    }
    return 0;
  }
  double disc = B * B - 4 * A * C;
  if (disc < 0) return 0;
  double s = std::sqrt(disc);
  int n = 0;
  for (double t : {(-B - s) / (2 * A), (-B + s) / (2 * A)})
    if (t >= 0.0 && t <= 1.0) out[n++] = t;
  return n;
}

bool cantorContains(double u, int gen) {
  if (u < 0.0 || u > 1.0) return false;
  for (int i = 0; i < gen; ++i) {
    u *= 3.0;
    if (u > 1.0 && u < 2.0) return false;
    if (u >= 2.0) u -= 2.0;
  }
  return true;
}

int effectiveGen(const CantorObs& c, int cantorGen) {
  return c.generation >= 0 ? c.generation : std::max(cantorGen, 0);
}


// Whether [u, v] contains scale/k for some integer k >= kFrom, or 0 when the
// limit belongs to the set. Intervals reaching past 0 from above always do.
bool harmonicMeets(double scale, int kFrom, bool withLimit, double u, double v) {
  if (v < u) return false;
  if (u <= 0.0 && v >= 0.0) return withLimit || v > 0.0;
  if (v < 0.0) return false;
  double top = scale / kFrom;
  if (u > top) return false;
  double kd = std::max(static_cast<double>(kFrom), std::ceil(scale / v));
  if (kd > 1e15) return false;
  auto k = static_cast<long long>(kd);
  while (k > kFrom && scale / static_cast<double>(k - 1) <= v) --k;
  while (scale / static_cast<double>(k) > v) ++k;
  return scale / static_cast<double>(k) >= u;
}

// Distance from t to the closure of {scale/k : k >= kFrom} (which contains 0).
double harmonicDist(double scale, int kFrom, double t) {
  double top = scale / kFrom;
  if (t >= top) return t - top;
  if (t <= 0.0) return -t;
  double best = t;
  double kd = std::floor(scale / t);
  for (double k : {kd - 1, kd, kd + 1, kd + 2}) {
    if (k < kFrom || k > 1e15) continue;
    best = std::min(best, std::abs(t - scale / k));
  }
  return best;
}

bool teethHits(const TeethObs& s, Point a, Point b) {
  double t0 = 0.0, t1 = 1.0;
  double dy = b.y - a.y;
  if (dy == 0.0) {
    if (a.y < s.y0 || a.y > s.y1) return false;
  } else {
    double u0 = (s.y0 - a.y) / dy, u1 = (s.y1 - a.y) / dy;
    if (u0 > u1) std::swap(u0, u1);
    t0 = std::max(t0, u0);
    t1 = std::min(t1, u1);
    if (t1 < t0) return false;
  }
  double xa = a.x + t0 * (b.x - a.x), xb = a.x + t1 * (b.x - a.x);
  return harmonicMeets(s.scale, s.kFrom, s.withLimit, std::min(xa, xb), std::max(xa, xb));
}

double teethDist(const TeethObs& s, Point q) {
  double dx = harmonicDist(s.scale, s.kFrom, q.x);
  double dy = q.y < s.y0 ? s.y0 - q.y : (q.y > s.y1 ? q.y - s.y1 : 0.0);
  return std::hypot(dx, dy);
}

bool fanHits(const FanObs& s, Point a, Point b) {
  // Clip the segment to the closed disc of radius `length`.
  double ts[2];
  Point c{s.center.x, s.center.y, 0.0};
  Point pa{a.x, a.y, 0.0}, pb{b.x, b.y, 0.0};
  bool ina = dist(pa, c) <= s.length, inb = dist(pb, c) <= s.length;
  int n = segmentCircleHits(pa, pb, c, s.length, ts);
  double t0, t1;
  if (ina && inb) {
    t0 = 0.0;
    t1 = 1.0;
  } else if (ina) {
    t0 = 0.0;
    t1 = n ? ts[n - 1] : 0.0;
  } else if (inb) {
    t0 = n ? ts[0] : 1.0;
    t1 = 1.0;
  } else {
    if (n == 0) return false;
    t0 = ts[0];
    t1 = ts[n - 1];
  }
  Point u = pa + t0 * (pb - pa) - c, v = pa + t1 * (pb - pa) - c;
  if (segmentPointDist2(u, v, Point{}) == 0.0) return true;
  double au = std::atan2(u.y, u.x), av = std::atan2(v.y, v.x);
  double lo = std::min(au, av), hi = std::max(au, av);
  if (hi - lo > std::numbers::pi) {
    // The short arc crosses the branch cut at +-pi.
    double twoPi = 2.0 * std::numbers::pi;
    return harmonicMeets(s.scale, s.kFrom, s.withLimit, hi, lo + twoPi) ||
           harmonicMeets(s.scale, s.kFrom, s.withLimit, hi - twoPi, lo);
  }
  return harmonicMeets(s.scale, s.kFrom, s.withLimit, lo, hi);
}

double fanDist(const FanObs& s, Point q) {
  Point c{s.center.x, s.center.y, 0.0};
  Point d = q - c;
  d.z = 0.0;
  double phi = std::atan2(d.y, d.x);
  auto rayDist = [&](double th) {
    Point e = c + s.length * Point{std::cos(th), std::sin(th), 0.0};
    return std::sqrt(segmentPointDist2(c, e, q));
  };
  double best = rayDist(0.0);  // limit ray, in the closure
  double top = s.scale / s.kFrom;
  best = std::min(best, rayDist(top));
  if (phi > 0.0 && phi < top) {
    double kd = std::floor(s.scale / phi);
    for (double k : {kd - 1, kd, kd + 1, kd + 2})
      if (k >= s.kFrom && k < 1e15) best = std::min(best, rayDist(s.scale / k));
  }
  return best;
}

bool planarHits(const PlanarThin& shape, Point a, Point b, int cantorGen) {
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentObs>) {
          return segmentsIntersect2d(a, b, s.a, s.b);
        } else if constexpr (std::is_same_v<T, PolylineObs>) {
          for (size_t i = 1; i < s.points.size(); ++i)
            if (segmentsIntersect2d(a, b, s.points[i - 1], s.points[i])) return true;
          return false;
        } else if constexpr (std::is_same_v<T, CircleObs>) {
          double ts[2];
          return segmentCircleHits(a, b, s.center, s.radius, ts) > 0;
        } else if constexpr (std::is_same_v<T, ArcObs>) {
          double ts[2];
          int n = segmentCircleHits(a, b, s.center, s.radius, ts);
          for (int i = 0; i < n; ++i) {
            Point q = a + ts[i] * (b - a);
            if (angleInArc(std::atan2(q.y - s.center.y, q.x - s.center.x), s.from, s.to)) return true;
          }
          return false;
        } else if constexpr (std::is_same_v<T, TeethObs>) {
          return teethHits(s, a, b);
        } else if constexpr (std::is_same_v<T, FanObs>) {
          return fanHits(s, a, b);
        } else {
          int gen = effectiveGen(s, cantorGen);
          int ax = s.axis;
          int other = 1 - ax;
          double c = s.origin[other];
          double ua = a[other] - c, ub = b[other] - c;
          if ((ua > 0 && ub > 0) || (ua < 0 && ub < 0)) return false;
          if (ua == 0.0 && ub == 0.0) {
            // Segment on the carrier line: overlap test against the intervals.
            double lo = (std::min(a[ax], b[ax]) - s.origin[ax]) / s.length;
            double hi = (std::max(a[ax], b[ax]) - s.origin[ax]) / s.length;
            for (const auto& iv : cantorIntervals(gen))
              if (iv[1] >= lo && iv[0] <= hi) return true;
            return false;
          }
          double t = ua / (ua - ub);
          double along = a[ax] + t * (b[ax] - a[ax]);
          return cantorContains((along - s.origin[ax]) / s.length, gen);
        }
      },
      shape);
}

double planarDist(const PlanarThin& shape, Point p, int cantorGen) {
  Point q{p.x, p.y, 0.0};
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentObs>) {
          return std::sqrt(segmentPointDist2(s.a, s.b, q));
        } else if constexpr (std::is_same_v<T, PolylineObs>) {
          double best = kInf;
          for (size_t i = 1; i < s.points.size(); ++i)
            best = std::min(best, segmentPointDist2(s.points[i - 1], s.points[i], q));
          return std::sqrt(best);
        } else if constexpr (std::is_same_v<T, CircleObs>) {
          return std::abs(dist(q, s.center) - s.radius);
        } else if constexpr (std::is_same_v<T, ArcObs>) {
          double theta = std::atan2(q.y - s.center.y, q.x - s.center.x);
          if (angleInArc(theta, s.from, s.to)) return std::abs(dist(q, s.center) - s.radius);
          Point e0 = s.center + s.radius * Point{std::cos(s.from), std::sin(s.from), 0};
          Point e1 = s.center + s.radius * Point{std::cos(s.to), std::sin(s.to), 0};
          return std::min(dist(q, e0), dist(q, e1));
        } else if constexpr (std::is_same_v<T, TeethObs>) {
          return teethDist(s, q);
        } else if constexpr (std::is_same_v<T, FanObs>) {
          return fanDist(s, q);
        } else {
          int gen = effectiveGen(s, cantorGen);
          int ax = s.axis;
          int other = 1 - ax;
          double off = std::abs(q[other] - s.origin[other]);
          double u = q[ax] - s.origin[ax];
          double best = kInf;
          for (const auto& iv : cantorIntervals(gen)) {
            double lo = iv[0] * s.length, hi = iv[1] * s.length;
            double d = u < lo ? lo - u : (u > hi ? u - hi : 0.0);
            best = std::min(best, d);
          }
          return std::hypot(best, off);
        }
      },
      shape);
}

BBox planarBounds(const PlanarThin& shape) {
  return std::visit(
      [&](const auto& s) -> BBox {
        using T = std::decay_t<decltype(s)>;
        auto fromPts = [](std::initializer_list<Point> pts) {
          BBox b{{kInf, kInf, 0}, {-kInf, -kInf, 0}};
          for (Point p : pts) {
            b.lo.x = std::min(b.lo.x, p.x);
            b.lo.y = std::min(b.lo.y, p.y);
            b.hi.x = std::max(b.hi.x, p.x);
            b.hi.y = std::max(b.hi.y, p.y);
          }
          return b;
        };
        if constexpr (std::is_same_v<T, SegmentObs>) {
          return fromPts({s.a, s.b});
        } else if constexpr (std::is_same_v<T, PolylineObs>) {
          BBox b{{kInf, kInf, 0}, {-kInf, -kInf, 0}};
          for (Point p : s.points) {
            b.lo.x = std::min(b.lo.x, p.x);
            b.lo.y = std::min(b.lo.y, p.y);
            b.hi.x = std::max(b.hi.x, p.x);
            b.hi.y = std::max(b.hi.y, p.y);
          }
          return b;
        } else if constexpr (std::is_same_v<T, CircleObs> || std::is_same_v<T, ArcObs>) {
          return BBox{s.center - Point{s.radius, s.radius, 0}, s.center + Point{s.radius, s.radius, 0}};
        } else if constexpr (std::is_same_v<T, TeethObs>) {
          return BBox{{0.0, s.y0, 0.0}, {s.scale / s.kFrom, s.y1, 0.0}};
        } else if constexpr (std::is_same_v<T, FanObs>) {
          return BBox{s.center - Point{s.length, s.length, 0}, s.center + Point{s.length, s.length, 0}};
        } else {
          Point end = s.origin;
          end[s.axis] += s.length;
          return fromPts({s.origin, end});
        }
      },
      shape);
}


// Teeth farther apart than `step` are sampled one by one; the dense band next
// to the limit line is covered by a grid.
void sampleTeeth(const TeethObs& s, double step, const BBox& clip, const std::function<void(Point)>& visit) {
  long long k = s.kFrom;
  double bandEnd = s.scale / s.kFrom;
  for (;; ++k) {
    double x = s.scale / static_cast<double>(k);
    double gap = x - s.scale / static_cast<double>(k + 1);
    if (gap < step) {
      bandEnd = x;
      break;
    }
    if (x >= clip.lo.x && x <= clip.hi.x) sampleSegment({x, s.y0}, {x, s.y1}, step, clip, 2, visit);
  }
  double x0 = std::max(0.0, clip.lo.x), x1 = std::min(bandEnd, clip.hi.x);
  double y0 = std::max(s.y0, clip.lo.y), y1 = std::min(s.y1, clip.hi.y);
  if (x1 < x0 || y1 < y0) return;
  int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / step)));
  int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / step)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) visit(Point{x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny, 0.0});
}

// Rays whose tips are farther apart than `step` are sampled one by one; the
// remaining wedge towards angle 0 is covered by a grid.
void sampleFan(const FanObs& s, double step, const BBox& clip, const std::function<void(Point)>& visit) {
  Point c{s.center.x, s.center.y, 0.0};
  long long k = s.kFrom;
  double wedge = s.scale / s.kFrom;
  for (;; ++k) {
    double th = s.scale / static_cast<double>(k);
    double gap = s.length * (th - s.scale / static_cast<double>(k + 1));
    if (gap < step) {
      wedge = th;
      break;
    }
    sampleSegment(c, c + s.length * Point{std::cos(th), std::sin(th), 0.0}, step, clip, 2, visit);
  }
  if (s.withLimit) sampleSegment(c, c + Point{s.length, 0.0, 0.0}, step, clip, 2, visit);
  BBox wb{c - Point{step, step, 0}, c + Point{s.length, s.length * std::sin(std::min(wedge, 1.5)), 0.0}};
  double x0 = std::max(wb.lo.x, clip.lo.x), x1 = std::min(wb.hi.x, clip.hi.x);
  double y0 = std::max(wb.lo.y, clip.lo.y), y1 = std::min(wb.hi.y, clip.hi.y);
  if (x1 < x0 || y1 < y0) return;
  int nx = std::max(1, static_cast<int>(std::ceil((x1 - x0) / step)));
  int ny = std::max(1, static_cast<int>(std::ceil((y1 - y0) / step)));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      Point p{x0 + (x1 - x0) * i / nx, y0 + (y1 - y0) * j / ny, 0.0};
      Point d = p - c;
      double r = norm(d);
      if (r > s.length + step) continue;
      double phi = std::atan2(d.y, d.x);
      if (r <= 2 * step || (phi >= -step / std::max(r, step) && phi <= wedge + step / std::max(r, step))) visit(p);
    }
}

void samplePlanar(const PlanarThin& shape, double step, const BBox& clip, int cantorGen,
                  const std::function<void(Point)>& visit) {
  BBox clip2 = clip;
  clip2.lo.z = -kInf;
  clip2.hi.z = kInf;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentObs>) {
          sampleSegment(s.a, s.b, step, clip2, 2, visit);
        } else if constexpr (std::is_same_v<T, PolylineObs>) {
          for (size_t i = 1; i < s.points.size(); ++i)
            sampleSegment(s.points[i - 1], s.points[i], step, clip2, 2, visit);
        } else if constexpr (std::is_same_v<T, CircleObs> || std::is_same_v<T, ArcObs>) {
          double from = 0.0, to = 2.0 * std::numbers::pi;
          if constexpr (std::is_same_v<T, ArcObs>) {
            from = s.from;
            to = s.to;
          }
          if (s.radius <= 0.0) return;
          int n = std::max(4, static_cast<int>(std::ceil((to - from) * s.radius / step)));
          for (int i = 0; i <= n; ++i) {
            double th = from + (to - from) * i / n;
            Point p = s.center + s.radius * Point{std::cos(th), std::sin(th), 0};
            if (clip2.contains(p, 2)) visit(p);
          }
        } else if constexpr (std::is_same_v<T, TeethObs>) {
          sampleTeeth(s, step, clip2, visit);
        } else if constexpr (std::is_same_v<T, FanObs>) {
          sampleFan(s, step, clip2, visit);
        } else {
          int gen = effectiveGen(s, cantorGen);
          for (const auto& iv : cantorIntervals(gen)) {
            Point a = s.origin, b = s.origin;
            a[s.axis] += iv[0] * s.length;
            b[s.axis] += iv[1] * s.length;
            sampleSegment(a, b, step, clip2, 2, visit);
          }
        }
      },
      shape);
}

}  // namespace

// ---------------------------------------------------------------------------

CsgNode CsgNode::box(Point lo, Point hi) { return box(BoxPrim{lo, hi}); }

CsgNode CsgNode::box(BoxPrim b) {
  CsgNode n;
  n.prim = b;
  return n;
}

CsgNode CsgNode::ball(Point center, double radius, bool closed) {
  return ball(BallPrim{center, radius, closed});
}

CsgNode CsgNode::ball(BallPrim b) {
  CsgNode n;
  n.prim = b;
  return n;
}

CsgNode CsgNode::halfSpace(Point normal, double offset, bool closed) {
  CsgNode n;
  n.prim = HalfSpacePrim{normal, offset, closed};
  return n;
}

CsgNode CsgNode::unite(std::vector<CsgNode> parts) {
  CsgNode n;
  n.op = Op::kUnion;
  n.children = std::move(parts);
  return n;
}

CsgNode CsgNode::intersect(std::vector<CsgNode> parts) {
  CsgNode n;
  n.op = Op::kIntersection;
  n.children = std::move(parts);
  return n;
}

CsgNode CsgNode::subtract(CsgNode base, std::vector<CsgNode> removed) {
  CsgNode n;
  n.op = Op::kDifference;
  n.children.reserve(removed.size() + 1);
  n.children.push_back(std::move(base));
  for (auto& r : removed) n.children.push_back(std::move(r));
  return n;
}

bool CsgNode::contains(Point p, int dim) const {
  switch (op) {
    case Op::kPrimitive:
      return primContains(prim, p, dim);
    case Op::kUnion:
      return std::any_of(children.begin(), children.end(),
                         [&](const CsgNode& c) { return c.contains(p, dim); });
    case Op::kIntersection:
      return !children.empty() && std::all_of(children.begin(), children.end(),
                                              [&](const CsgNode& c) { return c.contains(p, dim); });
    case Op::kDifference:
      if (children.empty() || !children.front().contains(p, dim)) return false;
      for (size_t i = 1; i < children.size(); ++i)
        if (children[i].contains(p, dim)) return false;
      return true;
  }
  return false;
}

BBox CsgNode::bounds(int dim) const {
  switch (op) {
    case Op::kPrimitive:
      return primBounds(prim, dim);
    case Op::kUnion: {
      BBox b{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
      for (const auto& c : children) {
        BBox cb = c.bounds(dim);
        for (int i = 0; i < 3; ++i) {
          b.lo[i] = std::min(b.lo[i], cb.lo[i]);
          b.hi[i] = std::max(b.hi[i], cb.hi[i]);
        }
      }
      return b;
    }
    case Op::kIntersection: {
      BBox b{{-kInf, -kInf, -kInf}, {kInf, kInf, kInf}};
      for (const auto& c : children) {
        BBox cb = c.bounds(dim);
        for (int i = 0; i < 3; ++i) {
          b.lo[i] = std::max(b.lo[i], cb.lo[i]);
          b.hi[i] = std::min(b.hi[i], cb.hi[i]);
        }
      }
      return b;
    }
    case Op::kDifference:
      return children.empty() ? BBox{} : children.front().bounds(dim);
  }
  return {};
}

// ---------------------------------------------------------------------------

std::vector<std::array<double, 2>> cantorIntervals(int generation) {
  std::vector<std::array<double, 2>> out{{0.0, 1.0}};
  for (int g = 0; g < generation; ++g) {
    std::vector<std::array<double, 2>> next;
    next.reserve(out.size() * 2);
    for (const auto& iv : out) {
      double third = (iv[1] - iv[0]) / 3.0;
      next.push_back({iv[0], iv[0] + third});
      next.push_back({iv[1] - third, iv[1]});
    }
    out.swap(next);
  }
  return out;
}

int cantorGenerationFor(double length, double h) {
  if (h <= 0.0) return 12;
  return std::max(0, static_cast<int>(std::ceil(std::log(length / h) / std::log(3.0)))) + 2;
}

bool ThinObstacle::hitsSegment(Point a, Point b, int dim, int cantorGen) const {
  if (dim == 3 && extrude) {
    const ZRange& zr = *extrude;
    if (a.z == b.z) {
      if (!zr.contains(a.z)) return false;
      return planarHits(shape, a, b, cantorGen);
    }
    if (a.x == b.x && a.y == b.y) {
      double lo = std::min(a.z, b.z), hi = std::max(a.z, b.z);
      if (hi < zr.z0 || lo > zr.z1) return false;
      return planarDist(shape, a, cantorGen) == 0.0;
    }
    // General 3D segment: sample is not exact; test the planar shadow on the
    // clipped z-range which is conservative.
    return planarHits(shape, a, b, cantorGen);
  }
  return planarHits(shape, a, b, cantorGen);
}

bool ThinObstacle::containsPoint(Point p, int dim, int cantorGen, double tol) const {
  if (dim == 3 && extrude && !extrude->contains(p.z)) return false;
  return planarDist(shape, p, cantorGen) <= tol;
}

void ThinObstacle::sample(double step, const BBox& clip, int dim, int cantorGen,
                          const std::function<void(Point)>& visit) const {
  if (dim == 3 && extrude) {
    double z0 = std::max(extrude->z0, clip.lo.z);
    double z1 = std::min(extrude->z1, clip.hi.z);
    if (z1 < z0) return;
    int nz = std::max(1, static_cast<int>(std::ceil((z1 - z0) / step)));
    samplePlanar(shape, step, clip, cantorGen, [&](Point p) {
      for (int k = 0; k <= nz; ++k) visit(Point{p.x, p.y, z0 + (z1 - z0) * k / nz});
    });
    return;
  }
  samplePlanar(shape, step, clip, cantorGen, visit);
}

BBox ThinObstacle::bounds() const {
  BBox b = planarBounds(shape);
  if (extrude) {
    b.lo.z = extrude->z0;
    b.hi.z = extrude->z1;
  }
  return b;
}

// ---------------------------------------------------------------------------

const char* membershipName(Membership m) {
  switch (m) {
    case Membership::kInsideSolid: return "InsideSolid";
    case Membership::kOutsideSolid: return "OutsideSolid";
    case Membership::kOnThin: return "OnThin";
  }
  return "?";
}

BBox DomainSpec::defaultWindow() const {
  BBox w = declaredBox;
  for (int i = 0; i < dim; ++i) {
    double pad = 0.25 * (w.hi[i] - w.lo[i]);
    w.lo[i] -= pad;
    w.hi[i] += pad;
  }
  return w;
}

namespace {

void validateNode(const CsgNode& n) {
  if (n.op == CsgNode::Op::kPrimitive) {
    if (const auto* b = std::get_if<BallPrim>(&n.prim); b && !(b->radius > 0.0))
      throw Error(ErrorCode::kMalformedSpec, "ball radius must be positive");
    if (const auto* b = std::get_if<BoxPrim>(&n.prim)) {
      for (int i = 0; i < 3; ++i)
        if (!(b->lo[i] <= b->hi[i])) throw Error(ErrorCode::kMalformedSpec, "box with lo > hi");
    }
    return;
  }
  if (n.children.empty()) throw Error(ErrorCode::kMalformedSpec, "CSG operator without operands");
  for (const auto& c : n.children) validateNode(c);
}

}  // namespace

void DomainSpec::validate() const {
  if (dim != 2 && dim != 3) throw Error(ErrorCode::kMalformedSpec, "dim must be 2 or 3");
  validateNode(solid);
  for (const auto& t : thin) {
    if (const auto* c = std::get_if<CircleObs>(&t.shape); c && !(c->radius > 0.0))
      throw Error(ErrorCode::kMalformedSpec, "circle radius must be positive");
    if (const auto* a = std::get_if<ArcObs>(&t.shape); a && (!(a->radius > 0.0) || !(a->to > a->from)))
      throw Error(ErrorCode::kMalformedSpec, "arc needs positive radius and to > from");
    if (const auto* c = std::get_if<CantorObs>(&t.shape); c && (c->axis < 0 || c->axis > 1 || !(c->length > 0.0)))
      throw Error(ErrorCode::kMalformedSpec, "cantor obstacle needs axis 0/1 and positive length");
    if (const auto* c = std::get_if<TeethObs>(&t.shape); c && (c->kFrom < 1 || !(c->scale > 0.0) || c->y1 < c->y0))
      throw Error(ErrorCode::kMalformedSpec, "teeth need kFrom >= 1, positive scale and y0 <= y1");
    if (const auto* f = std::get_if<FanObs>(&t.shape); f && (f->kFrom < 1 || !(f->scale > 0.0) || !(f->length > 0.0)))
      throw Error(ErrorCode::kMalformedSpec, "fan needs kFrom >= 1, positive scale and length");
    if (t.extrude && dim != 3) throw Error(ErrorCode::kMalformedSpec, "extrusion requires dim 3");
  }
  for (int i = 0; i < dim; ++i)
    if (!(declaredBox.lo[i] < declaredBox.hi[i]))
      throw Error(ErrorCode::kMalformedSpec, "declared box is empty");
}

Membership evalMembership(const DomainSpec& spec, Point p, double h) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw Error(ErrorCode::kInvalidArgument, "non-finite point");
  if (!spec.solid.contains(p, spec.dim)) return Membership::kOutsideSolid;
  for (const auto& t : spec.thin) {
    int gen = 12;
    if (const auto* c = std::get_if<CantorObs>(&t.shape)) gen = cantorGenerationFor(c->length, h);
    if (t.containsPoint(p, spec.dim, gen)) return Membership::kOnThin;
  }
  return Membership::kInsideSolid;
}

}  // namespace mazu
