#include "mazu/separation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "mazu/error.hpp"

namespace mazu {

namespace {

double segmentDistance(Point p, Point a, Point b) {
  Point d = b - a;
  double len2 = dot(d, d);
  double t = len2 > 0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return dist(p, a + t * d);
}

double arcDistance(Point p, const LabShape& s) {
  Point end0{s.a.x + s.r0 * std::cos(s.t0), s.a.y + s.r0 * std::sin(s.t0), 0};
  Point end1{s.a.x + s.r0 * std::cos(s.t1), s.a.y + s.r0 * std::sin(s.t1), 0};
  double span = s.t1 - s.t0;
  double ang = std::atan2(p.y - s.a.y, p.x - s.a.x) - s.t0;
  const double twoPi = 2 * std::numbers::pi;
  ang = std::fmod(std::fmod(ang, twoPi) + twoPi, twoPi);
  if (span >= twoPi || ang <= span) return std::abs(dist(p, s.a) - s.r0);
  return std::min(dist(p, end0), dist(p, end1));
}

bool shapeContains(const LabShape& s, Point c, double h) {
  const double reach = 0.75 * h + s.width;
  switch (s.kind) {
    case LabShape::Kind::kDisk: return dist(c, s.a) <= s.r0 + s.width;
    case LabShape::Kind::kAnnulus: {
      double d = dist(c, s.a);
      return d >= s.r0 - s.width && d <= s.r1 + s.width;
    }
    case LabShape::Kind::kArc: return arcDistance(c, s) <= reach;
    case LabShape::Kind::kSegment: return segmentDistance(c, s.a, s.b) <= reach;
    case LabShape::Kind::kPoint: return dist(c, s.a) <= reach;
  }
  return false;
}

const char* shapeKindName(LabShape::Kind k) {
  switch (k) {
    case LabShape::Kind::kDisk: return "disk";
    case LabShape::Kind::kAnnulus: return "annulus";
    case LabShape::Kind::kArc: return "arc";
    case LabShape::Kind::kSegment: return "segment";
    case LabShape::Kind::kPoint: return "point";
  }
  return "?";
}

CellMask unite(const CellMask& a, const CellMask& b) {
  CellMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] | b[i];
  return out;
}

CellMask intersect(const CellMask& a, const CellMask& b) {
  CellMask out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool empty(const CellMask& m) {
  return std::none_of(m.begin(), m.end(), [](std::uint8_t v) { return v != 0; });
}

template <class Fn>
void forEachNear(const Raster& lattice, CellId c, int span, Fn&& fn) {
  auto t = lattice.coords(c);
  const auto& n = lattice.size();
  int kz = lattice.dim() == 3 ? span : 0;
  for (int dk = -kz; dk <= kz; ++dk)
    for (int dj = -span; dj <= span; ++dj)
      for (int di = -span; di <= span; ++di) {
        if (!di && !dj && !dk) continue;
        int i = t[0] + di, j = t[1] + dj, k = t[2] + dk;
        if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
        fn(lattice.index(i, j, k));
      }
}

// Cells of a within tau*h of b.
CellMask nearCells(const Raster& lattice, const CellMask& a, const CellMask& b, double tau) {
  CellMask out(a.size(), 0);
  const double h = lattice.h();
  int span = static_cast<int>(std::ceil(tau));
  for (CellId c = 0; c < lattice.cellCount(); ++c) {
    if (!a[c]) continue;
    if (b[c]) {
      out[c] = 1;
      continue;
    }
    forEachNear(lattice, c, span, [&](CellId q) {
      if (b[q] && dist(lattice.center(c), lattice.center(q)) <= tau * h * (1 + 1e-9)) out[c] = 1;
    });
  }
  return out;
}

std::vector<int> setLabels(const Raster& lattice, const CellMask& set, int& count) {
  std::vector<int> label(set.size(), -1);
  count = 0;
  std::vector<CellId> stack;
  for (CellId s = 0; s < lattice.cellCount(); ++s) {
    if (!set[s] || label[s] >= 0) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      CellId c = stack.back();
      stack.pop_back();
      forEachNear(lattice, c, 1, [&](CellId q) {
        if (set[q] && label[q] < 0) {
          label[q] = count;
          stack.push_back(q);
        }
      });
    }
    ++count;
  }
  return label;
}

// Contacts between a and b happen only through genuine overlap: every
// region where they come within sep*h contains shared cells, and distinct
// overlaps are not bridged by near misses.
bool cleanContact(const Raster& lattice, const CellMask& a, const CellMask& b, double sep) {
  CellMask both = intersect(a, b);
  CellMask nearSet = unite(nearCells(lattice, a, b, sep), nearCells(lattice, b, a, sep));
  int nBoth = 0, nNear = 0;
  setLabels(lattice, both, nBoth);
  std::vector<int> lab = setLabels(lattice, nearSet, nNear);
  if (nNear != nBoth) return false;
  std::vector<std::uint8_t> hit(nNear, 0);
  for (CellId c = 0; c < lattice.cellCount(); ++c)
    if (both[c]) hit[lab[c]] = 1;
  return std::all_of(hit.begin(), hit.end(), [](std::uint8_t v) { return v != 0; });
}

CellId cellOf(const Raster& lattice, Point p) {
  CellId c = lattice.locate(p);
  if (c == kNoCell) throw Error(ErrorCode::kInvalidArgument, "query point outside the lab window");
  return c;
}

bool sep(const Raster& lattice, const CellMask& k, Point x, Point y) {
  if (empty(k)) return false;
  return separates(lattice, k, cellOf(lattice, x), cellOf(lattice, y));
}

void requireFree(const Raster& lattice, const CellMask& k, Point x, Point y) {
  if (k[cellOf(lattice, x)] || k[cellOf(lattice, y)])
    throw Error(ErrorCode::kQueryInObstacle, "query point lies in one of the sets");
}

}  // namespace

nlohmann::json LabShape::toJson() const {
  return {{"kind", shapeKindName(kind)}, {"a", {a.x, a.y}}, {"b", {b.x, b.y}}, {"r0", r0},
          {"r1", r1}, {"t0", t0}, {"t1", t1}, {"width", width}};
}

Raster labLattice(const BBox& window, double h) {
  if (!(h > 0)) throw Error(ErrorCode::kInvalidArgument, "spacing must be positive");
  std::array<int, 3> n{static_cast<int>(std::ceil((window.hi.x - window.lo.x) / h - 1e-9)),
                       static_cast<int>(std::ceil((window.hi.y - window.lo.y) / h - 1e-9)), 1};
  if (n[0] <= 0 || n[1] <= 0) throw Error(ErrorCode::kWindowEmpty, "lab window is empty");
  std::vector<std::uint8_t> inside(static_cast<std::size_t>(n[0]) * n[1], 1);
  return rasterFromMask(2, h, window.lo, n, std::move(inside));
}

CellMask rasterizeShapes(const Raster& lattice, const std::vector<LabShape>& shapes) {
  CellMask out(lattice.cellCount(), 0);
  for (CellId c = 0; c < lattice.cellCount(); ++c) {
    Point p = lattice.center(c);
    for (const auto& s : shapes)
      if (shapeContains(s, p, lattice.h())) {
        out[c] = 1;
        break;
      }
  }
  return out;
}

int setComponentCount(const Raster& lattice, const CellMask& set) {
  int count = 0;
  setLabels(lattice, set, count);
  return count;
}

bool withinReach(const Raster& lattice, const CellMask& a, const CellMask& b, double tau) {
  return !empty(nearCells(lattice, a, b, tau));
}

const char* sepOutcomeName(SepOutcome o) {
  switch (o) {
    case SepOutcome::kConclusionHolds: return "ConclusionHolds";
    case SepOutcome::kHypothesisViolated: return "HypothesisViolated";
    case SepOutcome::kCounterexample: return "COUNTEREXAMPLE";
  }
  return "?";
}

UnionResult unionConnected(const Raster& lattice, const CellMask& e0, const std::vector<CellMask>& others,
                           double tau) {
  UnionResult out;
  out.preconditionsMet = setComponentCount(lattice, e0) == 1;
  if (!out.preconditionsMet) out.detail = "E0 is not connected";
  CellMask all = e0;
  for (std::size_t i = 0; i < others.size(); ++i) {
    const auto& e = others[i];
    if (out.preconditionsMet && setComponentCount(lattice, e) != 1) {
      out.preconditionsMet = false;
      out.detail = "set " + std::to_string(i) + " is not connected";
    }
    if (out.preconditionsMet && !withinReach(lattice, e, e0, tau)) {
      out.preconditionsMet = false;
      out.detail = "set " + std::to_string(i) + " does not reach E0";
    }
    all = unite(all, e);
  }
  out.components = setComponentCount(lattice, all);
  out.connected = out.components == 1;
  return out;
}

SepResult janiszewskiCheck(const Raster& lattice, const CellMask& f1, const CellMask& f2, Point x, Point y) {
  CellMask both = unite(f1, f2);
  requireFree(lattice, both, x, y);
  CellMask inter = intersect(f1, f2);
  if (!empty(inter) && setComponentCount(lattice, inter) != 1)
    return {SepOutcome::kHypothesisViolated, "F1 and F2 meet in a disconnected set"};
  if (sep(lattice, f1, x, y)) return {SepOutcome::kHypothesisViolated, "F1 separates x and y"};
  if (sep(lattice, f2, x, y)) return {SepOutcome::kHypothesisViolated, "F2 separates x and y"};
  if (sep(lattice, both, x, y)) return {SepOutcome::kCounterexample, "F1 and F2 together separate x and y"};
  return {SepOutcome::kConclusionHolds, ""};
}

SepResult countableUnionSeparation(const Raster& lattice, const CellMask& t, const std::vector<CellMask>& ks, Point x,
                                   Point y, double tau) {
  CellMask all = t;
  for (const auto& k : ks) all = unite(all, k);
  requireFree(lattice, all, x, y);
  if (!empty(t) && setComponentCount(lattice, t) != 1) return {SepOutcome::kHypothesisViolated, "T is not connected"};
  for (std::size_t i = 0; i < ks.size(); ++i)
    for (std::size_t j = i + 1; j < ks.size(); ++j)
      if (withinReach(lattice, ks[i], ks[j], tau))
        return {SepOutcome::kHypothesisViolated,
                "K" + std::to_string(i) + " and K" + std::to_string(j) + " are not disjoint"};
  for (std::size_t j = 0; j < ks.size(); ++j)
    if (sep(lattice, unite(t, ks[j]), x, y))
      return {SepOutcome::kHypothesisViolated, "T with K" + std::to_string(j) + " separates x and y"};
  if (sep(lattice, all, x, y)) return {SepOutcome::kCounterexample, "the union separates x and y"};
  return {SepOutcome::kConclusionHolds, ""};
}

SepResult nestedSeparation(const Raster& lattice, const std::vector<CellMask>& chain, Point x, Point y) {
  if (chain.empty()) return {SepOutcome::kHypothesisViolated, "empty chain"};
  requireFree(lattice, chain.front(), x, y);
  CellMask inter = chain.front();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (j > 0)
      for (CellId c = 0; c < lattice.cellCount(); ++c)
        if (chain[j][c] && !chain[j - 1][c])
          return {SepOutcome::kHypothesisViolated, "F" + std::to_string(j) + " is not contained in its predecessor"};
    if (!sep(lattice, chain[j], x, y))
      return {SepOutcome::kHypothesisViolated, "F" + std::to_string(j) + " does not separate x and y"};
    inter = intersect(inter, chain[j]);
  }
  if (!sep(lattice, inter, x, y)) return {SepOutcome::kCounterexample, "the intersection does not separate"};
  return {SepOutcome::kConclusionHolds, ""};
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

struct Gen {
  std::mt19937_64 rng;
  double h;
  explicit Gen(unsigned seed, double h) : rng(seed), h(h) {}
  double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  bool coin(double p) { return uni(0, 1) < p; }
  Point point(double extent) { return {uni(-extent, extent), uni(-extent, extent), 0}; }

  LabShape arc() {
    LabShape s;
    s.kind = LabShape::Kind::kArc;
    s.a = point(0.5);
    s.r0 = uni(0.1, 0.45);
    s.t0 = uni(0, 2 * std::numbers::pi);
    s.t1 = s.t0 + uni(0.4, 2 * std::numbers::pi);
    s.width = coin(0.5) ? 0.0 : uni(0, 2 * h);
    return s;
  }
  LabShape segment() {
    LabShape s;
    s.kind = LabShape::Kind::kSegment;
    s.a = point(0.7);
    s.b = s.a + Point{uni(-0.6, 0.6), uni(-0.6, 0.6), 0};
    s.width = coin(0.5) ? 0.0 : uni(0, 2 * h);
    return s;
  }
  LabShape disk() {
    LabShape s;
    s.kind = LabShape::Kind::kDisk;
    s.a = point(0.6);
    s.r0 = uni(0.03, 0.2);
    return s;
  }
  LabShape any() {
    int k = integer(0, 2);
    return k == 0 ? arc() : k == 1 ? segment() : disk();
  }
};

nlohmann::json shapesJson(const std::vector<LabShape>& shapes) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : shapes) out.push_back(s.toJson());
  return out;
}

// Random query point at least sep*h away from the set; false after retries.
bool freePoint(Gen& g, const Raster& lattice, const CellMask& set, double sep, Point& out) {
  int span = static_cast<int>(std::ceil(sep));
  for (int attempt = 0; attempt < 50; ++attempt) {
    Point p = g.point(0.95);
    CellId c = lattice.locate(p);
    if (c == kNoCell || set[c]) continue;
    bool clear = true;
    forEachNear(lattice, c, span, [&](CellId q) {
      if (set[q] && dist(lattice.center(q), p) <= sep * g.h) clear = false;
    });
    if (clear) {
      out = p;
      return true;
    }
  }
  return false;
}

struct Instance {
  SepResult result;
  bool valid = false;  // generated within the separation rules
  nlohmann::json dump;
};

Instance janiszewskiInstance(Gen& g, const Raster& lattice, double sepH) {
  Instance inst;
  std::vector<LabShape> s1, s2;
  for (int i = g.integer(1, 2); i-- > 0;) s1.push_back(g.any());
  for (int i = g.integer(1, 2); i-- > 0;) s2.push_back(g.any());
  CellMask f1 = rasterizeShapes(lattice, s1), f2 = rasterizeShapes(lattice, s2);
  if (!cleanContact(lattice, f1, f2, sepH)) return inst;
  Point x, y;
  CellMask both = unite(f1, f2);
  if (!freePoint(g, lattice, both, sepH, x) || !freePoint(g, lattice, both, sepH, y)) return inst;
  inst.valid = true;
  inst.result = janiszewskiCheck(lattice, f1, f2, x, y);
  inst.dump = {{"F1", shapesJson(s1)}, {"F2", shapesJson(s2)}, {"x", {x.x, x.y}}, {"y", {y.x, y.y}}};
  return inst;
}

Instance countableInstance(Gen& g, const Raster& lattice, double sepH, int maxSets) {
  Instance inst;
  std::vector<LabShape> ts;
  if (g.coin(0.2)) {
    LabShape p;
    p.kind = LabShape::Kind::kPoint;
    p.a = g.point(0.6);
    ts.push_back(p);
  } else {
    ts.push_back(g.coin(0.5) ? g.arc() : g.segment());
  }
  CellMask t = rasterizeShapes(lattice, ts);
  int m = g.integer(1, std::max(1, maxSets));
  std::vector<std::vector<LabShape>> kShapes;
  std::vector<CellMask> ks;
  for (int j = 0; j < m; ++j) {
    std::vector<LabShape> s{g.any()};
    CellMask k = rasterizeShapes(lattice, s);
    bool ok = cleanContact(lattice, t, k, sepH);
    for (const auto& other : ks)
      if (ok && withinReach(lattice, k, other, sepH)) ok = false;
    if (!ok) continue;
    ks.push_back(std::move(k));
    kShapes.push_back(std::move(s));
  }
  if (ks.empty()) return inst;
  CellMask all = t;
  for (const auto& k : ks) all = unite(all, k);
  Point x, y;
  if (!freePoint(g, lattice, all, sepH, x) || !freePoint(g, lattice, all, sepH, y)) return inst;
  inst.valid = true;
  inst.result = countableUnionSeparation(lattice, t, ks, x, y);
  nlohmann::json kj = nlohmann::json::array();
  for (const auto& s : kShapes) kj.push_back(shapesJson(s));
  inst.dump = {{"T", shapesJson(ts)}, {"K", kj}, {"x", {x.x, x.y}}, {"y", {y.x, y.y}}};
  return inst;
}

Instance nestedInstance(Gen& g, const Raster& lattice, double sepH, int maxLevels) {
  Instance inst;
  int levels = g.integer(2, std::max(2, std::min(6, maxLevels)));
  Point c = g.point(0.3);
  double rho = g.uni(0.15, 0.45);
  // Innermost separator: a circle band around c, sometimes with a gap.
  LabShape core;
  core.kind = LabShape::Kind::kArc;
  core.a = c;
  core.r0 = rho;
  core.t0 = g.uni(0, 2 * std::numbers::pi);
  core.t1 = core.t0 + (g.coin(0.8) ? 2 * std::numbers::pi : g.uni(5.0, 6.0));
  core.width = g.uni(0, 2 * g.h);
  std::vector<std::vector<LabShape>> shapes(levels);
  shapes[levels - 1] = {core};
  for (int j = levels - 2; j >= 0; --j) {
    shapes[j] = shapes[j + 1];
    LabShape band;
    band.kind = LabShape::Kind::kAnnulus;
    band.a = c;
    double w = (levels - 1 - j) * g.uni(1.0, 3.0) * g.h;
    band.r0 = rho - w;
    band.r1 = rho + w;
    shapes[j].push_back(band);
    if (g.coin(0.5)) shapes[j].push_back(g.disk());
  }
  std::vector<CellMask> chain;
  for (const auto& s : shapes) chain.push_back(rasterizeShapes(lattice, s));
  Point x = c, y;
  CellId xc = lattice.locate(x);
  if (xc == kNoCell || chain.front()[xc]) return inst;
  if (!freePoint(g, lattice, chain.front(), sepH, y)) return inst;
  inst.valid = true;
  inst.result = nestedSeparation(lattice, chain, x, y);
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& s : shapes) lv.push_back(shapesJson(s));
  inst.dump = {{"levels", lv}, {"x", {x.x, x.y}}, {"y", {y.x, y.y}}};
  return inst;
}

}  // namespace

bool SuiteReport::pass() const { return counterexamples == 0 && satisfying > 0; }

nlohmann::json SuiteReport::toJson() const {
  return {{"suite", suite},
          {"attempts", attempts},
          {"satisfying", satisfying},
          {"conclusionHolds", conclusionHolds},
          {"hypothesisViolated", hypothesisViolated},
          {"counterexamples", counterexamples},
          {"failures", failures},
          {"seconds", seconds},
          {"pass", pass()}};
}

std::vector<std::string> separationSuites() { return {"union", "janiszewski", "countable", "nested"}; }

SuiteReport runSeparationSuite(const std::string& suite, const SuiteOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = suite;
  Raster lattice = labLattice(BBox{{-1, -1, 0}, {1, 1, 0}}, opts.h);
  Gen g(opts.seed, opts.h);
  const double sepH = opts.minSeparation;
  while (rep.satisfying < opts.count && rep.attempts < opts.maxAttempts) {
    ++rep.attempts;
    Instance inst;
    if (suite == "janiszewski") {
      inst = janiszewskiInstance(g, lattice, sepH);
    } else if (suite == "countable") {
      inst = countableInstance(g, lattice, sepH, opts.maxSets);
    } else if (suite == "nested") {
      inst = nestedInstance(g, lattice, sepH, opts.maxSets);
    } else if (suite == "union") {
      LabShape e0 = g.disk();
      std::vector<LabShape> spokes;
      std::vector<CellMask> others;
      int m = g.integer(1, 50);
      int detached = g.coin(0.2) ? g.integer(0, m - 1) : -1;
      for (int i = 0; i < m; ++i) {
        double ang = g.uni(0, 2 * std::numbers::pi);
        LabShape s;
        s.kind = LabShape::Kind::kSegment;
        Point dir{std::cos(ang), std::sin(ang), 0};
        s.a = e0.a + (e0.r0 + (i == detached ? (sepH + 1) * opts.h : 0.0)) * dir;
        s.b = s.a + g.uni(0.05, 0.4) * dir;
        spokes.push_back(s);
        others.push_back(rasterizeShapes(lattice, {s}));
      }
      UnionResult u = unionConnected(lattice, rasterizeShapes(lattice, {e0}), others);
      inst.valid = true;
      inst.result.outcome = !u.preconditionsMet ? SepOutcome::kHypothesisViolated
                            : u.connected       ? SepOutcome::kConclusionHolds
                                                : SepOutcome::kCounterexample;
      inst.result.detail = u.detail;
      inst.dump = {{"E0", e0.toJson()}, {"spokes", shapesJson(spokes)}};
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown separation suite: " + suite);
    }
    if (!inst.valid) continue;
    switch (inst.result.outcome) {
      case SepOutcome::kHypothesisViolated: ++rep.hypothesisViolated; break;
      case SepOutcome::kConclusionHolds:
        ++rep.satisfying;
        ++rep.conclusionHolds;
        break;
      case SepOutcome::kCounterexample:
        ++rep.satisfying;
        ++rep.counterexamples;
        inst.dump["detail"] = inst.result.detail;
        rep.failures.push_back(inst.dump);
        break;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace mazu
