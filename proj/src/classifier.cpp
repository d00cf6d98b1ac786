#include "mazu/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mazu/error.hpp"

namespace mazu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json pointJson(Point p, int dim) {
  if (dim == 3) return {p.x, p.y, p.z};
  return {p.x, p.y};
}

int cantorGenFor(const ThinObstacle& t, double h) {
  if (const auto* c = std::get_if<CantorObs>(&t.shape)) return cantorGenerationFor(c->length, h);
  return 0;
}

BBox segmentBox(Point a, Point b) {
  return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
          {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
}

struct LocalFlood {
  bool ok = false;
  double nearest = kInf;
  std::vector<Point> closest;  // a few nearest centers, nearest first
};

// Floods the domain at spacing hl inside `window` and B(x0, r), starting from
// the local cell that contains `seed` (or a neighbor reachable from it).
LocalFlood localFlood(const DomainSpec& spec, Point x0, double r, Point seed, BBox window, double hl,
                      std::size_t cap, int keep) {
  LocalFlood out;
  double cells = 1.0;
  for (int a = 0; a < spec.dim; ++a) cells *= std::ceil((window.hi[a] - window.lo[a]) / hl) + 1.0;
  if (cells > static_cast<double>(cap)) return out;
  Raster local = rasterize(spec, window, hl);
  CellId start = local.locate(seed);
  if (start == kNoCell) return out;
  if (!local.inside(start) || !visibleSegment(spec, seed, local.center(start), hl)) {
    CellId pick = kNoCell;
    auto ijk = local.coords(start);
    const auto& n = local.size();
    int kz = spec.dim == 3 ? 1 : 0;
    for (int dk = -kz; dk <= kz && pick == kNoCell; ++dk)
      for (int dj = -1; dj <= 1 && pick == kNoCell; ++dj)
        for (int di = -1; di <= 1 && pick == kNoCell; ++di) {
          int i = ijk[0] + di, j = ijk[1] + dj, k = ijk[2] + dk;
          if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
          CellId c = local.index(i, j, k);
          if (local.inside(c) && visibleSegment(spec, seed, local.center(c), hl)) pick = c;
        }
    if (pick == kNoCell) return out;
    start = pick;
  }
  CellMask allowed(local.cellCount(), 0);
  for (CellId c = 0; c < local.cellCount(); ++c) allowed[c] = dist(local.center(c), x0) <= r;
  if (!allowed[start]) return out;
  CellMask reached = floodFrom(local, start, allowed);
  std::vector<std::pair<double, CellId>> best;
  for (CellId c = 0; c < local.cellCount(); ++c)
    if (reached[c]) best.push_back({dist(local.center(c), x0), c});
  std::size_t k = std::min<std::size_t>(keep, best.size());
  std::partial_sort(best.begin(), best.begin() + k, best.end());
  out.ok = true;
  out.nearest = best.front().first;
  for (std::size_t i = 0; i < k; ++i) out.closest.push_back(local.center(best[i].second));
  return out;
}

bool anyVisible(const DomainSpec& spec, const std::vector<Point>& pts, Point x0, double h) {
  for (Point p : pts)
    if (visibleSegment(spec, p, x0, h)) return true;
  return false;
}

// Decides closure contact of one raster component with x0.
ContactKind certifyContact(const DomainSpec& spec, const Raster& raster, const std::vector<CellId>& cells, Point x0,
                           double r, const AnalysisOptions& opts) {
  const double h = raster.h();
  std::vector<std::pair<double, CellId>> byDist;
  byDist.reserve(cells.size());
  for (CellId c : cells) byDist.push_back({dist(raster.center(c), x0), c});
  std::size_t k = std::min<std::size_t>(opts.visibilityCandidates, byDist.size());
  std::partial_sort(byDist.begin(), byDist.begin() + k, byDist.end());
  std::vector<Point> nearest;
  for (std::size_t i = 0; i < k; ++i) nearest.push_back(raster.center(byDist[i].second));
  if (anyVisible(spec, nearest, x0, h)) return ContactKind::kVisibility;

  // Cheap probe: does a finer raster around the nearest cells get closer?
  double d0 = byDist.front().first;
  Point p0 = nearest.front();
  bool promising = false;
  for (std::size_t i = 0; i < std::min<std::size_t>(3, nearest.size()) && !promising; ++i) {
    BBox w{nearest[i] - Point{3 * h, 3 * h, 3 * h}, nearest[i] + Point{3 * h, 3 * h, 3 * h}};
    if (spec.dim == 2) w.lo.z = w.hi.z = 0.0;
    LocalFlood f = localFlood(spec, x0, r, nearest[i], w, h / 4, opts.localCellCap, 1);
    if (f.ok && f.nearest < 0.9 * d0) {
      promising = true;
      p0 = nearest[i];
    }
  }
  if (!promising) return ContactKind::kNone;

  // Refine until x0 becomes visible or the distance stalls. A component at
  // positive distance D converges to D; one touching x0 keeps shrinking.
  double d = d0, hl = h;
  Point p = p0;
  for (int level = 0; level < opts.refineLevels; ++level) {
    double margin = 2 * hl + 0.25 * d;
    BBox w = segmentBox(p, x0).inflated(margin);
    if (spec.dim == 2) w.lo.z = w.hi.z = 0.0;
    double next = hl / 4;
    LocalFlood f = localFlood(spec, x0, r, p, w, next, opts.localCellCap, opts.visibilityCandidates);
    if (!f.ok) {
      next = hl / 2;
      f = localFlood(spec, x0, r, p, w, next, opts.localCellCap, opts.visibilityCandidates);
      if (!f.ok) break;
    }
    if (anyVisible(spec, f.closest, x0, next)) return ContactKind::kRefinement;
    if (f.nearest > 0.9 * d) return ContactKind::kNone;
    d = f.nearest;
    p = f.closest.front();
    hl = next;
  }
  return d <= 0.25 * d0 ? ContactKind::kRefinement : ContactKind::kNone;
}

}  // namespace

SpecFactory fixedSpec(DomainSpec spec) {
  return [spec = std::move(spec)](double) { return spec; };
}

const char* contactKindName(ContactKind k) {
  switch (k) {
    case ContactKind::kNone: return "none";
    case ContactKind::kVisibility: return "visibility";
    case ContactKind::kRefinement: return "refinement";
  }
  return "?";
}

const char* componentRoleName(ComponentRole r) {
  switch (r) {
    case ComponentRole::kG: return "G";
    case ComponentRole::kH: return "H";
    case ComponentRole::kUnresolvedContact: return "unresolved-contact";
  }
  return "?";
}

const char* triName(Tri t) {
  switch (t) {
    case Tri::kFalse: return "false";
    case Tri::kTrue: return "true";
    case Tri::kInconclusive: return "inconclusive";
  }
  return "?";
}

bool visibleSegment(const DomainSpec& spec, Point a, Point b, double h) {
  double len = dist(a, b);
  if (len == 0.0) return true;
  Point end = b + (std::min(1e-9, 0.5 * len) / len) * (a - b);
  int n = std::max(2, static_cast<int>(std::ceil(len / (0.25 * h))));
  for (int i = 0; i <= n; ++i) {
    Point q = a + (static_cast<double>(i) / n) * (end - a);
    if (!spec.solid.contains(q, spec.dim)) return false;
  }
  BBox sb = segmentBox(a, end);
  for (const auto& t : spec.thin) {
    if (!t.bounds().intersects(sb, spec.dim)) continue;
    if (t.hitsSegment(a, end, spec.dim, cantorGenFor(t, h))) return false;
  }
  return true;
}

std::vector<double> deltaLadder(double r, double floor) {
  std::vector<double> out;
  for (double d = r / 2; d >= floor * (1 - 1e-12); d /= 2) out.push_back(d);
  if (out.empty()) out.push_back(r / 2);
  return out;
}

nlohmann::json BallAnalysis::toJson() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components)
    comps.push_back({{"id", c.id},
                     {"cells", c.cellCount},
                     {"minDistance", c.minDistance},
                     {"diameter", c.diameter},
                     {"resolved", c.resolved},
                     {"contact", contactKindName(c.contact)},
                     {"role", componentRoleName(c.role)}});
  return {{"x0", pointJson(x0, dim)},
          {"r", r},
          {"h", h},
          {"N", N},
          {"G", gs},
          {"H", hs},
          {"unresolvedContact", unresolved},
          {"closureRadius", closureRadius},
          {"x0InClosureH", x0InClosureH},
          {"nearestH", std::isfinite(nearestH) ? nlohmann::json(nearestH) : nlohmann::json(nullptr)},
          {"totalComponents", totalComponents()},
          {"components", comps}};
}

BallAnalysis analyzeBall(const DomainSpec& spec, Point x0, double r, double h, const AnalysisOptions& opts) {
  if (!(r > 0.0) || !(h > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius and spacing must be positive");
  if (h > r / 32.0 * (1 + 1e-12)) throw Error(ErrorCode::kResolutionTooCoarse, "analysis needs h <= r/32");
  if (spec.dim == 2) x0.z = 0.0;
  BallAnalysis out;
  out.x0 = x0;
  out.r = r;
  out.h = h;
  out.dim = spec.dim;
  auto raster = std::make_shared<Raster>(rasterize(spec, windowAround(x0, 1.25 * r, spec.dim), h));
  bool thinNearby = false;
  const double nearTol = std::sqrt(static_cast<double>(spec.dim)) * h;
  for (const auto& obs : spec.thin) {
    const auto* cz = std::get_if<CantorObs>(&obs.shape);
    int gen = cantorGenerationFor(cz ? cz->length : 1.0, h);
    if (obs.containsPoint(x0, spec.dim, gen, nearTol)) thinNearby = true;
  }
  if (!isBoundaryPoint(*raster, x0, r, thinNearby)) throw Error(ErrorCode::kNotBoundary, "x0 fails the boundary-sample test");
  CellMask ball(raster->cellCount(), 0);
  for (CellId c = 0; c < raster->cellCount(); ++c) ball[c] = raster->inside(c) && dist(raster->center(c), x0) <= r;
  auto labeling = std::make_shared<ComponentLabeling>(components(*raster, ball));

  out.closureRadius = deltaLadder(r, 8 * h).back();
  out.nearestH = kInf;
  for (int id = 0; id < labeling->componentCount; ++id) {
    const auto& cells = labeling->componentCells[id];
    ComponentSummary s;
    s.id = id;
    s.cellCount = cells.size();
    s.diameter = labeling->componentDiameterBound[id];
    s.minDistance = minCenterDistance(*raster, cells, x0);
    for (CellId c : cells) {
      int links = 0;
      raster->forEachLinked(c, [&](CellId nb) { links += ball[nb] ? 1 : 0; });
      if (links == 2 * spec.dim) {
        s.resolved = true;
        break;
      }
    }
    s.contact = certifyContact(spec, *raster, cells, x0, r, opts);
    if (s.contact == ContactKind::kNone) {
      s.role = ComponentRole::kH;
      out.hs.push_back(id);
      out.nearestH = std::min(out.nearestH, s.minDistance);
    } else if (s.resolved) {
      s.role = ComponentRole::kG;
      out.gs.push_back(id);
    } else {
      s.role = ComponentRole::kUnresolvedContact;
      out.unresolved.push_back(id);
    }
    out.components.push_back(s);
  }
  out.N = static_cast<int>(out.gs.size());
  out.x0InClosureH = out.nearestH <= out.closureRadius;
  out.raster = raster;
  out.labeling = labeling;
  return out;
}

nlohmann::json Ladder::toJson() const {
  nlohmann::json scalesJson = nlohmann::json::array(), refinedJson = nlohmann::json::array();
  for (const auto& s : scales) scalesJson.push_back(s.toJson());
  for (const auto& s : refined) refinedJson.push_back(s ? s->toJson() : nlohmann::json(nullptr));
  return {{"scales", scalesJson},
          {"refined", refinedJson},
          {"monotonicity",
           {{"checked", monotonicity.checked}, {"holds", monotonicity.holds}, {"exceptions", monotonicity.exceptions}}}};
}

Ladder scaleLadder(const SpecFactory& factory, Point x0, double r0, int kMax, const LadderPolicy& policy,
                   const AnalysisOptions& opts) {
  if (kMax < 0) throw Error(ErrorCode::kInvalidArgument, "kMax must be nonnegative");
  Ladder ladder;
  ladder.x0 = x0;
  for (int k = 0; k <= kMax; ++k) {
    double r = std::ldexp(r0, -k);
    double h = r / policy.hRatio;
    ladder.scales.push_back(analyzeBall(factory(h), x0, r, h, opts));
    const BallAnalysis& b = ladder.scales.back();
    bool refine = (k == 0 && policy.refineTop) || (b.x0InClosureH && policy.refineClosure);
    if (refine)
      ladder.refined.push_back(analyzeBall(factory(h / 2), x0, r, h / 2, opts));
    else
      ladder.refined.push_back(std::nullopt);
  }
  auto& m = ladder.monotonicity;
  m.checked = std::none_of(ladder.scales.begin(), ladder.scales.end(),
                           [](const BallAnalysis& b) { return b.x0InClosureH; });
  for (std::size_t k = 0; k + 1 < ladder.scales.size(); ++k) {
    const auto& big = ladder.scales[k];
    const auto& small = ladder.scales[k + 1];
    if (big.x0InClosureH || small.x0InClosureH) continue;
    if (big.N > small.N) {
      m.holds = false;
      std::ostringstream os;
      os << "N(" << big.r << ")=" << big.N << " > N(" << small.r << ")=" << small.N;
      m.exceptions.push_back(os.str());
    }
  }
  return ladder;
}

std::string Classification::label() const {
  switch (kind) {
    case Kind::kNConnected: return "NConnected(" + std::to_string(N) + ")";
    case Kind::kFinitelyConnectedEvidence: return "FinitelyConnectedEvidence";
    case Kind::kNotFinitelyConnectedEvidence: return "NotFinitelyConnectedEvidence";
    case Kind::kInconclusive: return "Inconclusive";
  }
  return "?";
}

Classification classify(const Ladder& ladder) {
  Classification out;
  const auto& s = ladder.scales;
  if (s.empty()) return out;
  const int K = static_cast<int>(s.size());
  bool persistentClosure = false;
  for (int k = 0; k < K; ++k)
    if (s[k].x0InClosureH && ladder.refined[k] && ladder.refined[k]->x0InClosureH) {
      persistentClosure = true;
      out.reasons.push_back("x0 in closure(H) at r=" + std::to_string(s[k].r) + " persists at h/2");
    }
  bool growing = K >= 3 && s[K - 3].N < s[K - 2].N && s[K - 2].N < s[K - 1].N;
  if (growing) out.reasons.push_back("N strictly increases over the last three scales");
  bool refinementGrowth = false;
  for (int k = 0; k < K; ++k)
    if (ladder.refined[k] && !s[k].x0InClosureH && ladder.refined[k]->N > s[k].N) {
      refinementGrowth = true;
      out.reasons.push_back("N(r=" + std::to_string(s[k].r) + ") grows from " + std::to_string(s[k].N) + " to " +
                            std::to_string(ladder.refined[k]->N) + " when h is halved");
    }
  if (persistentClosure || growing || refinementGrowth) {
    out.kind = Classification::Kind::kNotFinitelyConnectedEvidence;
    out.N = s.back().N;
    return out;
  }
  bool closureFree = std::none_of(s.begin(), s.end(), [](const BallAnalysis& b) { return b.x0InClosureH; });
  if (!closureFree) {
    out.reasons.push_back("x0 in closure(H) at some scale without confirmation at h/2");
    return out;
  }
  // Stabilization window: ceil(kMax / 2) scales.
  int window = std::max(1, (K - 1 + 1) / 2);
  bool stable = true;
  for (int k = K - window; k < K; ++k) stable = stable && s[k].N == s.back().N;
  if (stable) {
    out.kind = Classification::Kind::kNConnected;
    out.N = s.back().N;
    out.reasons.push_back("N stable over the last " + std::to_string(window) + " scales");
  } else {
    out.kind = Classification::Kind::kFinitelyConnectedEvidence;
    out.N = s.back().N;
    out.reasons.push_back("N bounded but not stabilized");
  }
  return out;
}

std::string AccessVerdict::label() const {
  switch (kind) {
    case Kind::kAccessible: return "Accessible";
    case Kind::kNotAccessibleAtScale: return "NotAccessibleAtScale";
    case Kind::kInconclusive: return "Inconclusive";
  }
  return "?";
}

AccessVerdict locallyAccessible(const BallAnalysis& ball) {
  AccessVerdict out;
  const Raster& raster = *ball.raster;
  const auto& lab = *ball.labeling;
  std::vector<double> deltas = deltaLadder(ball.r, 8 * ball.h);
  // Distance from x0 to the nearest non-contact cell, and to any cell.
  double nearestAny = kInf;
  for (CellId c = 0; c < raster.cellCount(); ++c)
    if (lab.labels[c] >= 0) nearestAny = std::min(nearestAny, dist(raster.center(c), ball.x0));
  if (nearestAny > deltas.back()) return out;
  for (double d : deltas)
    if (ball.nearestH > d) {
      out.kind = AccessVerdict::Kind::kAccessible;
      out.delta = d;
      return out;
    }
  out.kind = AccessVerdict::Kind::kNotAccessibleAtScale;
  out.delta = deltas.back();
  return out;
}

AccessVerdict locallyAccessible(const DomainSpec& spec, Point x0, double r, double h) {
  return locallyAccessible(analyzeBall(spec, x0, r, h));
}

namespace {


Tri conj(Tri a, Tri b) {
  if (a == Tri::kFalse || b == Tri::kFalse) return Tri::kFalse;
  if (a == Tri::kInconclusive) return b;
  if (b == Tri::kInconclusive) return a;
  return Tri::kTrue;
}

SetFlags conjFlags(const SetFlags& a, const SetFlags& b) {
  SetFlags out;
  out.imKleinen = conj(a.imKleinen, b.imKleinen);
  out.locallyConnected = conj(a.locallyConnected, b.locallyConnected);
  out.witnessDelta = std::min(a.witnessDelta, b.witnessDelta);
  return out;
}

nlohmann::json setJson(const SetFlags& f) {
  // Path variants coincide with the plain ones on graphs.
  return {{"connectedImKleinen", triName(f.imKleinen)},
          {"pathConnectedImKleinen", triName(f.imKleinen)},
          {"locallyConnected", triName(f.locallyConnected)},
          {"locallyPathConnected", triName(f.locallyConnected)},
          {"witnessDelta", f.witnessDelta},
          {"pathVariants", "graph-scale"}};
}

struct Statement {
  std::string name;
  Tri value;
};

std::vector<Statement> statements(const ScaleFlags& f) {
  return {{"omega-locally-connected", f.omegaLocallyConnected},
          {"finitely-connected", f.finitelyConnected},
          {"x0-not-in-closure-H", f.closureFree},
          {"omega-x0.locally-path-connected", f.omegaX0.locallyConnected},
          {"omega-x0.locally-connected", f.omegaX0.locallyConnected},
          {"omega-x0.path-connected-im-kleinen", f.omegaX0.imKleinen},
          {"omega-x0.connected-im-kleinen", f.omegaX0.imKleinen},
          {"locally-accessible", f.accessible},
          {"boundary.locally-path-connected", f.boundary.locallyConnected},
          {"boundary.locally-connected", f.boundary.locallyConnected},
          {"boundary.path-connected-im-kleinen", f.boundary.imKleinen},
          {"boundary.connected-im-kleinen", f.boundary.imKleinen},
          {"complement.locally-path-connected", f.complement.locallyConnected},
          {"complement.locally-connected", f.complement.locallyConnected},
          {"complement.path-connected-im-kleinen", f.complement.imKleinen},
          {"complement.connected-im-kleinen", f.complement.imKleinen}};
}

// premise index -> conclusion index in statements()
const std::vector<std::pair<int, int>>& lattice() {
  static const std::vector<std::pair<int, int>> edges = [] {
    std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}};
    // closure-free <=> the four omega-x0 statements <=> accessible
    for (int i = 2; i < 7; ++i) {
      e.push_back({i, i + 1});
      e.push_back({i + 1, i});
    }
    const int blpc = 8, blc = 9, bpk = 10, bk = 11, clpc = 12, clc = 13, cpk = 14, ck = 15;
    for (auto p : {std::pair{blpc, blc}, {blpc, bpk}, {blpc, clpc}, {blc, bk}, {blc, clc}, {clpc, cpk}, {clpc, clc},
                   {clc, ck}, {cpk, ck}, {bpk, bk}, {bpk, cpk}, {bk, ck}})
      e.push_back(p);
    return e;
  }();
  return edges;
}

}  // namespace

nlohmann::json ScaleFlags::toJson() const {
  return {{"r", r},
          {"h", h},
          {"locallyAccessible", triName(accessible)},
          {"x0NotInClosureH", triName(closureFree)},
          {"finitelyConnected", triName(finitelyConnected)},
          {"omegaLocallyConnected", triName(omegaLocallyConnected)},
          {"omegaUnionX0", setJson(omegaX0)},
          {"boundary", setJson(boundary)},
          {"complement", setJson(complement)}};
}

std::vector<std::string> implicationAudit(const BoundaryVerdict& verdict) {
  std::vector<std::string> out;
  auto check = [&](const ScaleFlags& f, const std::string& where) {
    auto st = statements(f);
    for (auto [p, c] : lattice())
      if (st[p].value == Tri::kTrue && st[c].value == Tri::kFalse)
        out.push_back(where + ": " + st[p].name + " holds but " + st[c].name + " fails");
  };
  for (const auto& f : verdict.flags) {
    std::ostringstream os;
    os << "r=" << f.r << ",h=" << f.h;
    check(f, os.str());
  }
  check(verdict.aggregate, "aggregate");
  return out;
}

nlohmann::json BoundaryVerdict::toJson() const {
  nlohmann::json access = nlohmann::json::array(), flagsJson = nlohmann::json::array();
  for (const auto& a : accessibility) access.push_back({{"verdict", a.label()}, {"delta", a.delta}});
  for (const auto& f : flags) flagsJson.push_back(f.toJson());
  int dim = ladder.scales.empty() ? 2 : ladder.scales.front().dim;
  return {{"x0", pointJson(x0, dim)},
          {"classification", {{"label", classification.label()}, {"N", classification.N},
                              {"reasons", classification.reasons}}},
          {"ladder", ladder.toJson()},
          {"accessibility", access},
          {"flags", flagsJson},
          {"aggregate", aggregate.toJson()},
          {"auditViolations", auditViolations}};
}

BoundaryVerdict classifyPoint(const SpecFactory& factory, Point x0, double r0, int kMax, const LadderPolicy& policy,
                              const AnalysisOptions& opts) {
  BoundaryVerdict v;
  v.x0 = x0;
  v.ladder = scaleLadder(factory, x0, r0, kMax, policy, opts);
  v.classification = classify(v.ladder);
  bool first = true;
  for (const auto& ball : v.ladder.scales) {
    v.accessibility.push_back(locallyAccessible(ball));
    ScaleFlags f = pointwiseFlags(factory(ball.h), ball);
    v.flags.push_back(f);
    if (first) {
      v.aggregate = f;
      first = false;
    } else {
      v.aggregate.accessible = conj(v.aggregate.accessible, f.accessible);
      v.aggregate.closureFree = conj(v.aggregate.closureFree, f.closureFree);
      v.aggregate.omegaLocallyConnected = conj(v.aggregate.omegaLocallyConnected, f.omegaLocallyConnected);
      v.aggregate.omegaX0 = conjFlags(v.aggregate.omegaX0, f.omegaX0);
      v.aggregate.boundary = conjFlags(v.aggregate.boundary, f.boundary);
      v.aggregate.complement = conjFlags(v.aggregate.complement, f.complement);
    }
  }
  v.aggregate.r = v.ladder.scales.back().r;
  v.aggregate.h = v.ladder.scales.back().h;
  switch (v.classification.kind) {
    case Classification::Kind::kNConnected:
    case Classification::Kind::kFinitelyConnectedEvidence:
      v.aggregate.finitelyConnected = Tri::kTrue;
      break;
    case Classification::Kind::kNotFinitelyConnectedEvidence:
      v.aggregate.finitelyConnected = Tri::kFalse;
      break;
    case Classification::Kind::kInconclusive:
      v.aggregate.finitelyConnected = Tri::kInconclusive;
      break;
  }
  v.auditViolations = implicationAudit(v);
  return v;
}

}  // namespace mazu
