#include "mazu/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <thread>

#include "mazu/error.hpp"

namespace mazu {

namespace {

Expectation expect(std::string key, bool value, std::string claim) {
  return {std::move(key), value ? Expected::kTrue : Expected::kFalse, 0, std::move(claim)};
}

Expectation expectN(std::string key, int n, std::string claim) {
  return {std::move(key), Expected::kTrue, n, std::move(claim)};
}

Expectation notCheckable(std::string key, std::string claim) {
  return {std::move(key), Expected::kNotMachineCheckable, 0, std::move(claim)};
}

DomainSpec base2d(const std::string& name, Point lo, Point hi) {
  DomainSpec s;
  s.name = name;
  s.dim = 2;
  s.solid = CsgNode::box(lo, hi);
  s.declaredBox = {lo, hi};
  return s;
}

ThinObstacle planar(PlanarThin shape) { return ThinObstacle{std::move(shape), std::nullopt}; }

ThinObstacle extruded(PlanarThin shape) {
  return ThinObstacle{std::move(shape), ZRange{0.0, 1.0, true, false}};
}

// ---------------------------------------------------------------------------
// 2D entries

CorpusEntry unitSquare() {
  CorpusEntry e;
  e.name = "unit-square";
  e.description = "open unit square";
  e.truncation = "none";
  e.factory = [](double) { return base2d("unit-square", {0, 0}, {1, 1}); };
  for (auto [label, p] : {std::pair{"corner", Point{0, 0}}, std::pair{"edge-midpoint", Point{0, 0.5}}}) {
    ProbePoint q{label, p, 0.2, 4, {}};
    q.expectations = {expectN("nConnected", 1, "one approach direction"),
                      expect("finitelyConnected", true, "convex domain"),
                      expect("locallyAccessible", true, "convex domain"),
                      expect("omegaLocallyConnected", true, "convex domain"),
                      expect("omegaUnionX0LocallyConnected", true, "convex domain"),
                      expect("boundaryLocallyConnected", true, "boundary is a polygon"),
                      expect("complementLocallyConnected", true, "complement is a closed half-plane locally")};
    e.probes.push_back(q);
  }
  return e;
}

CorpusEntry slitDisc() {
  CorpusEntry e;
  e.name = "slit-disc";
  e.description = "unit disc minus the closed radius from (-1,0) to the center";
  e.truncation = "none";
  e.factory = [](double) {
    DomainSpec s;
    s.name = "slit-disc";
    s.dim = 2;
    s.solid = CsgNode::ball({0, 0}, 1.0);
    s.thin.push_back(planar(SegmentObs{{-1, 0}, {0, 0}}));
    s.declaredBox = {{-1, -1}, {1, 1}};
    return s;
  };
  ProbePoint mid{"slit-interior", {-0.5, 0}, 0.4, 4, {}};
  mid.expectations = {expectN("nConnected", 2, "the slit has two sides"),
                      expect("finitelyConnected", true, "finitely connected at every boundary point"),
                      expect("locallyAccessible", true, "finitely connected points are accessible"),
                      expect("omegaLocallyConnected", false, "not locally connected on the slit")};
  ProbePoint tip{"slit-tip", {0, 0}, 0.4, 4, {}};
  tip.expectations = {expectN("nConnected", 1, "the domain wraps around the tip"),
                      expect("finitelyConnected", true, "finitely connected at every boundary point")};
  ProbePoint top{"circle", {0, 1}, 0.4, 4, {}};
  top.expectations = {expectN("nConnected", 1, "smooth boundary point"),
                      expect("finitelyConnected", true, "finitely connected at every boundary point")};
  e.probes = {mid, tip, top};
  return e;
}

CorpusEntry combI() {
  CorpusEntry e;
  e.name = "comb-I";
  e.description = "(-1,1)x(0,2) minus {1/2,1/3,...,0}x(0,1]";
  e.truncation = "none: the teeth are an exact infinite family";
  e.factory = [](double) {
    DomainSpec s = base2d("comb-I", {-1, 0}, {1, 2});
    s.thin.push_back(planar(TeethObs{1.0, 2, true, 0.0, 1.0}));
    return s;
  };
  ProbePoint p{"base-of-limit-tooth", {0, 0}, 0.3, 4, {}};
  p.expectations = {expectN("nAllScales", 1, "one component reaches x0 at every radius"),
                    expect("finitelyConnected", false, "slivers between teeth accumulate at x0")};
  e.probes = {p};
  return e;
}

CorpusEntry combII() {
  CorpusEntry e;
  e.name = "comb-II";
  e.description = "(0,2)^2 minus {1,1/2,1/3,...}x(0,1]";
  e.truncation = "none: the teeth are an exact infinite family";
  e.factory = [](double) {
    DomainSpec s = base2d("comb-II", {0, 0}, {2, 2});
    s.thin.push_back(planar(TeethObs{1.0, 1, false, 0.0, 1.0}));
    return s;
  };
  ProbePoint x1{"x1-top-of-limit", {0, 1}, 0.25, 3, {}};
  x1.expectations = {expect("omegaLocallyConnected", true, "the domain is locally connected at x1"),
                     expect("complementImKleinen", false, "teeth near x1 detach from the complement within small balls")};
  ProbePoint x2{"x2-base-of-limit", {0, 0}, 0.25, 3, {}};
  x2.expectations = {expect("omegaUnionX0LocallyConnected", false, "slivers cannot reach x2 inside small balls"),
                     expect("boundaryLocallyConnected", true, "teeth all stand on the bottom edge"),
                     notCheckable("boundaryPathImKleinen", "path variant coincides with the plain one on graphs")};
  e.probes = {x1, x2};
  return e;
}

CorpusEntry thickComb() {
  CorpusEntry e;
  e.name = "thick-comb";
  e.description = "(0,2)^2 minus (0,1]x[2^(-2j-1), 2^(-2j)] for j >= 1";
  e.truncation = "bars kept while the gap below them is at least h/4";
  e.factory = [](double h) {
    DomainSpec s = base2d("thick-comb", {0, 0}, {2, 2});
    std::vector<CsgNode> bars;
    for (int j = 1; j < 60; ++j) {
      double lo = std::ldexp(1.0, -2 * j - 1), hi = std::ldexp(1.0, -2 * j);
      if (std::ldexp(1.0, -2 * j - 2) < h / 4) break;
      BoxPrim b{{0, lo}, {1, hi}};
      b.loClosed = {false, true, false};
      b.hiClosed = {true, true, false};
      bars.push_back(CsgNode::box(b));
    }
    s.solid = CsgNode::subtract(CsgNode::box({0, 0}, {2, 2}), std::move(bars));
    return s;
  };
  ProbePoint p{"origin", {0, 0}, 0.5, 3, {}};
  p.expectations = {expect("complementLocallyConnected", true, "bars hang on the left edge"),
                    expect("boundaryImKleinen", false, "the gaps between bars have separate boundaries"),
                    notCheckable("complementPathImKleinen", "path variant coincides with the plain one on graphs")};
  e.probes = {p};
  return e;
}

CorpusEntry ex1() {
  CorpusEntry e;
  e.name = "ex1";
  e.description = "(0,2)^2 minus the unit rays at angles 1/j, j >= 1";
  e.truncation = "none: the rays are an exact infinite family";
  e.factory = [](double) {
    DomainSpec s = base2d("ex1", {0, 0}, {2, 2});
    s.thin.push_back(planar(FanObs{{0, 0}, 1.0, 1, false, 1.0}));
    return s;
  };
  ProbePoint p{"apex", {0, 0}, 0.5, 3, {}};
  p.expectations = {expect("locallyAccessible", true, "every sector has its apex at x0"),
                    expect("finitelyConnected", false, "infinitely many sectors meet x0")};
  e.probes = {p};
  return e;
}

CorpusEntry rempe() {
  CorpusEntry e;
  e.name = "Rempe";
  e.description = "(-1,1)^2 minus a chain of brooms on [0,1]x{0}";
  e.truncation = "brooms of size >= h/4; bristles of height >= h/16";
  e.factory = [](double h) {
    DomainSpec s = base2d("Rempe", {-1, -1}, {1, 1});
    s.thin.push_back(planar(SegmentObs{{0, 0}, {1, 0}}));
    for (int j = 0; std::ldexp(1.0, -j) >= h / 4; ++j)
      for (int k = 0; std::ldexp(1.0, -j - k) >= h / 16; ++k)
        s.thin.push_back(planar(SegmentObs{{std::ldexp(1.0, -j - 1), std::ldexp(1.0, -j - k)}, {std::ldexp(1.0, -j), 0}}));
    return s;
  };
  ProbePoint p{"origin", {0, 0}, 0.375, 3, {}};
  p.expectations = {expect("boundaryLocallyConnected", false, "bristles detach near the broom bases"),
                    expect("complementLocallyConnected", false, "bristles detach near the broom bases"),
                    notCheckable("boundaryPathImKleinen", "path variant coincides with the plain one on graphs"),
                    notCheckable("complementPathImKleinen", "path variant coincides with the plain one on graphs")};
  e.probes = {p};
  return e;
}

CorpusEntry iteratedSine() {
  CorpusEntry e;
  e.name = "iterated-sine";
  e.description = "(-1,1)^2 minus a chain of topologist's sine curves shrinking by 4";
  e.truncation = "curves of scale >= h/4; each curve sampled until its half-period drops below h/8, then continued to its limit segment as a full-amplitude zigzag of pitch h/8";
  e.factory = [](double h) {
    DomainSpec s = base2d("iterated-sine", {-1, -1}, {1, 1});
    for (int k = 1; std::ldexp(1.0, -2 * k) >= h / 4; ++k) {
      double a = std::ldexp(1.0, -2 * k);
      s.thin.push_back(planar(SegmentObs{{a / 2, 0}, {a, 0}}));
      s.thin.push_back(planar(SegmentObs{{a, -a}, {a, a}}));
      // x = a (1 + u), y = a sin(pi / u), u in (0, 1].
      double uMin = std::min(1.0, std::sqrt(h / (8 * a)));
      PolylineObs curve;
      double phiMax = std::numbers::pi / uMin;
      int n = static_cast<int>(std::ceil((phiMax - std::numbers::pi) / (std::numbers::pi / 16))) + 1;
      for (int i = 0; i <= n; ++i) {
        double phi = std::numbers::pi + (phiMax - std::numbers::pi) * i / n;
        double u = std::numbers::pi / phi;
        curve.points.push_back({a * (1 + u), a * std::sin(phi)});
      }
      // Past the cut-off the oscillation is denser than h/8; a full-amplitude
      // zigzag of that pitch crosses the same lattice edges.
      double x = curve.points.back().x;
      double sign = curve.points.back().y > 0 ? -1.0 : 1.0;
      while (x > a) {
        x = std::max(a, x - h / 8);
        curve.points.push_back({x, sign * a});
        sign = -sign;
      }
      s.thin.push_back(planar(std::move(curve)));
    }
    return s;
  };
  ProbePoint p{"origin", {0, 0}, 0.625, 3, {}};
  p.expectations = {expect("boundaryLocallyConnected", true, "each curve closes onto its limit segment"),
                    expect("complementLocallyConnected", true, "each curve closes onto its limit segment"),
                    notCheckable("boundaryPathImKleinen", "path variant coincides with the plain one on graphs"),
                    notCheckable("complementPathImKleinen", "path variant coincides with the plain one on graphs")};
  e.probes = {p};
  return e;
}

DomainSpec cantorSpec(const std::string& name, double h, bool withSlit) {
  DomainSpec s = base2d(name, {-2, -2}, {2, 2});
  s.thin.push_back(planar(CantorObs{0, {0, 0}, 1.0, -1}));
  for (int j = 0; std::ldexp(1.0, -j) >= h / 4; ++j)
    s.thin.push_back(planar(CantorObs{0, {0, std::ldexp(1.0, -j)}, 1.0, j}));
  if (withSlit) s.thin.push_back(planar(SegmentObs{{-1, 0}, {0, 0}}));
  return s;
}

Expectation lcOr2(std::string claim) {
  return {"locallyConnectedOr2Connected", Expected::kTrue, 2, std::move(claim)};
}

CorpusEntry cantorOmega(bool prime) {
  CorpusEntry e;
  e.name = prime ? "Cantor-Omega-prime" : "Cantor-Omega";
  e.description = prime ? "Cantor-Omega minus [-1,0]x{0}"
                        : "(-2,2)^2 minus Cx{0} and the generations C_j x {2^-j}";
  e.truncation = "rows at height >= h/4; Cx{0} realized by its generation n(h)";
  e.factory = [prime, name = e.name](double h) { return cantorSpec(name, h, prime); };
  const std::string claim = "locally connected or 2-connected at every boundary point";
  ProbePoint origin{"origin", {0, 0}, 0.25, 3, {lcOr2(claim)}};
  ProbePoint quarter{"cantor-point-1/4", {0.25, 0}, 0.125, 3, {lcOr2(claim)}};
  ProbePoint row{"row-1-interior", {1.0 / 6, 0.5}, 0.125, 3, {lcOr2(claim)}};
  e.probes = {origin, quarter, row};
  if (prime) e.probes.push_back({"slit-interior", {-0.5, 0}, 0.25, 3, {lcOr2(claim)}});
  return e;
}

// ---------------------------------------------------------------------------
// 3D entries

DomainSpec base3d(const std::string& name, Point lo, Point hi) {
  DomainSpec s;
  s.name = name;
  s.dim = 3;
  s.solid = CsgNode::box(lo, hi);
  s.declaredBox = {lo, hi};
  return s;
}

CorpusEntry r3FinConnComplement() {
  CorpusEntry e;
  e.name = "ex-R3-finconn-compl-new";
  e.dim = 3;
  e.hRatio = 32;
  e.referenceH = 1.0 / 256;
  e.description = "(0,1)x(-1,1)^2 minus Gx[0,1), G the square minus closed discs B((2^-j,0), 2^-j/10)";
  e.truncation = "discs of radius >= h/4";
  e.factory = [](double h) {
    DomainSpec s = base3d("ex-R3-finconn-compl-new", {0, -1, -1}, {1, 1, 1});
    std::vector<CsgNode> pillars;
    for (int j = 1; std::ldexp(1.0, -j) / 10 >= h / 4; ++j) {
      BallPrim b{{std::ldexp(1.0, -j), 0, 0}, std::ldexp(1.0, -j) / 10, true, {true, true, false}};
      pillars.push_back(CsgNode::ball(b));
    }
    BoxPrim slab{{0, -1, 0}, {1, 1, 1}};
    slab.loClosed = {false, false, true};
    CsgNode removed = CsgNode::subtract(CsgNode::box(slab), std::move(pillars));
    s.solid = CsgNode::subtract(CsgNode::box({0, -1, -1}, {1, 1, 1}), {removed});
    return s;
  };
  ProbePoint p{"origin", {0, 0, 0}, 0.25, 3, {}};
  p.expectations = {expect("finitelyConnected", true, "the pillars all rise from one slab"),
                    expect("complementLocallyConnected", false, "complement fails local connectedness at the origin")};
  e.probes = {p};
  return e;
}

CorpusEntry r3ComplLocconn() {
  CorpusEntry e;
  e.name = "ex-R3-compl-locconn";
  e.dim = 3;
  e.hRatio = 32;
  e.referenceH = 1.0 / 256;
  e.description = "(0,1)^3 plus towers (2^(-2j-1), 2^(-2j))^2 x (0,2)";
  e.truncation = "towers of side >= h/4";
  e.factory = [](double h) {
    DomainSpec s = base3d("ex-R3-compl-locconn", {0, 0, 0}, {1, 1, 2});
    std::vector<CsgNode> parts{CsgNode::box({0, 0, 0}, {1, 1, 1})};
    for (int j = 1; std::ldexp(1.0, -2 * j - 1) >= h / 4; ++j) {
      double lo = std::ldexp(1.0, -2 * j - 1), hi = std::ldexp(1.0, -2 * j);
      parts.push_back(CsgNode::box({lo, lo, 0}, {hi, hi, 2}));
    }
    s.solid = CsgNode::unite(std::move(parts));
    return s;
  };
  ProbePoint p{"axis-z-1.5", {0, 0, 1.5}, 0.25, 3, {}};
  p.expectations = {expect("complementLocallyConnected", true, "towers are holes in a connected complement"),
                    expect("boundaryLocallyConnected", false, "tower walls are disjoint near the axis"),
                    expect("locallyAccessible", false, "towers accumulate at the axis without reaching it")};
  e.probes = {p};
  return e;
}

CorpusEntry r3LocconnLocacc() {
  CorpusEntry e;
  e.name = "ex-R3-locconn-locacc";
  e.dim = 3;
  e.hRatio = 32;
  e.referenceH = 1.0 / 256;
  e.description = "(-1,1)^3 minus Kx[0,1), K nested rectangle outlines on a common base";
  e.truncation = "rectangles of size >= h/4";
  e.factory = [](double h) {
    DomainSpec s = base3d("ex-R3-locconn-locacc", {-1, -1, -1}, {1, 1, 1});
    for (int j = 1; std::ldexp(1.0, -j) >= h / 4; ++j) {
      double a = std::ldexp(1.0, -j);
      s.thin.push_back(extruded(PolylineObs{{{-a, 0}, {-a, a}, {a, a}, {a, 0}, {-a, 0}}}));
    }
    return s;
  };
  ProbePoint p{"base-z-0.5", {0, 0, 0.5}, 0.25, 3, {}};
  p.expectations = {expect("boundaryLocallyConnected", true, "all outlines share the base segment"),
                    expect("locallyAccessible", false, "the nested channels do not reach x0 inside small balls"),
                    expect("finitelyConnected", false, "infinitely many channels accumulate at x0")};
  e.probes = {p};
  return e;
}

CorpusEntry jana() {
  CorpusEntry e;
  e.name = "ex-Jana";
  e.dim = 3;
  e.hRatio = 32;
  e.referenceH = 1.0 / 256;
  e.description = "(-1,1)^3 minus Kx[0,1), K circles of radius 2^-j tangent to the x-axis at 0, j >= 2";
  e.truncation = "circles of radius >= h/4";
  e.factory = [](double h) {
    DomainSpec s = base3d("ex-Jana", {-1, -1, -1}, {1, 1, 1});
    for (int j = 2; std::ldexp(1.0, -j) >= h / 4; ++j)
      s.thin.push_back(extruded(CircleObs{{0, std::ldexp(1.0, -j)}, std::ldexp(1.0, -j)}));
    return s;
  };
  ProbePoint p{"tangency-z-0.5", {0, 0, 0.5}, 0.25, 3, {}};
  p.expectations = {expect("locallyAccessible", true, "every crescent reaches the tangency line"),
                    expect("finitelyConnected", false, "infinitely many crescents meet x0")};
  ProbePoint q{"top-of-outer-circle", {0, 0.5, 0.5}, 0.125, 3, {}};
  q.expectations = {expect("locallyAccessible", true, "every boundary point is accessible")};
  e.probes = {p, q};
  return e;
}

const std::map<std::string, std::function<CorpusEntry()>>& registry() {
  static const std::map<std::string, std::function<CorpusEntry()>> r{
      {"unit-square", unitSquare},
      {"slit-disc", slitDisc},
      {"comb-I", combI},
      {"comb-II", combII},
      {"thick-comb", thickComb},
      {"ex1", ex1},
      {"Rempe", rempe},
      {"iterated-sine", iteratedSine},
      {"Cantor-Omega", [] { return cantorOmega(false); }},
      {"Cantor-Omega-prime", [] { return cantorOmega(true); }},
      {"ex-R3-finconn-compl-new", r3FinConnComplement},
      {"ex-R3-compl-locconn", r3ComplLocconn},
      {"ex-R3-locconn-locacc", r3LocconnLocacc},
      {"ex-Jana", jana},
  };
  return r;
}

std::string triText(Tri t) { return triName(t); }

Tri aggregateFlag(const std::string& key, const BoundaryVerdict& v) {
  const ScaleFlags& a = v.aggregate;
  if (key == "finitelyConnected") return a.finitelyConnected;
  if (key == "locallyAccessible") return a.accessible;
  if (key == "omegaLocallyConnected") return a.omegaLocallyConnected;
  if (key == "omegaUnionX0LocallyConnected") return a.omegaX0.locallyConnected;
  if (key == "boundaryLocallyConnected") return a.boundary.locallyConnected;
  if (key == "boundaryImKleinen") return a.boundary.imKleinen;
  if (key == "complementLocallyConnected") return a.complement.locallyConnected;
  if (key == "complementImKleinen") return a.complement.imKleinen;
  throw Error(ErrorCode::kInvalidArgument, "unknown expectation key: " + key);
}

}  // namespace

const char* expectedName(Expected e) {
  switch (e) {
    case Expected::kTrue: return "true";
    case Expected::kFalse: return "false";
    case Expected::kNotMachineCheckable: return "notMachineCheckable";
  }
  return "?";
}

std::vector<std::string> exampleNames2d() {
  return {"unit-square", "slit-disc", "comb-I", "comb-II", "thick-comb",
          "ex1", "Rempe", "iterated-sine", "Cantor-Omega", "Cantor-Omega-prime"};
}

std::vector<std::string> exampleNames3d() {
  return {"ex-R3-finconn-compl-new", "ex-R3-compl-locconn", "ex-R3-locconn-locacc", "ex-Jana"};
}

std::vector<std::string> exampleNames() {
  auto out = exampleNames2d();
  for (auto& n : exampleNames3d()) out.push_back(n);
  return out;
}

CorpusEntry buildExample(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::kUnknownExample, "unknown example: " + name);
  return it->second();
}

ExpectationResult checkExpectation(const Expectation& e, const BoundaryVerdict& v) {
  ExpectationResult r;
  r.expectation = e;
  if (e.value == Expected::kNotMachineCheckable) {
    r.observed = "skipped";
    return r;
  }
  r.checked = true;
  const auto& c = v.classification;
  if (e.key == "nConnected") {
    r.observed = c.label();
    r.pass = c.kind == Classification::Kind::kNConnected && c.N == e.n;
  } else if (e.key == "nAllScales") {
    std::string s;
    bool all = true;
    for (const auto& b : v.ladder.scales) {
      s += (s.empty() ? "" : ",") + std::to_string(b.N);
      all = all && b.N == e.n;
    }
    r.observed = "N=[" + s + "]";
    r.pass = all;
  } else if (e.key == "locallyConnectedOr2Connected") {
    Tri lc = v.aggregate.omegaLocallyConnected;
    bool two = c.kind == Classification::Kind::kNConnected && c.N == 2;
    r.observed = "omegaLocallyConnected=" + triText(lc) + "," + c.label();
    r.pass = lc == Tri::kTrue || two;
  } else {
    Tri t = aggregateFlag(e.key, v);
    r.observed = triText(t);
    r.pass = t == (e.value == Expected::kTrue ? Tri::kTrue : Tri::kFalse);
  }
  return r;
}

bool ProbeResult::pass() const {
  if (!error.empty()) return false;
  for (const auto& r : results)
    if (r.checked && !r.pass) return false;
  return true;
}

ProbeResult runProbe(const CorpusEntry& entry, const ProbePoint& probe, const CorpusOptions& opts) {
  ProbeResult out;
  out.entry = entry.name;
  out.probe = probe;
  auto t0 = std::chrono::steady_clock::now();
  try {
    LadderPolicy policy;
    policy.hRatio = opts.hRatioOverride > 0 ? opts.hRatioOverride : entry.hRatio;
    BoundaryVerdict v = classifyPoint(entry.factory, probe.x0, probe.r0, probe.kMax, policy, opts.analysis);
    for (const auto& b : v.ladder.scales) out.nPerScale.push_back(b.N);
    out.classification = v.classification.label();
    out.auditViolations = v.auditViolations;
    out.monotonicityChecked = v.ladder.monotonicity.checked;
    out.monotonicityHolds = v.ladder.monotonicity.holds;
    for (const auto& e : probe.expectations) out.results.push_back(checkExpectation(e, v));
    if (opts.keepVerdicts) out.verdict = v.toJson();
  } catch (const Error& err) {
    out.error = std::string(errorCodeName(err.code())) + ": " + err.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

int defaultThreads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("MAZU_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}

CorpusReport runCorpus(const std::vector<std::string>& names, const CorpusOptions& opts) {
  struct Task {
    std::shared_ptr<const CorpusEntry> entry;
    std::size_t probe = 0;
    std::string name;
    std::string error;
  };
  std::vector<Task> tasks;
  for (const auto& name : names) {
    try {
      auto entry = std::make_shared<const CorpusEntry>(buildExample(name));
      for (std::size_t i = 0; i < entry->probes.size(); ++i) tasks.push_back({entry, i, name, {}});
    } catch (const Error& err) {
      tasks.push_back({nullptr, 0, name, std::string(errorCodeName(err.code())) + ": " + err.what()});
    }
  }

  std::vector<ProbeResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex progressMutex;
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) {
      const Task& task = tasks[t];
      if (task.entry) {
        results[t] = runProbe(*task.entry, task.entry->probes[task.probe], opts);
      } else {
        results[t].entry = task.name;
        results[t].error = task.error;
      }
      if (opts.progress) {
        std::lock_guard<std::mutex> lock(progressMutex);
        opts.progress(results[t]);
      }
    }
  };
  int threads = opts.threads > 0 ? opts.threads : defaultThreads();
  threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CorpusReport rep;
  for (auto& r : results) {
    if (!r.error.empty()) ++rep.errors;
    for (const auto& x : r.results) {
      if (!x.checked) ++rep.skipped;
      else if (!x.pass) ++rep.mismatches;
    }
    rep.auditViolations += static_cast<int>(r.auditViolations.size());
    if (r.monotonicityChecked && !r.monotonicityHolds) ++rep.monotonicityExceptions;
    rep.probes.push_back(std::move(r));
  }
  return rep;
}

nlohmann::json CorpusReport::toJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : probes) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : p.results)
      checks.push_back({{"key", r.expectation.key},
                        {"expected", expectedName(r.expectation.value)},
                        {"n", r.expectation.n},
                        {"claim", r.expectation.claim},
                        {"observed", r.observed},
                        {"checked", r.checked},
                        {"pass", r.pass}});
    nlohmann::json row{{"entry", p.entry},
                       {"probe", p.probe.label},
                       {"x0", {p.probe.x0.x, p.probe.x0.y, p.probe.x0.z}},
                       {"r0", p.probe.r0},
                       {"kMax", p.probe.kMax},
                       {"classification", p.classification},
                       {"N", p.nPerScale},
                       {"checks", checks},
                       {"auditViolations", p.auditViolations},
                       {"monotonicity", {{"checked", p.monotonicityChecked}, {"holds", p.monotonicityHolds}}},
                       {"pass", p.pass()}};
    if (!p.error.empty()) row["error"] = p.error;
    if (!p.verdict.is_null()) row["verdict"] = p.verdict;
    rows.push_back(row);
  }
  return {{"probes", rows},
          {"mismatches", mismatches},
          {"skipped", skipped},
          {"errors", errors},
          {"auditViolations", auditViolations},
          {"monotonicityExceptions", monotonicityExceptions},
          {"pass", pass()}};
}

}  // namespace mazu
