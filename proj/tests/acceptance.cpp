#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mazu/classifier.hpp"
#include "mazu/completion.hpp"
#include "mazu/corpus.hpp"
#include "mazu/error.hpp"
#include "mazu/metric.hpp"
#include "mazu/raster.hpp"
#include "mazu/separation.hpp"

using namespace mazu;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Line {
  int id;
  bool pass;
  std::string summary;
  std::vector<std::string> details;
};

std::vector<Line> lines;

void report(int id, bool pass, std::string summary, std::vector<std::string> details = {}) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", summary.c_str());
  for (const auto& d : details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  lines.push_back({id, pass, std::move(summary), std::move(details)});
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::vector<std::string> corpusMismatches(const CorpusReport& rep) {
  std::vector<std::string> out;
  for (const auto& p : rep.probes) {
    if (!p.error.empty()) out.push_back(p.entry + "/" + p.probe.label + ": error " + p.error);
    for (const auto& r : p.results)
      if (r.checked && !r.pass)
        out.push_back(p.entry + "/" + p.probe.label + ": " + r.expectation.key + " expected " +
                      expectedName(r.expectation.value) + " observed " + r.observed);
  }
  return out;
}

// Independent oracle: every simple face-adjacency path, least center-set
// diameter.
double enumerateDm(const Raster& r, CellId x, CellId y) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<CellId> path{x};
  std::vector<char> on(r.cellCount(), 0);
  on[x] = 1;
  std::function<void(double)> walk = [&](double diam) {
    if (diam >= best) return;
    CellId c = path.back();
    if (c == y) {
      best = diam;
      return;
    }
    for (int a = 0; a < r.dim(); ++a)
      for (int s : {-1, 1}) {
        if (!r.linked(c, a, s)) continue;
        CellId nb = r.step(c, a, s);
        if (on[nb]) continue;
        double d = diam;
        for (CellId p : path) d = std::max(d, dist(r.center(p), r.center(nb)));
        on[nb] = 1;
        path.push_back(nb);
        walk(d);
        path.pop_back();
        on[nb] = 0;
      }
  };
  walk(0.0);
  return best;
}

void criterion5() {
  auto t0 = Clock::now();
  std::vector<std::string> details;
  bool pass = true;

  // Exact solver against enumeration on 100 random rasters of 20 cells.
  std::mt19937 rng(2024);
  int exactChecked = 0, exactFailed = 0;
  while (exactChecked < 100) {
    const int w = 5, hgt = 4;
    std::vector<std::uint8_t> mask(w * hgt);
    for (auto& m : mask) m = rng() % 100 < 75;
    Raster r = rasterFromMask(2, 1.0, {0, 0}, {w, hgt, 1}, mask);
    auto cells = r.domainCells();
    if (cells.size() < 2) continue;
    CellId x = cells[rng() % cells.size()], y = cells[rng() % cells.size()];
    double oracle = enumerateDm(r, x, y);
    if (std::isinf(oracle)) continue;
    DmExactResult res = dmExact(r, x, y);
    if (!res.exact || res.value != oracle) ++exactFailed;
    ++exactChecked;
  }
  details.push_back(fmt("dmExact vs enumeration: %.0f rasters, %.0f differ", exactChecked, exactFailed));
  pass = pass && exactFailed == 0;

  // Sandwich and triangle inequality on random triples.
  for (const char* name : {"slit-disc", "unit-square"}) {
    const double h = 1.0 / 64;
    CorpusEntry e = buildExample(name);
    DomainSpec spec = e.factory(h);
    Raster r = rasterize(spec, spec.defaultWindow(), h);
    auto cells = r.domainCells();
    const double tol = h * std::sqrt(2.0) + 1e-12;
    int triples = 0, sandwich = 0, triangle = 0;
    std::mt19937 trng(11);
    while (triples < 500) {
      CellId a = cells[trng() % cells.size()], b = cells[trng() % cells.size()], c = cells[trng() % cells.size()];
      if (a == b || b == c || a == c) continue;
      DmBound ab = dmBounds(r, a, b), bc = dmBounds(r, b, c), ac = dmBounds(r, a, c);
      for (auto [p, q, bound] : {std::tuple{a, b, &ab}, std::tuple{b, c, &bc}, std::tuple{a, c, &ac}}) {
        double d = dist(r.center(p), r.center(q));
        double inner = innerDistance(r, p, q);
        if (bound->lo < d - tol || bound->hi > inner + tol || bound->lo > bound->hi + 1e-12) ++sandwich;
      }
      if (ac.lo > ab.hi + bc.hi + tol || ab.lo > ac.hi + bc.hi + tol || bc.lo > ab.hi + ac.hi + tol) ++triangle;
      ++triples;
    }
    details.push_back(std::string(name) + fmt(": %.0f triples, %.0f sandwich and %.0f triangle violations", triples,
                                              sandwich, triangle));
    pass = pass && sandwich == 0 && triangle == 0;
  }

  // Pair straddling the slit: every connected set joining them rounds the tip.
  {
    const double h = 1.0 / 128;
    CorpusEntry e = buildExample("slit-disc");
    DomainSpec spec = e.factory(h);
    Raster r = rasterize(spec, spec.defaultWindow(), h);
    CellId x = r.locate({-0.5, 1.5 * h}), y = r.locate({-0.5, -1.5 * h});
    DmBound b = dmBounds(r, x, y);
    bool ok = std::abs(b.lo - 0.5) <= 0.05 && std::abs(b.hi - 0.5) <= 0.05;
    details.push_back(fmt("slit pair at h=1/128: d_M in [%.4f, %.4f], target 0.5 +- 0.05", b.lo, b.hi));
    pass = pass && ok;
  }
  details.push_back(fmt("%.1f s", since(t0)));
  report(5, pass, "d_M oracle suite", details);
}

FiberReport fibersAt(const char* name, Point x0, double r0, double hRatio) {
  CorpusEntry e = buildExample(name);
  LadderPolicy policy;
  policy.hRatio = hRatio;
  BoundaryVerdict v = classifyPoint(e.factory, x0, r0, 3, policy);
  return boundaryFibers(v);
}

double minCrossFiberLo(const FiberReport& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.chains.size(); ++i)
    for (std::size_t j = i + 1; j < f.chains.size(); ++j)
      if (f.fiberOf[i] != f.fiberOf[j]) best = std::min(best, f.pairwiseDmLo[i][j]);
  return best;
}

void criterion6() {
  auto t0 = Clock::now();
  std::vector<std::string> details;
  FiberReport slit = fibersAt("slit-disc", {-0.5, 0}, 0.4, 64);
  double lo = minCrossFiberLo(slit);
  bool slitOk = slit.fiberCount == 2 && lo >= 0.4;
  details.push_back(fmt("slit-disc (-0.5,0): %.0f fibers, least cross-fiber d_M lower bound %.4f", slit.fiberCount, lo));
  FiberReport tip = fibersAt("slit-disc", {0, 0}, 0.4, 64);
  details.push_back(fmt("slit-disc tip (0,0): %.0f fibers", tip.fiberCount));
  FiberReport corner = fibersAt("unit-square", {0, 0}, 0.2, 64);
  details.push_back(fmt("unit-square corner (0,0): %.0f fibers", corner.fiberCount));
  std::vector<int> comb;
  for (double ratio : {32.0, 64.0, 128.0}) comb.push_back(fibersAt("comb-I", {0, 0}, 0.3, ratio).fiberCount);
  bool combOk = comb[0] < comb[1] && comb[1] < comb[2];
  details.push_back(fmt("comb-I (0,0) at h = r/32, r/64, r/128: %.0f, %.0f, %.0f fibers", comb[0], comb[1], comb[2]));
  details.push_back(fmt("%.1f s", since(t0)));
  report(6, slitOk && tip.fiberCount == 1 && corner.fiberCount == 1 && combOk, "fiber counts", details);
}

void criterion7() {
  auto t0 = Clock::now();
  std::vector<std::string> details;
  bool pass = true;
  NetPolicy policy;  // spacings 1/64, 1/256, 1/1024
  for (const char* name : {"comb-I", "slit-disc", "unit-square"}) {
    NetProfile p = totalBoundednessProfile(buildExample(name).factory, {0.4}, policy);
    const auto& n = p.netSizes[0];
    double g1 = double(n[1]) / n[0], g2 = double(n[2]) / n[1];
    bool ok;
    if (std::string(name) == "comb-I") {
      ok = p.divergenceEvidence() && g2 >= 1.5;
    } else {
      ok = !p.divergenceEvidence() && std::abs(g2 - 1.0) <= 0.10 && std::abs(g1 - 1.0) <= 0.10;
    }
    details.push_back(std::string(name) + fmt(": net sizes at eps=0.4 for h=1/64,1/256,1/1024: %.0f, %.0f, %.0f", n[0],
                                              n[1], n[2]) +
                      (p.divergenceEvidence() ? " (divergent)" : " (bounded)"));
    pass = pass && ok;
  }
  details.push_back(fmt("%.1f s", since(t0)));
  report(7, pass, "total boundedness profile", details);
}

void criterion8() {
  auto t0 = Clock::now();
  std::vector<std::string> details;
  bool pass = true;
  for (const char* suite : {"janiszewski", "countable", "nested"}) {
    SuiteOptions opts;
    opts.count = 200;
    opts.h = 1.0 / 128;
    opts.minSeparation = 4;
    opts.maxSets = std::string(suite) == "nested" ? 6 : 8;
    SuiteReport r = runSeparationSuite(suite, opts);
    details.push_back(std::string(suite) + fmt(": %.0f satisfying of %.0f generated, %.0f counterexamples", r.satisfying,
                                               r.attempts, r.counterexamples));
    pass = pass && r.satisfying >= 200 && r.counterexamples == 0;
  }
  double secs = since(t0);
  details.push_back(fmt("%.1f s (limit 180 s)", secs));
  report(8, pass && secs <= 180, "separation lab", details);
}

}  // namespace

int main() {
  std::printf("acceptance: %d worker threads\n", defaultThreads());

  auto t1 = Clock::now();
  CorpusReport twoD = runCorpus(exampleNames2d());
  double s1 = since(t1);
  {
    auto details = corpusMismatches(twoD);
    details.push_back(fmt("%.0f probes, %.0f mismatches, %.0f errors, %.1f s (limit 300 s)", twoD.probes.size(),
                          twoD.mismatches, twoD.errors, s1));
    report(1, twoD.pass() && s1 <= 300, "2D corpus fidelity at h = r/256", details);
  }

  auto t2 = Clock::now();
  CorpusReport threeD = runCorpus(exampleNames3d());
  double s2 = since(t2);
  {
    auto details = corpusMismatches(threeD);
    details.push_back(fmt("%.0f probes, %.0f mismatches, %.0f errors, %.1f s (limit 900 s)", threeD.probes.size(),
                          threeD.mismatches, threeD.errors, s2));
    report(2, threeD.pass() && s2 <= 900, "3D corpus fidelity at h = r/32", details);
  }

  {
    std::vector<std::string> details;
    int scales = 0;
    for (const CorpusReport* rep : {&twoD, &threeD})
      for (const auto& p : rep->probes) {
        scales += static_cast<int>(p.nPerScale.size());
        for (const auto& v : p.auditViolations) details.push_back(p.entry + "/" + p.probe.label + ": " + v);
      }
    int violations = twoD.auditViolations + threeD.auditViolations;
    details.push_back(fmt("%.0f probes, %.0f ladder scales, %.0f violations", twoD.probes.size() + threeD.probes.size(),
                          scales, violations));
    report(3, violations == 0, "implication audit", details);
  }

  {
    std::vector<std::string> details;
    int checked = 0, exceptions = 0;
    for (const CorpusReport* rep : {&twoD, &threeD})
      for (const auto& p : rep->probes) {
        if (!p.monotonicityChecked) continue;
        ++checked;
        if (!p.monotonicityHolds) {
          ++exceptions;
          details.push_back(p.entry + "/" + p.probe.label + ": N not monotone");
        }
      }
    details.push_back(fmt("%.0f ladders without closure contact, %.0f exceptions", checked, exceptions));
    report(4, exceptions == 0 && checked > 0, "monotonicity of N along ladders", details);
  }

  criterion5();
  criterion6();
  criterion7();
  criterion8();

  int failed = 0;
  for (const auto& l : lines) failed += !l.pass;
  std::printf("acceptance: %d of %zu criteria pass\n", static_cast<int>(lines.size()) - failed, lines.size());
  return failed == 0 ? 0 : 1;
}
