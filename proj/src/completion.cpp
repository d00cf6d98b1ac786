#include "mazu/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

#include "mazu/error.hpp"
#include "mazu/metric.hpp"

namespace mazu {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimax field from `source` with node weight |c - source|, explored only
// while the value stays <= cap. Visited cells are appended to `touched`.
void cappedRadiusField(const Raster& raster, CellId source, double cap, std::vector<double>& value,
                       std::vector<CellId>& touched) {
  using Item = std::pair<double, CellId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const Point p = raster.center(source);
  value[source] = 0.0;
  touched.push_back(source);
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [v, c] = pq.top();
    pq.pop();
    if (v > value[c]) continue;
    raster.forEachLinked(c, [&](CellId nb) {
      double w = std::max(v, dist(raster.center(nb), p));
      if (w > cap || w >= value[nb]) return;
      if (value[nb] == kInf) touched.push_back(nb);
      value[nb] = w;
      pq.push({w, nb});
    });
  }
}

CellId nearestLabeled(const Raster& raster, const ComponentLabeling& lab, Point p) {
  CellId c = raster.locate(p);
  if (c != kNoCell && lab.labels[c] >= 0) return c;
  if (c == kNoCell) return kNoCell;
  auto ijk = raster.coords(c);
  const auto& n = raster.size();
  CellId best = kNoCell;
  double bestD = kInf;
  int kz = raster.dim() == 3 ? 1 : 0;
  for (int dk = -kz; dk <= kz; ++dk)
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        int i = ijk[0] + di, j = ijk[1] + dj, k = ijk[2] + dk;
        if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
        CellId q = raster.index(i, j, k);
        if (lab.labels[q] < 0) continue;
        double d = dist(raster.center(q), p);
        if (d < bestD) {
          bestD = d;
          best = q;
        }
      }
  return best;
}

}  // namespace

nlohmann::json EpsilonNet::toJson(const Raster& raster) const {
  nlohmann::json pts = nlohmann::json::array();
  for (CellId c : points) {
    Point p = raster.center(c);
    pts.push_back(raster.dim() == 3 ? nlohmann::json{p.x, p.y, p.z} : nlohmann::json{p.x, p.y});
  }
  return {{"eps", eps}, {"size", points.size()}, {"saturated", saturated}, {"points", pts}};
}

EpsilonNet epsilonNet(const Raster& raster, double eps, std::size_t budget) {
  if (!(eps > 2 * raster.h())) throw Error(ErrorCode::kInvalidArgument, "epsilon must exceed 2h");
  EpsilonNet net;
  net.eps = eps;
  const CellId n = raster.cellCount();
  std::vector<std::uint8_t> covered(n, 0);
  std::vector<double> value(n, kInf);
  std::vector<CellId> touched;
  CellId cursor = 0;
  while (true) {
    while (cursor < n && (!raster.inside(cursor) || covered[cursor])) ++cursor;
    if (cursor >= n) {
      net.saturated = true;
      break;
    }
    if (net.points.size() >= budget) break;
    net.points.push_back(cursor);
    touched.clear();
    cappedRadiusField(raster, cursor, eps, value, touched);
    for (CellId c : touched) {
      covered[c] = 1;
      value[c] = kInf;
    }
  }
  return net;
}

bool NetProfile::divergenceEvidence() const {
  return std::any_of(divergence.begin(), divergence.end(), [](bool b) { return b; });
}

nlohmann::json NetProfile::toJson() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t e = 0; e < epsilons.size(); ++e)
    rows.push_back({{"eps", epsilons[e]},
                    {"netSizes", netSizes[e]},
                    {"saturated", saturated[e]},
                    {"divergence", static_cast<bool>(divergence[e])}});
  return {{"spacings", spacings}, {"profile", rows}, {"divergenceEvidence", divergenceEvidence()}};
}

NetProfile totalBoundednessProfile(const SpecFactory& factory, const std::vector<double>& epsilons,
                                   const NetPolicy& policy) {
  NetProfile out;
  out.epsilons = epsilons;
  std::sort(out.epsilons.begin(), out.epsilons.end(), std::greater<>());
  out.spacings = policy.spacings;
  std::sort(out.spacings.begin(), out.spacings.end(), std::greater<>());
  out.netSizes.assign(out.epsilons.size(), {});
  out.saturated.assign(out.epsilons.size(), {});
  for (double h : out.spacings) {
    DomainSpec spec = factory(h);
    Raster raster = rasterize(spec, spec.declaredBox, h);
    for (std::size_t e = 0; e < out.epsilons.size(); ++e) {
      EpsilonNet net = epsilonNet(raster, out.epsilons[e], policy.budget);
      out.netSizes[e].push_back(static_cast<int>(net.points.size()));
      out.saturated[e].push_back(net.saturated);
    }
  }
  for (std::size_t e = 0; e < out.epsilons.size(); ++e) {
    bool diverges = false;
    const auto& s = out.netSizes[e];
    for (std::size_t i = 2; i < s.size(); ++i)
      if (s[i - 1] >= policy.growthFactor * s[i - 2] && s[i] >= policy.growthFactor * s[i - 1]) diverges = true;
    out.divergence.push_back(diverges);
  }
  return out;
}

nlohmann::json FiberReport::toJson() const {
  nlohmann::json cs = nlohmann::json::array();
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& c = chains[i];
    nlohmann::json reps = nlohmann::json::array();
    for (Point p : c.representatives) reps.push_back({p.x, p.y, p.z});
    cs.push_back({{"fiber", fiberOf[i]},
                  {"representatives", reps},
                  {"components", c.components},
                  {"hopHi", c.hopHi},
                  {"cauchy", c.cauchy}});
  }
  return {{"x0", {x0.x, x0.y, x0.z}},
          {"fiberCount", fiberCount},
          {"chains", cs},
          {"pairwiseDmLo", pairwiseDmLo},
          {"threshold", threshold},
          {"finitelyConnectedEvidence", finitelyConnectedEvidence},
          {"classification", classification}};
}

FiberReport boundaryFibers(const BoundaryVerdict& verdict, const FiberOptions& opts) {
  FiberReport out;
  out.x0 = verdict.x0;
  out.classification = verdict.classification.label();
  out.finitelyConnectedEvidence =
      verdict.classification.kind == Classification::Kind::kNConnected ||
      verdict.classification.kind == Classification::Kind::kFinitelyConnectedEvidence;
  if (opts.strict && !out.finitelyConnectedEvidence)
    throw Error(ErrorCode::kNotFinitelyConnected, "ladder shows evidence against finite connectedness");
  const auto& scales = verdict.ladder.scales;
  if (scales.empty()) return out;
  const Point x0 = verdict.x0;
  const BallAnalysis& finest = scales.back();
  const double r0 = scales.front().r;
  out.threshold = opts.thresholdFactor * r0;

  // Approach components at the finest scale.
  const auto& flab = *finest.labeling;
  for (int comp = 0; comp < flab.componentCount; ++comp) {
    CellId best = kNoCell;
    double bestD = kInf;
    for (CellId c : flab.componentCells[comp]) {
      double d = dist(finest.raster->center(c), x0);
      if (d < bestD) {
        bestD = d;
        best = c;
      }
    }
    if (best == kNoCell || bestD > 0.5 * finest.r) continue;
    FiberChain chain;
    chain.representatives.assign(scales.size(), Point{});
    chain.components.assign(scales.size(), -1);
    chain.hopHi.assign(scales.size() - 1, 0.0);
    const std::size_t K = scales.size() - 1;
    chain.representatives[K] = finest.raster->center(best);
    chain.components[K] = comp;
    for (std::size_t k = K; k-- > 0;) {
      const BallAnalysis& b = scales[k];
      const Raster& raster = *b.raster;
      const auto& lab = *b.labeling;
      Point prev = chain.representatives[k + 1];
      CellId at = nearestLabeled(raster, lab, prev);
      if (at == kNoCell) {
        chain.representatives[k] = prev;
        chain.cauchy = false;
        continue;
      }
      int label = lab.labels[at];
      chain.components[k] = label;
      // Representative at scale k: the cell of the matched component closest
      // to distance r_k / 2 from x0.
      CellId rep = at;
      double bestGap = kInf;
      for (CellId c : lab.componentCells[label]) {
        double gap = std::abs(dist(raster.center(c), x0) - 0.5 * b.r);
        if (gap < bestGap) {
          bestGap = gap;
          rep = c;
        }
      }
      chain.representatives[k] = raster.center(rep);
      try {
        chain.hopHi[k] = dmBounds(raster, rep, at).hi;
      } catch (const Error&) {
        chain.hopHi[k] = kInf;
      }
      if (chain.hopHi[k] > 2 * b.r) chain.cauchy = false;
    }
    out.chains.push_back(std::move(chain));
  }

  // Pairwise d_M lower bounds between finest representatives, evaluated on
  // the coarsest raster. A connected set through p that leaves the window
  // has diameter at least the distance from p to the window boundary.
  const std::size_t m = out.chains.size();
  const BallAnalysis& coarse = scales.front();
  const Raster& craster = *coarse.raster;
  const auto& clab = *coarse.labeling;
  const double windowHalf = 1.25 * coarse.r;
  out.pairwiseDmLo.assign(m, std::vector<double>(m, 0.0));
  std::vector<CellId> anchor(m, kNoCell);
  for (std::size_t i = 0; i < m; ++i) anchor[i] = nearestLabeled(craster, clab, out.chains[i].representatives.back());
  DisjointSet ds(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Point p = out.chains[i].representatives.back(), q = out.chains[j].representatives.back();
      double escape = windowHalf - std::min(dist(p, x0), dist(q, x0));
      double lo = escape;
      if (anchor[i] != kNoCell && anchor[j] != kNoCell) {
        try {
          lo = std::min(dmBounds(craster, anchor[i], anchor[j]).lo, escape);
        } catch (const Error&) {
          lo = escape;
        }
      }
      lo = std::max(lo, dist(p, q));
      out.pairwiseDmLo[i][j] = out.pairwiseDmLo[j][i] = lo;
      if (lo < out.threshold) ds.unite(i, j);
    }
  std::vector<int> ids(m, -1);
  out.fiberOf.assign(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t root = ds.find(i);
    if (ids[root] < 0) ids[root] = out.fiberCount++;
    out.fiberOf[i] = ids[root];
  }
  return out;
}

nlohmann::json PhiReport::toJson() const {
  nlohmann::json imgs = nlohmann::json::array();
  for (Point p : images) imgs.push_back({p.x, p.y, p.z});
  return {{"images", imgs},
          {"distinctImages", distinctImages},
          {"pairsChecked", pairsChecked},
          {"lipschitzViolations", lipschitzViolations}};
}

PhiReport projectPhi(const FiberReport& report, const BoundaryVerdict& verdict, int samples, unsigned seed) {
  PhiReport out;
  out.images.assign(report.fiberCount, report.x0);
  out.distinctImages = report.fiberCount > 0 ? 1 : 0;
  if (verdict.ladder.scales.empty()) return out;
  const BallAnalysis& coarse = verdict.ladder.scales.front();
  const Raster& raster = *coarse.raster;
  const auto& lab = *coarse.labeling;
  std::vector<CellId> cells;
  for (CellId c = 0; c < raster.cellCount(); ++c)
    if (lab.labels[c] >= 0) cells.push_back(c);
  if (cells.size() < 2) return out;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
  for (int s = 0; s < samples; ++s) {
    CellId a = cells[pick(rng)], b = cells[pick(rng)];
    if (lab.labels[a] != lab.labels[b]) continue;
    DmBound bound = dmBounds(raster, a, b);
    ++out.pairsChecked;
    if (dist(raster.center(a), raster.center(b)) > bound.hi + 1e-12) ++out.lipschitzViolations;
  }
  return out;
}

}  // namespace mazu
