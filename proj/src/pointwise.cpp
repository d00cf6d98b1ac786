#include <algorithm>
#include <cmath>
#include <limits>

#include "mazu/classifier.hpp"

namespace mazu {

namespace {

// Points origin + t * h/2 of the raster, t = 0 .. 2n. Odd t are cell centers
// along that axis, even t lie on face planes.
class HalfLattice {
 public:
  HalfLattice(const DomainSpec& spec, const Raster& raster, Point x0, double r)
      : spec_(spec), raster_(raster), x0_(x0), r_(r) {
    dim_ = raster.dim();
    for (int a = 0; a < 3; ++a) m_[a] = a < dim_ ? 2 * raster.size()[a] + 1 : 1;
    std::size_t total = static_cast<std::size_t>(m_[0]) * m_[1] * m_[2];
    complement_.assign(total, 0);
    inBall_.assign(total, 0);
    thin_.assign(total, 0);
    solidCache_.assign(raster.cellCount(), -1);
    const double reach = r + raster.h();
    for (std::size_t q = 0; q < total; ++q) {
      Point p = point(q);
      double d = dist(p, x0);
      if (d > reach) continue;
      inBall_[q] = d <= r ? 1 : 0;
      int kind = complementKind(q);
      complement_[q] = kind != 0 ? 1 : 0;
      thin_[q] = kind == 2 ? 1 : 0;
    }
  }

  std::size_t size() const { return complement_.size(); }
  std::array<int, 3> coords(std::size_t q) const {
    int i = static_cast<int>(q % m_[0]);
    int j = static_cast<int>((q / m_[0]) % m_[1]);
    int k = static_cast<int>(q / (static_cast<std::size_t>(m_[0]) * m_[1]));
    return {i, j, k};
  }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(m_[0]) * (j + static_cast<std::size_t>(m_[1]) * k);
  }
  bool valid(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < m_[0] && j < m_[1] && k < m_[2];
  }
  Point point(std::size_t q) const {
    auto t = coords(q);
    Point o = raster_.origin();
    double s = 0.5 * raster_.h();
    return {o.x + t[0] * s, o.y + t[1] * s, dim_ == 3 ? o.z + t[2] * s : 0.0};
  }
  bool complement(std::size_t q) const { return complement_[q] != 0; }
  bool inBall(std::size_t q) const { return inBall_[q] != 0; }
  // Complement point produced by a thin obstacle (blocked face or a cell
  // removed although its center lies in the solid).
  bool thin(std::size_t q) const { return thin_[q] != 0; }
  int dim() const { return dim_; }

  template <class Fn>
  void forEachNeighbor(std::size_t q, Fn&& fn) const {
    auto t = coords(q);
    int kz = dim_ == 3 ? 1 : 0;
    for (int dk = -kz; dk <= kz; ++dk)
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (!di && !dj && !dk) continue;
          int i = t[0] + di, j = t[1] + dj, k = t[2] + dk;
          if (valid(i, j, k)) fn(index(i, j, k));
        }
  }

 private:
  bool solidCell(CellId id) const {
    if (solidCache_[id] < 0) solidCache_[id] = spec_.solid.contains(raster_.center(id), dim_) ? 1 : 0;
    return solidCache_[id] != 0;
  }

  // 0 when q is off the complement, 1 when q lies on the closed cell of a
  // cell outside the solid, 2 when q lies on the closed face of a blocked
  // edge or on a cell removed by a thin obstacle.
  int complementKind(std::size_t q) const {
    auto t = coords(q);
    std::array<std::array<int, 2>, 3> cand;
    std::array<int, 3> count{1, 1, 1};
    for (int a = 0; a < 3; ++a) {
      if (a >= dim_) {
        cand[a] = {0, 0};
        continue;
      }
      if (t[a] % 2 == 1) {
        cand[a] = {(t[a] - 1) / 2, 0};
      } else {
        cand[a] = {t[a] / 2 - 1, t[a] / 2};
        count[a] = 2;
      }
    }
    const auto& n = raster_.size();
    auto cellAt = [&](int i, int j, int k) -> CellId {
      if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) return kNoCell;
      return raster_.index(i, j, k);
    };
    int kind = 0;
    for (int a = 0; a < count[0]; ++a)
      for (int b = 0; b < count[1]; ++b)
        for (int c = 0; c < count[2]; ++c) {
          CellId id = cellAt(cand[0][a], cand[1][b], cand[2][c]);
          if (id == kNoCell) {
            kind = std::max(kind, 1);
          } else if (!raster_.inside(id)) {
            if (solidCell(id)) return 2;
            kind = 1;
          }
        }
    for (int axis = 0; axis < dim_; ++axis) {
      if (count[axis] != 2) continue;
      for (int a = 0; a < (axis == 0 ? 1 : count[0]); ++a)
        for (int b = 0; b < (axis == 1 ? 1 : count[1]); ++b)
          for (int c = 0; c < (axis == 2 ? 1 : count[2]); ++c) {
            CellId id = cellAt(cand[0][a], cand[1][b], cand[2][c]);
            if (id != kNoCell && raster_.blocked(id, axis)) return 2;
          }
    }
    return kind;
  }

  const DomainSpec& spec_;
  const Raster& raster_;
  Point x0_;
  double r_;
  int dim_ = 2;
  std::array<int, 3> m_{1, 1, 1};
  std::vector<std::uint8_t> complement_;
  std::vector<std::uint8_t> inBall_;
  std::vector<std::uint8_t> thin_;
  mutable std::vector<std::int8_t> solidCache_;
};

// Evaluates im kleinen and open-at-scale proxies for the set S (given as a
// mask over the half lattice) inside B(x0, r).
SetFlags evaluateSet(const HalfLattice& lat, const std::vector<std::uint8_t>& S, Point x0, double r, double h) {
  SetFlags out;
  const std::size_t total = lat.size();
  const double link = std::sqrt(static_cast<double>(lat.dim())) * 0.5 * h * (1 + 1e-9);
  std::vector<std::uint8_t> inA(total, 0);
  std::vector<std::size_t> stack;
  // Seed from the S-points nearest x0 when none is within the link distance,
  // as long as they pass the boundary-sample radius.
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < total; ++q)
    if (S[q] && lat.inBall(q)) nearest = std::min(nearest, dist(lat.point(q), x0));
  const double seed = nearest <= std::sqrt(static_cast<double>(lat.dim())) * h * (1 + 1e-9)
                          ? std::max(link, nearest + 0.5 * link)
                          : link;
  for (std::size_t q = 0; q < total; ++q)
    if (S[q] && lat.inBall(q) && dist(lat.point(q), x0) <= seed) {
      inA[q] = 1;
      stack.push_back(q);
    }
  while (!stack.empty()) {
    std::size_t q = stack.back();
    stack.pop_back();
    lat.forEachNeighbor(q, [&](std::size_t nb) {
      if (!inA[nb] && S[nb] && lat.inBall(nb)) {
        inA[nb] = 1;
        stack.push_back(nb);
      }
    });
  }
  // Largest ladder radius whose S-points all belong to the x0 component.
  std::vector<double> deltas = deltaLadder(r, 16 * h);
  double worst = std::numeric_limits<double>::infinity();  // nearest S-point outside A
  for (std::size_t q = 0; q < total; ++q)
    if (S[q] && lat.inBall(q) && !inA[q]) worst = std::min(worst, dist(lat.point(q), x0));
  out.imKleinen = Tri::kFalse;
  for (double d : deltas)
    if (worst > d) {
      out.imKleinen = Tri::kTrue;
      out.witnessDelta = d;
      break;
    }
  if (out.imKleinen != Tri::kTrue) {
    out.locallyConnected = Tri::kFalse;
    return out;
  }
  // Open at scale: no S-point outside A within rho of A near x0.
  const double rho = 2.0 * h;
  const int span = static_cast<int>(std::ceil(rho / (0.5 * h)));
  bool open = true;
  for (std::size_t q = 0; q < total && open; ++q) {
    if (!S[q] || !lat.inBall(q) || inA[q]) continue;
    Point p = lat.point(q);
    if (dist(p, x0) > 0.75 * r + rho) continue;
    auto t = lat.coords(q);
    int kz = lat.dim() == 3 ? span : 0;
    for (int dk = -kz; dk <= kz && open; ++dk)
      for (int dj = -span; dj <= span && open; ++dj)
        for (int di = -span; di <= span && open; ++di) {
          int i = t[0] + di, j = t[1] + dj, k = t[2] + dk;
          if (!lat.valid(i, j, k)) continue;
          std::size_t o = lat.index(i, j, k);
          if (inA[o] && dist(lat.point(o), x0) <= 0.75 * r && dist(lat.point(o), p) <= rho) open = false;
        }
  }
  out.locallyConnected = open ? Tri::kTrue : Tri::kFalse;
  return out;
}

}  // namespace

ScaleFlags pointwiseFlags(const DomainSpec& spec, const BallAnalysis& ball) {
  ScaleFlags f;
  f.r = ball.r;
  f.h = ball.h;
  const Raster& raster = *ball.raster;
  const auto& lab = *ball.labeling;

  AccessVerdict acc = locallyAccessible(ball);
  f.accessible = acc.kind == AccessVerdict::Kind::kAccessible          ? Tri::kTrue
                 : acc.kind == AccessVerdict::Kind::kNotAccessibleAtScale ? Tri::kFalse
                                                                          : Tri::kInconclusive;
  f.closureFree = ball.x0InClosureH ? Tri::kFalse : Tri::kTrue;
  f.finitelyConnected = f.closureFree;

  // Domain side: cells within each ladder radius.
  std::vector<double> deltas = deltaLadder(ball.r, 8 * ball.h);
  std::vector<int> roleOf(lab.componentCount);
  for (const auto& c : ball.components) roleOf[c.id] = static_cast<int>(c.role);
  f.omegaLocallyConnected = Tri::kFalse;
  f.omegaX0.imKleinen = Tri::kFalse;
  for (double d : deltas) {
    int single = -2;
    bool allContact = true;
    bool any = false;
    for (CellId c = 0; c < raster.cellCount(); ++c) {
      int l = lab.labels[c];
      if (l < 0 || dist(raster.center(c), ball.x0) > d) continue;
      any = true;
      if (roleOf[l] == static_cast<int>(ComponentRole::kH)) allContact = false;
      // Sub-resolution pockets carry no evidence of separation.
      if (roleOf[l] == static_cast<int>(ComponentRole::kUnresolvedContact)) continue;
      single = single == -2 ? l : (single == l ? l : -1);
    }
    if (!any) continue;
    if (allContact && f.omegaX0.imKleinen != Tri::kTrue) {
      f.omegaX0.imKleinen = Tri::kTrue;
      f.omegaX0.witnessDelta = d;
    }
    if (allContact && single >= 0) f.omegaLocallyConnected = Tri::kTrue;
  }
  // Components of the domain are open, so the x0 component is open at scale.
  f.omegaX0.locallyConnected = f.omegaX0.imKleinen;

  HalfLattice lat(spec, raster, ball.x0, ball.r);
  std::vector<std::uint8_t> comp(lat.size()), bdry(lat.size(), 0);
  for (std::size_t q = 0; q < lat.size(); ++q) comp[q] = lat.complement(q) ? 1 : 0;
  for (std::size_t q = 0; q < lat.size(); ++q) {
    if (!comp[q]) continue;
    bool touches = lat.thin(q);
    lat.forEachNeighbor(q, [&](std::size_t nb) {
      if (!comp[nb] && dist(lat.point(nb), ball.x0) <= ball.r + ball.h) touches = true;
    });
    bdry[q] = touches ? 1 : 0;
  }
  f.complement = evaluateSet(lat, comp, ball.x0, ball.r, ball.h);
  f.boundary = evaluateSet(lat, bdry, ball.x0, ball.r, ball.h);
  return f;
}

}  // namespace mazu
