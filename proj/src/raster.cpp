#include "mazu/raster.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mazu/error.hpp"

namespace mazu {

using nlohmann::json;

CellId Raster::locate(Point p) const {
  std::array<int, 3> ijk{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    double f = std::floor((p[a] - origin_[a]) / h_);
    if (f < 0 || f >= n_[a]) return kNoCell;
    ijk[a] = static_cast<int>(f);
  }
  return index(ijk[0], ijk[1], ijk[2]);
}

CellId Raster::step(CellId c, int axis, int dir) const {
  auto ijk = coords(c);
  int v = ijk[axis] + dir;
  if (v < 0 || v >= n_[axis]) return kNoCell;
  ijk[axis] = v;
  return index(ijk[0], ijk[1], ijk[2]);
}

bool Raster::linked(CellId c, int axis, int dir) const {
  CellId nb = step(c, axis, dir);
  if (nb == kNoCell || !inside_[c] || !inside_[nb]) return false;
  return dir > 0 ? !blocked(c, axis) : !blocked(nb, axis);
}

std::vector<CellId> Raster::domainCells() const {
  std::vector<CellId> out;
  for (CellId c = 0; c < cellCount(); ++c)
    if (inside_[c]) out.push_back(c);
  return out;
}

std::size_t Raster::blockedEdgeCount() const {
  std::size_t n = 0;
  for (auto b : blocked_) n += std::popcount(static_cast<unsigned>(b));
  return n;
}

json Raster::toJson() const {
  static const char* hex = "0123456789abcdef";
  std::string bits;
  bits.reserve(inside_.size() / 4 + 1);
  for (std::size_t i = 0; i < inside_.size(); i += 4) {
    unsigned nib = 0;
    for (std::size_t j = 0; j < 4 && i + j < inside_.size(); ++j)
      if (inside_[i + j]) nib |= 1u << j;
    bits.push_back(hex[nib]);
  }
  json edges = json::array();
  for (CellId c = 0; c < cellCount(); ++c)
    for (int a = 0; a < dim_; ++a)
      if (blocked(c, a)) edges.push_back({c, a});
  return {{"version", 1},
          {"dim", dim_},
          {"h", h_},
          {"origin", {origin_.x, origin_.y, origin_.z}},
          {"size", n_},
          {"window", {{"lo", {window_.lo.x, window_.lo.y, window_.lo.z}},
                      {"hi", {window_.hi.x, window_.hi.y, window_.hi.z}}}},
          {"cellBitset", bits},
          {"blockedEdgeList", edges}};
}

Raster Raster::fromJson(const json& doc) {
  if (doc.value("version", 0) != 1) throw Error(ErrorCode::kInvalidArgument, "unsupported raster version");
  Raster r;
  r.dim_ = doc.at("dim").get<int>();
  r.h_ = doc.at("h").get<double>();
  auto o = doc.at("origin");
  r.origin_ = {o[0].get<double>(), o[1].get<double>(), o[2].get<double>()};
  r.n_ = doc.at("size").get<std::array<int, 3>>();
  auto wl = doc.at("window").at("lo"), wh = doc.at("window").at("hi");
  r.window_ = {{wl[0].get<double>(), wl[1].get<double>(), wl[2].get<double>()},
               {wh[0].get<double>(), wh[1].get<double>(), wh[2].get<double>()}};
  std::size_t total = static_cast<std::size_t>(r.n_[0]) * r.n_[1] * r.n_[2];
  r.inside_.assign(total, 0);
  r.blocked_.assign(total, 0);
  const std::string bits = doc.at("cellBitset").get<std::string>();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    char ch = bits[i];
    unsigned nib = ch <= '9' ? ch - '0' : ch - 'a' + 10;
    for (std::size_t j = 0; j < 4 && 4 * i + j < total; ++j) r.inside_[4 * i + j] = (nib >> j) & 1u;
  }
  for (const auto& e : doc.at("blockedEdgeList"))
    r.blocked_[e[0].get<CellId>()] |= static_cast<std::uint8_t>(1u << e[1].get<int>());
  return r;
}

BBox windowAround(Point x0, double halfWidth, int dim) {
  BBox w{x0 - Point{halfWidth, halfWidth, halfWidth}, x0 + Point{halfWidth, halfWidth, halfWidth}};
  if (dim == 2) w.lo.z = w.hi.z = 0.0;
  return w;
}

namespace {

void setupLattice(Raster& r, int dim, double h, const BBox& window, Point& origin, std::array<int, 3>& n) {
  (void)r;
  n = {1, 1, 1};
  for (int a = 0; a < dim; ++a) {
    double lo = std::floor(window.lo[a] / h) * h;
    int cnt = static_cast<int>(std::ceil((window.hi[a] - lo) / h - 1e-9));
    if (!(window.hi[a] > window.lo[a]) || cnt <= 0)
      throw Error(ErrorCode::kWindowEmpty, "raster window is empty");
    origin[a] = lo;
    n[a] = cnt;
  }
}

}  // namespace

Raster rasterize(const DomainSpec& spec, const BBox& window, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::kInvalidArgument, "spacing must be positive");
  if (spec.featureSize > 0.0 && h > spec.featureSize / 8.0)
    throw Error(ErrorCode::kResolutionTooCoarse, "h exceeds 1/8 of the declared feature size");
  const int dim = spec.dim;
  Raster r;
  r.dim_ = dim;
  r.h_ = h;
  r.window_ = window;
  if (dim == 2) r.window_.lo.z = r.window_.hi.z = 0.0;
  Point origin;
  std::array<int, 3> n;
  setupLattice(r, dim, h, r.window_, origin, n);
  double total = static_cast<double>(n[0]) * n[1] * n[2];
  if (total > 6.0e7) throw Error(ErrorCode::kInvalidArgument, "raster too large");
  r.origin_ = origin;
  r.n_ = n;
  r.inside_.assign(static_cast<std::size_t>(total), 0);
  r.blocked_.assign(static_cast<std::size_t>(total), 0);

  for (CellId c = 0; c < r.cellCount(); ++c) r.inside_[c] = spec.solid.contains(r.center(c), dim) ? 1 : 0;

  // Thin obstacles: visit cells near each obstacle and test their face edges
  // exactly. Cells whose center lies on an obstacle leave the domain.
  std::vector<std::uint32_t> stamp(r.inside_.size(), 0);
  std::vector<std::uint8_t> onThin(r.inside_.size(), 0);
  BBox clip = r.window_.inflated(2.0 * h);
  if (dim == 2) clip.lo.z = clip.hi.z = 0.0;
  for (std::size_t oi = 0; oi < spec.thin.size(); ++oi) {
    const ThinObstacle& obs = spec.thin[oi];
    int gen = 0;
    if (const auto* cz = std::get_if<CantorObs>(&obs.shape)) gen = cantorGenerationFor(cz->length, h);
    const std::uint32_t mark = static_cast<std::uint32_t>(oi + 1);
    obs.sample(0.5 * h, clip, dim, gen, [&](Point p) {
      std::array<int, 3> base{0, 0, 0};
      for (int a = 0; a < dim; ++a) base[a] = static_cast<int>(std::floor((p[a] - origin[a]) / h));
      int kz0 = dim == 3 ? -1 : 0, kz1 = dim == 3 ? 1 : 0;
      for (int dk = kz0; dk <= kz1; ++dk)
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            int i = base[0] + di, j = base[1] + dj, k = base[2] + dk;
            if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
            CellId c = r.index(i, j, k);
            if (stamp[c] == mark) continue;
            stamp[c] = mark;
            if (!r.inside_[c]) continue;
            Point pc = r.center(c);
            if (obs.containsPoint(pc, dim, gen, 1e-12 * std::max(1.0, h))) onThin[c] = 1;
            for (int a = 0; a < dim; ++a) {
              if (r.blocked(c, a)) continue;
              CellId nb = r.step(c, a, 1);
              if (nb == kNoCell || !r.inside_[nb]) continue;
              if (obs.hitsSegment(pc, r.center(nb), dim, gen)) r.blocked_[c] |= static_cast<std::uint8_t>(1u << a);
            }
          }
    });
  }
  for (CellId c = 0; c < r.cellCount(); ++c)
    if (onThin[c]) r.inside_[c] = 0;
  // Edges touching removed cells carry no information.
  for (CellId c = 0; c < r.cellCount(); ++c) {
    if (!r.inside_[c]) {
      r.blocked_[c] = 0;
      continue;
    }
    for (int a = 0; a < dim; ++a) {
      CellId nb = r.step(c, a, 1);
      if (nb == kNoCell || !r.inside_[nb]) r.blocked_[c] &= static_cast<std::uint8_t>(~(1u << a));
    }
  }
  return r;
}

Raster rasterFromMask(int dim, double h, Point origin, std::array<int, 3> n, std::vector<std::uint8_t> inside) {
  Raster r;
  r.dim_ = dim;
  r.h_ = h;
  r.origin_ = origin;
  r.n_ = n;
  if (dim == 2) r.n_[2] = 1;
  std::size_t total = static_cast<std::size_t>(r.n_[0]) * r.n_[1] * r.n_[2];
  if (inside.size() != total) throw Error(ErrorCode::kInvalidArgument, "mask size mismatch");
  r.window_ = {origin, origin + Point{n[0] * h, n[1] * h, dim == 3 ? n[2] * h : 0.0}};
  r.inside_ = std::move(inside);
  r.blocked_.assign(total, 0);
  return r;
}

const char* boundaryKindName(BoundarySample::Kind k) {
  switch (k) {
    case BoundarySample::Kind::kOutsideCellContact: return "outside-cell-contact";
    case BoundarySample::Kind::kBlockedEdgeMidpoint: return "blocked-edge-midpoint";
    case BoundarySample::Kind::kThinObstaclePoint: return "thin-obstacle-point";
  }
  return "?";
}

std::vector<BoundarySample> boundarySamples(const DomainSpec& spec, const Raster& raster) {
  (void)spec;
  const int dim = raster.dim();
  const auto& n = raster.size();
  const double h = raster.h();
  std::vector<BoundarySample> out;
  // Complement cells touching a domain cell through a face or a corner.
  for (CellId c = 0; c < raster.cellCount(); ++c) {
    if (raster.inside(c)) continue;
    auto ijk = raster.coords(c);
    bool touch = false;
    int kz0 = dim == 3 ? -1 : 0, kz1 = dim == 3 ? 1 : 0;
    for (int dk = kz0; dk <= kz1 && !touch; ++dk)
      for (int dj = -1; dj <= 1 && !touch; ++dj)
        for (int di = -1; di <= 1 && !touch; ++di) {
          int i = ijk[0] + di, j = ijk[1] + dj, k = ijk[2] + dk;
          if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) continue;
          if (raster.inside(raster.index(i, j, k))) touch = true;
        }
    if (touch) out.push_back({BoundarySample::Kind::kOutsideCellContact, raster.center(c), std::nullopt});
  }
  // Blocked edge midpoints lie on half-lattice positions and cannot coincide
  // with cell centers or each other, so deduplication is only needed across
  // kinds when thin obstacles run along the frame.
  for (CellId c = 0; c < raster.cellCount(); ++c)
    for (int a = 0; a < dim; ++a)
      if (raster.blocked(c, a)) {
        Point p = raster.center(c);
        p[a] += 0.5 * h;
        out.push_back({BoundarySample::Kind::kBlockedEdgeMidpoint, p, std::nullopt});
      }
  return out;
}

bool isBoundaryPoint(const Raster& raster, Point x0, double reach, bool thinNearby) {
  const int dim = raster.dim();
  const double h = raster.h();
  const double near = std::sqrt(static_cast<double>(dim)) * h + 1e-12;
  reach = std::max(reach, near);
  int span = static_cast<int>(std::ceil(reach / h)) + 1;
  CellId base = raster.locate(x0);
  std::array<int, 3> b{0, 0, 0};
  for (int a = 0; a < dim; ++a) b[a] = static_cast<int>(std::floor((x0[a] - raster.origin()[a]) / h));
  (void)base;
  const auto& n = raster.size();
  bool complementNear = thinNearby, domainNear = false;
  int kz = dim == 3 ? span : 0;
  for (int dk = -kz; dk <= kz; ++dk)
    for (int dj = -span; dj <= span; ++dj)
      for (int di = -span; di <= span; ++di) {
        int i = b[0] + di, j = b[1] + dj, k = b[2] + dk;
        if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) {
          // Outside the lattice counts as complement.
          complementNear = true;
          continue;
        }
        CellId c = raster.index(i, j, k);
        double d = dist(raster.center(c), x0);
        if (raster.inside(c)) {
          if (d <= reach) domainNear = true;
          if (d <= near) {
            for (int a = 0; a < dim; ++a) {
              if (!raster.blocked(c, a)) continue;
              Point m = raster.center(c);
              m[a] += 0.5 * h;
              if (dist(m, x0) <= near) complementNear = true;
            }
          }
        } else if (d <= near) {
          complementNear = true;
        }
      }
  return complementNear && domainNear;
}

}  // namespace mazu
