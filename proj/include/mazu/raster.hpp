#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mazu/domain.hpp"

namespace mazu {

using CellId = std::int32_t;
inline constexpr CellId kNoCell = -1;

/// Sampled adjacency graph of a domain at spacing h. Cell centers sit at
/// origin + (i + 1/2) h, so a lattice-aligned origin puts dyadic features
/// strictly between centers. Immutable once built.
class Raster {
 public:
  Raster() = default;

  int dim() const { return dim_; }
  double h() const { return h_; }
  Point origin() const { return origin_; }
  const std::array<int, 3>& size() const { return n_; }
  const BBox& window() const { return window_; }
  CellId cellCount() const { return static_cast<CellId>(inside_.size()); }

  CellId index(int i, int j, int k = 0) const { return i + n_[0] * (j + n_[1] * k); }
  std::array<int, 3> coords(CellId c) const {
    return {c % n_[0], (c / n_[0]) % n_[1], c / (n_[0] * n_[1])};
  }
  Point center(CellId c) const {
    auto ijk = coords(c);
    return Point{origin_.x + (ijk[0] + 0.5) * h_, origin_.y + (ijk[1] + 0.5) * h_,
                 dim_ == 3 ? origin_.z + (ijk[2] + 0.5) * h_ : 0.0};
  }
  /// Cell whose square/cube contains p, or kNoCell outside the lattice.
  CellId locate(Point p) const;

  bool inside(CellId c) const { return inside_[c] != 0; }
  /// Whether the face edge from c towards +axis is blocked by a thin obstacle.
  bool blocked(CellId c, int axis) const { return (blocked_[c] >> axis) & 1u; }

  /// Neighbor across the face in direction (axis, +1/-1); kNoCell at the frame.
  CellId step(CellId c, int axis, int dir) const;
  /// Domain adjacency: both cells in the domain and the edge unblocked.
  bool linked(CellId c, int axis, int dir) const;

  template <class Fn>
  void forEachLinked(CellId c, Fn&& fn) const {
    for (int a = 0; a < dim_; ++a)
      for (int d : {-1, 1}) {
        CellId nb = step(c, a, d);
        if (nb != kNoCell && linked(c, a, d)) fn(nb);
      }
  }

  std::vector<CellId> domainCells() const;
  std::size_t blockedEdgeCount() const;

  nlohmann::json toJson() const;
  static Raster fromJson(const nlohmann::json& doc);

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  friend Raster rasterize(const DomainSpec& spec, const BBox& window, double h);
  friend Raster rasterFromMask(int dim, double h, Point origin, std::array<int, 3> n,
                               std::vector<std::uint8_t> inside);

  int dim_ = 2;
  double h_ = 0.0;
  Point origin_;
  std::array<int, 3> n_{0, 0, 1};
  BBox window_;
  std::vector<std::uint8_t> inside_;
  std::vector<std::uint8_t> blocked_;
};

/// Rasterizes `spec` over `window` at spacing h. The lattice origin snaps to
/// a multiple of h so that rasters of the same spec at the same h agree
/// cell-for-cell on overlapping windows.
Raster rasterize(const DomainSpec& spec, const BBox& window, double h);

/// Raster with an explicit domain mask and no blocked edges (tests, lab).
Raster rasterFromMask(int dim, double h, Point origin, std::array<int, 3> n,
                      std::vector<std::uint8_t> inside);

/// Box window around x0 of half-width `halfWidth` (clipped to 2D when dim=2).
BBox windowAround(Point x0, double halfWidth, int dim);

struct BoundarySample {
  enum class Kind { kOutsideCellContact, kBlockedEdgeMidpoint, kThinObstaclePoint };
  Kind kind;
  Point point;
  std::optional<Point> snappedFrom;
};

const char* boundaryKindName(BoundarySample::Kind k);

/// Complement cell centers face- or diagonal-adjacent to a domain cell plus
/// midpoints of blocked edges, deduplicated within h/2.
std::vector<BoundarySample> boundarySamples(const DomainSpec& spec, const Raster& raster);

/// Whether x0 passes the boundary-sample test at spacing h: a complement point
/// (non-domain cell center or blocked-edge midpoint) lies within sqrt(dim) h
/// of x0 and a domain cell center lies within `reach` (at least sqrt(dim) h).
/// `thinNearby` supplies a thin-obstacle point within sqrt(dim) h as the
/// complement witness.
bool isBoundaryPoint(const Raster& raster, Point x0, double reach, bool thinNearby = false);

}  // namespace mazu
