#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mazu/geometry.hpp"

namespace mazu {

// ---------------------------------------------------------------------------
// Fat primitives. Every primitive carries its own open/closed convention so
// that half-open removed sets such as K x [0,1) evaluate exactly at sample
// points.

struct BoxPrim {
  Point lo;
  Point hi;
  std::array<bool, 3> loClosed{false, false, false};
  std::array<bool, 3> hiClosed{false, false, false};
};

/// Ball in the coordinates flagged by `axes`; unflagged axes are ignored, so
/// a 3D ball with axes {x, y} is an infinite cylinder.
struct BallPrim {
  Point center;
  double radius = 0.0;
  bool closed = false;
  std::array<bool, 3> axes{true, true, true};
};

/// Half-space { p : normal . p < offset } (<= when closed).
struct HalfSpacePrim {
  Point normal;
  double offset = 0.0;
  bool closed = false;
};

using Primitive = std::variant<BoxPrim, BallPrim, HalfSpacePrim>;

struct CsgNode {
  enum class Op { kPrimitive, kUnion, kIntersection, kDifference };

  Op op = Op::kPrimitive;
  Primitive prim;
  std::vector<CsgNode> children;

  static CsgNode box(Point lo, Point hi);
  static CsgNode box(BoxPrim b);
  static CsgNode ball(Point center, double radius, bool closed = false);
  static CsgNode ball(BallPrim b);
  static CsgNode halfSpace(Point normal, double offset, bool closed = false);
  static CsgNode unite(std::vector<CsgNode> parts);
  static CsgNode intersect(std::vector<CsgNode> parts);
  /// First child minus every later child.
  static CsgNode subtract(CsgNode base, std::vector<CsgNode> removed);

  bool contains(Point p, int dim) const;
  /// Conservative bounding box; unbounded primitives report +-inf.
  BBox bounds(int dim) const;
};

// ---------------------------------------------------------------------------
// Thin obstacles: closed sets of codimension >= 1. They never remove cells;
// they block the adjacency edges whose connecting segment they meet.

struct SegmentObs {
  Point a;
  Point b;
};

struct PolylineObs {
  std::vector<Point> points;
};

struct CircleObs {
  Point center;
  double radius = 0.0;
};

/// Counterclockwise arc from angle `from` to angle `to` (radians, to > from).
struct ArcObs {
  Point center;
  double radius = 0.0;
  double from = 0.0;
  double to = 0.0;
};

/// Cantor-type set C_n x {c} (axis 0) or {c} x C_n (axis 1), scaled so that
/// C_0 = [origin, origin + length] along `axis`. A negative generation means
/// the raster picks n(h) = ceil(log3(length / h)) + 2.
struct CantorObs {
  int axis = 0;
  Point origin;
  double length = 1.0;
  int generation = -1;
};

/// Vertical segments {scale/k} x [y0, y1] for every integer k >= kFrom, plus
/// {0} x [y0, y1] when withLimit: an infinite comb, tested exactly.
struct TeethObs {
  double scale = 1.0;
  int kFrom = 1;
  bool withLimit = false;
  double y0 = 0.0;
  double y1 = 1.0;
};

/// Rays {center + t (cos(scale/k), sin(scale/k)) : 0 <= t <= length} for every
/// integer k >= kFrom, plus the ray at angle 0 when withLimit.
struct FanObs {
  Point center;
  double scale = 1.0;
  int kFrom = 1;
  bool withLimit = false;
  double length = 1.0;
};

using PlanarThin = std::variant<SegmentObs, PolylineObs, CircleObs, ArcObs, CantorObs, TeethObs, FanObs>;

/// z-interval of a surface extrusion (3D only).
struct ZRange {
  double z0 = 0.0;
  double z1 = 1.0;
  bool z0Closed = true;
  bool z1Closed = false;

  bool contains(double z) const {
    return (z0Closed ? z >= z0 : z > z0) && (z1Closed ? z <= z1 : z < z1);
  }
};

struct ThinObstacle {
  PlanarThin shape;
  std::optional<ZRange> extrude;

  /// Whether the closed segment [a, b] meets the obstacle. `cantorGen` is the
  /// generation used for Cantor obstacles with automatic generation.
  bool hitsSegment(Point a, Point b, int dim, int cantorGen) const;
  /// Whether p lies on the obstacle (within `tol`).
  bool containsPoint(Point p, int dim, int cantorGen, double tol = 1e-12) const;
  /// Visits points spaced at most `step` apart that cover the obstacle inside
  /// `clip`.
  void sample(double step, const BBox& clip, int dim, int cantorGen,
              const std::function<void(Point)>& visit) const;
  BBox bounds() const;
};

/// Intervals of the n-th Cantor generation of [0, 1], sorted.
std::vector<std::array<double, 2>> cantorIntervals(int generation);

/// Generation used for an automatic Cantor obstacle at spacing h.
int cantorGenerationFor(double length, double h);

enum class Membership { kInsideSolid, kOutsideSolid, kOnThin };

const char* membershipName(Membership m);

/// Resolution-independent description of a bounded domain.
struct DomainSpec {
  std::string name;
  int dim = 2;
  CsgNode solid;
  std::vector<ThinObstacle> thin;
  double featureSize = 0.0;  // 0: no declared minimum feature
  BBox declaredBox;          // bounding box of the domain
  std::map<std::string, std::string> metadata;

  /// Declared box inflated by 25% on each side.
  BBox defaultWindow() const;
  void validate() const;
};

Membership evalMembership(const DomainSpec& spec, Point p, double h = 0.0);

}  // namespace mazu
