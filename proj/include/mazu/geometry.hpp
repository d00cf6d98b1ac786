#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace mazu {

/// Point in R^2 or R^3. Planar data keeps z = 0.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm2(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist(Point a, Point b) { return norm(a - b); }

/// Axis-aligned box [lo, hi] used for windows and bounding boxes.
struct BBox {
  Point lo;
  Point hi;

  bool contains(Point p, int dim) const {
    for (int i = 0; i < dim; ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
  bool intersects(const BBox& o, int dim) const {
    for (int i = 0; i < dim; ++i)
      if (o.hi[i] < lo[i] || o.lo[i] > hi[i]) return false;
    return true;
  }
  friend bool operator==(const BBox&, const BBox&) = default;
  BBox inflated(double margin) const {
    return {lo - Point{margin, margin, margin}, hi + Point{margin, margin, margin}};
  }
};

/// Squared distance from p to the closed segment [a, b].
double segmentPointDist2(Point a, Point b, Point p);

/// Closed planar segments [p1,p2] and [q1,q2] (xy components) share a point.
bool segmentsIntersect2d(Point p1, Point p2, Point q1, Point q2);

/// Parses "p/q", a decimal, or an integer literal.
double parseRational(std::string_view text);

/// Parses a comma separated coordinate list, each entry a rational.
Point parsePoint(std::string_view text);

}  // namespace mazu
