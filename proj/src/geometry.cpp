#include "mazu/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "mazu/error.hpp"

namespace mazu {

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kMalformedSpec: return "MalformedSpec";
    case ErrorCode::kResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::kWindowEmpty: return "WindowEmpty";
    case ErrorCode::kNotBoundary: return "NotBoundary";
    case ErrorCode::kDisconnected: return "Disconnected";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kQueryInObstacle: return "QueryInObstacle";
    case ErrorCode::kNotFinitelyConnected: return "NotFinitelyConnected";
    case ErrorCode::kUnknownExample: return "UnknownExample";
    case ErrorCode::kPayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

double segmentPointDist2(Point a, Point b, Point p) {
  Point ab = b - a;
  double len2 = norm2(ab);
  double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
  return norm2(p - (a + t * ab));
}

namespace {

// Sign of the planar orientation determinant, evaluated in long double.
int orient(Point a, Point b, Point c) {
  long double det = (static_cast<long double>(b.x) - a.x) * (static_cast<long double>(c.y) - a.y) -
                    (static_cast<long double>(b.y) - a.y) * (static_cast<long double>(c.x) - a.x);
  return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

bool onSegment(Point a, Point b, Point p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segmentsIntersect2d(Point p1, Point p2, Point q1, Point q2) {
  int o1 = orient(p1, p2, q1);
  int o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1);
  int o4 = orient(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && onSegment(p1, p2, q1)) return true;
  if (o2 == 0 && onSegment(p1, p2, q2)) return true;
  if (o3 == 0 && onSegment(q1, q2, p1)) return true;
  if (o4 == 0 && onSegment(q1, q2, p2)) return true;
  return false;
}

double parseRational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::kInvalidArgument, "empty numeric value");
  auto parseOne = [](std::string_view s) {
    std::string buf(s);
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(buf, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "not a number: '" + buf + "'");
    }
    if (used != buf.size()) throw Error(ErrorCode::kInvalidArgument, "not a number: '" + buf + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parseOne(text);
  double num = parseOne(trim(text.substr(0, slash)));
  double den = parseOne(trim(text.substr(slash + 1)));
  if (den == 0.0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  return num / den;
}

Point parsePoint(std::string_view text) {
  std::vector<double> coords;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    coords.push_back(parseRational(text.substr(start, comma - start)));
    start = comma + 1;
  }
  if (coords.size() < 2 || coords.size() > 3)
    throw Error(ErrorCode::kInvalidArgument, "point needs 2 or 3 coordinates");
  Point p{coords[0], coords[1], coords.size() == 3 ? coords[2] : 0.0};
  return p;
}

}  // namespace mazu
