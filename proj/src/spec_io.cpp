#include "mazu/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mazu/error.hpp"

namespace mazu {

using nlohmann::json;

namespace {

double num(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parseRational(v.get<std::string>());
  throw Error(ErrorCode::kMalformedSpec, "expected number, got " + v.dump());
}

Point point(const json& v) {
  if (v.is_string()) return parsePoint(v.get<std::string>());
  if (v.is_array() && (v.size() == 2 || v.size() == 3)) {
    Point p{num(v[0]), num(v[1]), v.size() == 3 ? num(v[2]) : 0.0};
    return p;
  }
  throw Error(ErrorCode::kMalformedSpec, "expected point, got " + v.dump());
}

std::array<bool, 3> flags(const json& obj, const char* key) {
  std::array<bool, 3> out{false, false, false};
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  if (v.is_boolean()) return {v.get<bool>(), v.get<bool>(), v.get<bool>()};
  for (size_t i = 0; i < v.size() && i < 3; ++i) out[i] = v[i].get<bool>();
  return out;
}

json pointJson(Point p, int dim) {
  json a = json::array({p.x, p.y});
  if (dim == 3) a.push_back(p.z);
  return a;
}

class CsgParser {
 public:
  CsgParser(const json& defs) : defs_(defs) {}

  CsgNode parse(const json& node) {
    if (!node.is_object() || node.size() != 1)
      throw Error(ErrorCode::kMalformedSpec, "CSG node must be a one-key object: " + node.dump());
    const auto& [key, body] = *node.items().begin();
    if (key == "ref") {
      std::string name = body.get<std::string>();
      if (active_.count(name)) throw Error(ErrorCode::kMalformedSpec, "cyclic CSG reference: " + name);
      if (!defs_.contains(name)) throw Error(ErrorCode::kMalformedSpec, "unknown CSG reference: " + name);
      active_.insert(name);
      CsgNode out = parse(defs_.at(name));
      active_.erase(name);
      return out;
    }
    if (key == "box") {
      BoxPrim b{point(body.at("lo")), point(body.at("hi"))};
      b.loClosed = flags(body, "loClosed");
      b.hiClosed = flags(body, "hiClosed");
      return CsgNode::box(b);
    }
    if (key == "ball") {
      BallPrim b{point(body.at("center")), num(body.at("radius")), body.value("closed", false)};
      if (body.contains("axes")) b.axes = flags(body, "axes");
      return CsgNode::ball(b);
    }
    if (key == "halfspace")
      return CsgNode::halfSpace(point(body.at("normal")), num(body.at("offset")), body.value("closed", false));
    std::vector<CsgNode> kids;
    for (const auto& c : body) kids.push_back(parse(c));
    if (kids.empty()) throw Error(ErrorCode::kMalformedSpec, "empty CSG operand list");
    if (key == "union") return CsgNode::unite(std::move(kids));
    if (key == "intersection") return CsgNode::intersect(std::move(kids));
    if (key == "difference") {
      CsgNode base = std::move(kids.front());
      kids.erase(kids.begin());
      return CsgNode::subtract(std::move(base), std::move(kids));
    }
    throw Error(ErrorCode::kMalformedSpec, "unknown CSG operator: " + key);
  }

 private:
  const json& defs_;
  std::set<std::string> active_;
};

json csgJson(const CsgNode& n, int dim) {
  switch (n.op) {
    case CsgNode::Op::kPrimitive:
      return std::visit(
          [&](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BoxPrim>) {
              return {{"box",
                       {{"lo", pointJson(s.lo, dim)},
                        {"hi", pointJson(s.hi, dim)},
                        {"loClosed", s.loClosed},
                        {"hiClosed", s.hiClosed}}}};
            } else if constexpr (std::is_same_v<T, BallPrim>) {
              return {{"ball",
                       {{"center", pointJson(s.center, dim)},
                        {"radius", s.radius},
                        {"closed", s.closed},
                        {"axes", s.axes}}}};
            } else {
              return {{"halfspace",
                       {{"normal", pointJson(s.normal, dim)}, {"offset", s.offset}, {"closed", s.closed}}}};
            }
          },
          n.prim);
    case CsgNode::Op::kUnion:
    case CsgNode::Op::kIntersection:
    case CsgNode::Op::kDifference: {
      json kids = json::array();
      for (const auto& c : n.children) kids.push_back(csgJson(c, dim));
      const char* key = n.op == CsgNode::Op::kUnion          ? "union"
                        : n.op == CsgNode::Op::kIntersection ? "intersection"
                                                             : "difference";
      return {{key, kids}};
    }
  }
  return {};
}

PlanarThin planarFromJson(const json& node) {
  if (!node.is_object()) throw Error(ErrorCode::kMalformedSpec, "thin obstacle must be an object");
  if (node.contains("segment")) {
    const json& s = node.at("segment");
    return SegmentObs{point(s.at("a")), point(s.at("b"))};
  }
  if (node.contains("polyline")) {
    PolylineObs p;
    for (const auto& v : node.at("polyline").at("points")) p.points.push_back(point(v));
    if (p.points.size() < 2) throw Error(ErrorCode::kMalformedSpec, "polyline needs two points");
    return p;
  }
  if (node.contains("circle")) {
    const json& s = node.at("circle");
    return CircleObs{point(s.at("center")), num(s.at("radius"))};
  }
  if (node.contains("arc")) {
    const json& s = node.at("arc");
    return ArcObs{point(s.at("center")), num(s.at("radius")), num(s.at("from")), num(s.at("to"))};
  }
  if (node.contains("cantor")) {
    const json& s = node.at("cantor");
    CantorObs c;
    c.axis = s.value("axis", 0);
    c.origin = point(s.at("origin"));
    c.length = s.contains("length") ? num(s.at("length")) : 1.0;
    if (s.contains("generation") && !(s.at("generation").is_string() && s.at("generation") == "auto"))
      c.generation = s.at("generation").get<int>();
    return c;
  }
  if (node.contains("teeth")) {
    const json& s = node.at("teeth");
    TeethObs t;
    t.scale = s.contains("scale") ? num(s.at("scale")) : 1.0;
    t.kFrom = s.value("kFrom", 1);
    t.withLimit = s.value("withLimit", false);
    t.y0 = num(s.at("y0"));
    t.y1 = num(s.at("y1"));
    return t;
  }
  if (node.contains("fan")) {
    const json& s = node.at("fan");
    FanObs f;
    f.center = point(s.at("center"));
    f.scale = s.contains("scale") ? num(s.at("scale")) : 1.0;
    f.kFrom = s.value("kFrom", 1);
    f.withLimit = s.value("withLimit", false);
    f.length = num(s.at("length"));
    return f;
  }
  throw Error(ErrorCode::kMalformedSpec, "unknown thin obstacle: " + node.dump());
}

json planarJson(const PlanarThin& shape) {
  return std::visit(
      [&](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SegmentObs>) {
          return {{"segment", {{"a", pointJson(s.a, 2)}, {"b", pointJson(s.b, 2)}}}};
        } else if constexpr (std::is_same_v<T, PolylineObs>) {
          json pts = json::array();
          for (Point p : s.points) pts.push_back(pointJson(p, 2));
          return {{"polyline", {{"points", pts}}}};
        } else if constexpr (std::is_same_v<T, CircleObs>) {
          return {{"circle", {{"center", pointJson(s.center, 2)}, {"radius", s.radius}}}};
        } else if constexpr (std::is_same_v<T, ArcObs>) {
          return {{"arc", {{"center", pointJson(s.center, 2)}, {"radius", s.radius}, {"from", s.from}, {"to", s.to}}}};
        } else if constexpr (std::is_same_v<T, TeethObs>) {
          return {{"teeth",
                   {{"scale", s.scale}, {"kFrom", s.kFrom}, {"withLimit", s.withLimit}, {"y0", s.y0}, {"y1", s.y1}}}};
        } else if constexpr (std::is_same_v<T, FanObs>) {
          return {{"fan",
                   {{"center", pointJson(s.center, 2)},
                    {"scale", s.scale},
                    {"kFrom", s.kFrom},
                    {"withLimit", s.withLimit},
                    {"length", s.length}}}};
        } else {
          json c = {{"axis", s.axis}, {"origin", pointJson(s.origin, 2)}, {"length", s.length}};
          if (s.generation >= 0)
            c["generation"] = s.generation;
          else
            c["generation"] = "auto";
          return {{"cantor", c}};
        }
      },
      shape);
}

}  // namespace

DomainSpec specFromJson(const json& doc) {
  DomainSpec spec;
  try {
    spec.name = doc.value("name", std::string("unnamed"));
    spec.dim = doc.value("dim", 2);
    json defs = doc.contains("defs") ? doc.at("defs") : json::object();
    CsgParser parser(defs);
    spec.solid = parser.parse(doc.at("solid"));
    if (doc.contains("thin")) {
      for (const auto& t : doc.at("thin")) {
        ThinObstacle obs{planarFromJson(t), std::nullopt};
        if (t.contains("extrude")) {
          const json& e = t.at("extrude");
          obs.extrude = ZRange{num(e.at("z0")), num(e.at("z1")), e.value("z0Closed", true), e.value("z1Closed", false)};
        }
        spec.thin.push_back(std::move(obs));
      }
    }
    if (doc.contains("featureSize")) spec.featureSize = num(doc.at("featureSize"));
    if (doc.contains("box")) {
      spec.declaredBox = {point(doc.at("box").at("lo")), point(doc.at("box").at("hi"))};
    } else {
      spec.declaredBox = spec.solid.bounds(spec.dim);
    }
    if (doc.contains("metadata"))
      for (const auto& [k, v] : doc.at("metadata").items())
        spec.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedSpec, std::string("spec JSON: ") + e.what());
  }
  spec.validate();
  return spec;
}

json specToJson(const DomainSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["dim"] = spec.dim;
  doc["solid"] = csgJson(spec.solid, spec.dim);
  json thin = json::array();
  for (const auto& t : spec.thin) {
    json o = planarJson(t.shape);
    if (t.extrude)
      o["extrude"] = {{"z0", t.extrude->z0}, {"z1", t.extrude->z1},
                      {"z0Closed", t.extrude->z0Closed}, {"z1Closed", t.extrude->z1Closed}};
    thin.push_back(o);
  }
  doc["thin"] = thin;
  doc["featureSize"] = spec.featureSize;
  doc["box"] = {{"lo", pointJson(spec.declaredBox.lo, spec.dim)}, {"hi", pointJson(spec.declaredBox.hi, spec.dim)}};
  doc["metadata"] = spec.metadata;
  return doc;
}

DomainSpec loadSpecFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open spec file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedSpec, "spec file " + path + ": " + e.what());
  }
  return specFromJson(doc);
}

void saveSpecFile(const DomainSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write spec file: " + path);
  out << specToJson(spec).dump(1) << "\n";
}

std::uint64_t specHash(const DomainSpec& spec) {
  std::string text = specToJson(spec).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hashHex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mazu
