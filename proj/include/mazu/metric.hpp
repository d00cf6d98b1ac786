#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "json.hpp"

#include "mazu/connectivity.hpp"
#include "mazu/raster.hpp"

namespace mazu {

struct DmBound {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<CellId> witnessPath;  // adjacency path x -> y with diameter hi
  /// x and y are disconnected in the domain intersected with the closed
  /// balls B(x, D) and B(y, D) for this D (and for every smaller one).
  double loCertificate = 0.0;

  nlohmann::json toJson(const Raster& raster) const;
};

struct DmExactResult {
  double value = 0.0;    // exact value, or the best incumbent when !exact
  bool exact = false;    // false: node budget exhausted
  std::vector<CellId> path;
  std::uint64_t nodes = 0;

  nlohmann::json toJson(const Raster& raster) const;
};

/// Bottleneck (minimax) field: for every reachable cell c, the least value
/// over adjacency paths from `source` to c of the largest node weight on the
/// path; ties are broken by path length. Unreached cells hold +inf.
struct BottleneckField {
  std::vector<double> value;
  std::vector<CellId> parent;
  std::vector<CellId> pathTo(CellId target) const;  // source ... target
};

BottleneckField bottleneckField(const Raster& raster, CellId source, const std::function<double(CellId)>& weight,
                                const CellMask& allowed = {});

/// Minimum over simple adjacency paths x -> y of the Euclidean diameter of
/// the path's center set, by branch and bound.
DmExactResult dmExact(const Raster& raster, CellId x, CellId y, std::uint64_t nodeBudget = 2'000'000);

/// Certified interval for d_M. With an empty grid the lower bound is the
/// exact lens connection threshold; otherwise it is the largest grid value
/// below it (never below |x - y|).
DmBound dmBounds(const Raster& raster, CellId x, CellId y, const std::vector<double>& candidateGrid = {});

/// Shortest path length over face adjacency (edge weight h).
double innerDistance(const Raster& raster, CellId x, CellId y);

std::vector<std::vector<DmBound>> dmMatrix(const Raster& raster, const std::vector<CellId>& points,
                                           const std::vector<double>& candidateGrid = {});

/// Diameter of the center set of a cell path.
double pathDiameter(const Raster& raster, const std::vector<CellId>& path);

}  // namespace mazu
