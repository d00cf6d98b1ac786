#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mazu/classifier.hpp"
#include "mazu/connectivity.hpp"
#include "mazu/raster.hpp"

namespace mazu {

struct SvgStyle {
  double cellPx = 4.0;
  bool blockedEdges = true;
  std::vector<Point> probes;     // marked with a cross
  std::vector<double> circles;   // radii around the first probe
  std::optional<int> slice;      // z layer for 3D rasters (default: middle)
};

/// Largest raster rendered; larger payloads throw PayloadTooLarge.
inline constexpr std::size_t kSvgCellLimit = 4'000'000;

/// Domain cells in one fill, blocked edges as strokes.
std::string renderRasterSvg(const Raster& raster, const SvgStyle& style = {});
/// Components colored by label order; unlabeled domain cells in grey.
std::string renderLabelingSvg(const Raster& raster, const ComponentLabeling& labeling, const SvgStyle& style = {});
/// A cell path drawn as a polyline over the domain.
std::string renderPathSvg(const Raster& raster, const std::vector<CellId>& path, const SvgStyle& style = {});
/// Coarsest ladder scale with its labeling, x0 and the ladder circles.
std::string renderVerdictSvg(const BoundaryVerdict& verdict, SvgStyle style = {});

}  // namespace mazu
