#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "mazu/raster.hpp"

namespace mazu {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);
  std::size_t find(std::size_t a);
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// Cell membership mask over a raster (1 = selected).
using CellMask = std::vector<std::uint8_t>;

struct ComponentLabeling {
  std::vector<std::int32_t> labels;  // per raster cell; -1 outside the subset
  int componentCount = 0;
  std::vector<std::vector<CellId>> componentCells;
  std::vector<double> componentDiameterBound;

  nlohmann::json toJson() const;
};

/// Components of the selected domain cells under unblocked face adjacency.
/// Labels follow the lowest lattice index in each component.
ComponentLabeling components(const Raster& raster, const CellMask& subset);
ComponentLabeling components(const Raster& raster, const std::vector<CellId>& subset);

/// Max pairwise distance between cell centers (exact).
double centerSetDiameter(const Raster& raster, const std::vector<CellId>& cells);

/// Closure-contact threshold factor: 1.5 in 2D, 1.8 in 3D.
double contactTau(int dim);

/// Minimum distance from p to the centers of `cells`.
double minCenterDistance(const Raster& raster, const std::vector<CellId>& cells, Point p);

/// True iff some center of `cells` lies within tau*h of p.
bool contact(const Raster& raster, const std::vector<CellId>& cells, Point p);

/// Whether the cell set K separates cells x and y inside the raster window
/// with all outside space merged into one node adjacent to the frame.
/// Adjacency is face adjacency of lattice cells, ignoring the domain.
bool separates(const Raster& raster, const CellMask& K, CellId x, CellId y);

/// Breadth-first flood over linked domain cells restricted to `allowed`
/// (empty mask = no restriction). Returns the reached mask.
CellMask floodFrom(const Raster& raster, CellId seed, const CellMask& allowed);

}  // namespace mazu
