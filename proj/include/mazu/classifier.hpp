#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "mazu/connectivity.hpp"
#include "mazu/domain.hpp"
#include "mazu/raster.hpp"

namespace mazu {

/// Builds the spec used at spacing h. Examples with infinite families of
/// features regenerate their truncation per h; plain specs ignore h.
using SpecFactory = std::function<DomainSpec(double h)>;
SpecFactory fixedSpec(DomainSpec spec);

enum class ContactKind { kNone, kVisibility, kRefinement };
enum class ComponentRole { kG, kH, kUnresolvedContact };

const char* contactKindName(ContactKind k);
const char* componentRoleName(ComponentRole r);

struct ComponentSummary {
  int id = 0;
  std::size_t cellCount = 0;
  double minDistance = 0.0;  // nearest cell center to x0
  double diameter = 0.0;
  bool resolved = false;  // holds a cell with all face links inside the ball
  ContactKind contact = ContactKind::kNone;
  ComponentRole role = ComponentRole::kH;
};

struct AnalysisOptions {
  int refineLevels = 3;
  std::size_t localCellCap = 4'000'000;
  int visibilityCandidates = 6;
};

/// Components of B(x0, r) intersected with the domain at spacing h, split by
/// closure contact with x0.
struct BallAnalysis {
  Point x0;
  double r = 0.0;
  double h = 0.0;
  int dim = 2;
  int N = 0;
  std::vector<int> gs;          // resolved contact components
  std::vector<int> hs;          // components without contact
  std::vector<int> unresolved;  // contact fragments without an interior cell
  double closureRadius = 0.0;   // H is tested against B(x0, closureRadius)
  bool x0InClosureH = false;
  double nearestH = 0.0;  // +inf when H is empty
  std::vector<ComponentSummary> components;

  std::shared_ptr<const Raster> raster;
  std::shared_ptr<const ComponentLabeling> labeling;

  int totalComponents() const { return static_cast<int>(components.size()); }
  nlohmann::json toJson() const;
};

/// Radii r/2, r/4, ... not below `floor`; never empty (falls back to r/2).
std::vector<double> deltaLadder(double r, double floor);

BallAnalysis analyzeBall(const DomainSpec& spec, Point x0, double r, double h, const AnalysisOptions& opts = {});

/// Whether the straight segment from a towards b (stopping just short of b)
/// stays inside the solid and meets no thin obstacle at spacing h.
bool visibleSegment(const DomainSpec& spec, Point a, Point b, double h);

struct LadderPolicy {
  double hRatio = 64.0;     // h_k = r_k / hRatio
  bool refineTop = true;    // also analyze r0 at h/2
  bool refineClosure = true;  // re-analyze at h/2 where x0 meets closure(H)
};

struct MonotonicityStatus {
  bool checked = false;  // x0InClosureH false at every scale
  bool holds = true;
  std::vector<std::string> exceptions;
};

struct Ladder {
  Point x0;
  std::vector<BallAnalysis> scales;                 // r_k = r0 2^-k
  std::vector<std::optional<BallAnalysis>> refined;  // same r, half spacing
  MonotonicityStatus monotonicity;
  nlohmann::json toJson() const;
};

Ladder scaleLadder(const SpecFactory& factory, Point x0, double r0, int kMax, const LadderPolicy& policy = {},
                   const AnalysisOptions& opts = {});

struct Classification {
  enum class Kind { kNConnected, kFinitelyConnectedEvidence, kNotFinitelyConnectedEvidence, kInconclusive };
  Kind kind = Kind::kInconclusive;
  int N = 0;
  std::vector<std::string> reasons;
  std::string label() const;
};

Classification classify(const Ladder& ladder);

enum class Tri { kFalse, kTrue, kInconclusive };
const char* triName(Tri t);

struct AccessVerdict {
  enum class Kind { kAccessible, kNotAccessibleAtScale, kInconclusive };
  Kind kind = Kind::kInconclusive;
  double delta = 0.0;
  std::string label() const;
};

AccessVerdict locallyAccessible(const BallAnalysis& ball);
AccessVerdict locallyAccessible(const DomainSpec& spec, Point x0, double r, double h);

/// Connectedness proxies for one target set at one scale. The path variants
/// coincide with these at graph scale.
struct SetFlags {
  Tri imKleinen = Tri::kInconclusive;
  Tri locallyConnected = Tri::kInconclusive;
  double witnessDelta = 0.0;
};

struct ScaleFlags {
  double r = 0.0;
  double h = 0.0;
  Tri accessible = Tri::kInconclusive;
  Tri closureFree = Tri::kInconclusive;  // x0 not in closure(H_r)
  Tri finitelyConnected = Tri::kInconclusive;
  Tri omegaLocallyConnected = Tri::kInconclusive;
  SetFlags omegaX0;
  SetFlags boundary;
  SetFlags complement;
  nlohmann::json toJson() const;
};

/// Proxies for the union of the domain with {x0}, the boundary, and the
/// complement inside B(x0, r), computed on the half-spacing lattice.
ScaleFlags pointwiseFlags(const DomainSpec& spec, const BallAnalysis& ball);

struct BoundaryVerdict {
  Point x0;
  Ladder ladder;
  Classification classification;
  std::vector<AccessVerdict> accessibility;
  std::vector<ScaleFlags> flags;
  ScaleFlags aggregate;  // conjunction over scales
  std::vector<std::string> auditViolations;
  nlohmann::json toJson() const;
};

/// Checks every implication of the pointwise lattice on each scale and on the
/// aggregate flags; returns one line per contradicted implication.
std::vector<std::string> implicationAudit(const BoundaryVerdict& verdict);

BoundaryVerdict classifyPoint(const SpecFactory& factory, Point x0, double r0, int kMax,
                              const LadderPolicy& policy = {}, const AnalysisOptions& opts = {});

}  // namespace mazu
