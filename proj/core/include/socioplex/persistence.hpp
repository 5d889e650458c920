#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "socioplex/socioplex_builder.hpp"

namespace socioplex {

/// Sparse column over the two-element field: sorted row positions with coefficient 1.
using Column = std::vector<std::size_t>;

/// Column j holds the filtration positions of the codimension-1 faces of simplex j.
struct BoundaryMatrix {
  std::vector<Column> columns;
  std::vector<int> dims;

  std::size_t size() const noexcept { return columns.size(); }
};

/// Throws MissingFace if some face of a simplex is absent from the filtration.
BoundaryMatrix boundary_matrix(const Filtration& f);

enum class ReductionMode {
  standard,  // left to right over all columns
  twist,     // by dimension, high to low, clearing columns known to be births
};

struct ReductionOptions {
  ReductionMode mode = ReductionMode::standard;
  /// Record the column additions so essential classes get representative cycles.
  bool track_cycles = false;
};

struct PersistencePair {
  std::size_t birth;
  std::size_t death;
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

struct Reduction {
  std::vector<Column> reduced;
  /// Sorted by death position.
  std::vector<PersistencePair> pairs;
  /// Unpaired positions, ascending.
  std::vector<std::size_t> essential;
  /// Accumulated column additions per position; only populated for essential
  /// positions of dimension >= 1 when tracking was requested.
  std::vector<Column> cycles;
  bool tracked = false;
};

Reduction reduce(const BoundaryMatrix& bm, const ReductionOptions& options = {});

struct Interval {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  std::size_t birth_simplex = 0;
  std::optional<std::size_t> death_simplex;

  bool essential() const noexcept { return !death_simplex.has_value(); }
  double persistence() const noexcept { return death - birth; }
  bool alive_at(double scale) const noexcept { return birth <= scale && scale < death; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct PersistenceDiagram {
  /// Sorted by (dim, birth, death, birth_simplex).
  std::vector<Interval> intervals;

  std::size_t size() const noexcept { return intervals.size(); }
  bool empty() const noexcept { return intervals.empty(); }
  std::vector<Interval> of_dim(int dim) const;
  int max_dim() const noexcept;
};

PersistenceDiagram make_diagram(const Filtration& f, const Reduction& r, bool keep_zero_length);

/// Reduces f with the standard algorithm and extracts its intervals.
PersistenceDiagram barcodes(const Filtration& f, bool keep_zero_length = false);

/// Number of dim-k intervals with birth <= scale < death.
int betti_at(const PersistenceDiagram& d, double scale, int k);

/// A filtration with its reduction, for diagram and representative queries.
class PersistentHomology {
 public:
  explicit PersistentHomology(Filtration f, ReductionOptions options = {ReductionMode::twist, true},
                              bool keep_zero_length = false);

  const Filtration& filtration() const noexcept { return filtration_; }
  const Reduction& reduction() const noexcept { return reduction_; }
  const PersistenceDiagram& diagram() const noexcept { return diagram_; }

  /// Filtration positions of a cycle representing the interval's class. For a
  /// finite bar this is the reduced death column, for an essential bar the
  /// recorded additions of the birth column. Throws NotACycleInterval for dim 0.
  Column representative_positions(const Interval& interval) const;
  std::vector<Simplex> representative_cycle(const Interval& interval) const;

  /// Vertices of the component represented by a dim-0 interval, just before it dies.
  std::vector<Vertex> component_vertices(const Interval& interval) const;

 private:
  Filtration filtration_;
  Reduction reduction_;
  PersistenceDiagram diagram_;
};

/// Convenience wrapper that reduces f with cycle tracking.
std::vector<Simplex> representative_cycle(const Filtration& f, const Interval& interval);

/// Boundary of a chain over the two-element field, as sorted positions.
Column chain_boundary(const Filtration& f, const Column& chain);

/// "dim birth death" lines; essential deaths print as "inf".
std::string diagram_to_text(const PersistenceDiagram& d);

/// {"bars": [{"dim", "birth", "death" (null if essential), "representative"?}]}.
/// Representatives, when given, are parallel to d.intervals; each is a list of simplices.
std::string diagram_to_json(const PersistenceDiagram& d,
                            const std::vector<std::vector<Simplex>>* representatives = nullptr);

/// Shortest round-trip decimal form ("inf" for infinity).
std::string format_scale(double v);

}  // namespace socioplex
