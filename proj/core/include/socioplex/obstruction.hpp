#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "socioplex/persistence.hpp"
#include "socioplex/r_metric.hpp"

namespace socioplex {

/// A persistent cycle of agents read as a gap in collaboration. The cycle is the
/// reduction's representative, which is one choice among many homologous cycles.
struct ObstructionReport {
  int dim = 1;
  std::vector<Vertex> cycle;         // vertex indices, ascending
  std::vector<std::string> cycle_ids;
  double birth = 0.0;
  double death = kInfinity;
  double persistence = kInfinity;
  /// Pairs of cycle vertices farther apart than the working threshold.
  /// Left empty for dimension-2 voids.
  std::vector<std::pair<Vertex, Vertex>> missing_links;
  /// death - threshold; infinite for essential bars.
  double threshold_gap = kInfinity;
  std::vector<Simplex> representative;
};

struct ObstructionOptions {
  double min_persistence = 0.0;
  /// 2 also reports voids (vertex sets only).
  int max_dim = 1;
};

/// One report per bar of dimension 1 (or up to options.max_dim) alive at the
/// threshold with persistence >= min_persistence, sorted by persistence, longest first.
std::vector<ObstructionReport> find_obstructions(const PersistentHomology& ph,
                                                 const DistanceMatrix& m, double threshold,
                                                 const ObstructionOptions& options = {});

struct StrengthSummary {
  bool full_simplex = false;
  std::size_t missing_links = 0;
  /// Smallest threshold at which the group is a full simplex (its diameter).
  double min_threshold = 0.0;
};

/// Throws InvalidArgument for an empty group and IndexOutOfRange for unknown members.
StrengthSummary group_strength(const DistanceMatrix& m, const std::vector<std::size_t>& members,
                               double threshold);

std::string obstructions_to_json(const std::vector<ObstructionReport>& reports,
                                 const DistanceMatrix& m);
std::string obstructions_to_table(const std::vector<ObstructionReport>& reports,
                                  const DistanceMatrix& m);

}  // namespace socioplex
