#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "socioplex/r_metric.hpp"

namespace socioplex {

using Vertex = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr std::size_t kDefaultSimplexCap = 5'000'000;

/// Sorted vertex set together with its filtration value (diameter).
struct Simplex {
  std::vector<Vertex> vertices;
  double value = 0.0;

  int dim() const noexcept { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
bool filtration_less(const Simplex& a, const Simplex& b);

/// Flag complex at a fixed threshold, simplices grouped by dimension and sorted
/// lexicographically within each dimension.
class SimplicialComplex {
 public:
  SimplicialComplex(int max_dim, std::vector<std::vector<Simplex>> by_dim);

  int max_dim() const noexcept { return max_dim_; }
  /// Simplices of one dimension; empty for dimensions above max_dim().
  const std::vector<Simplex>& simplices(int dim) const;
  std::size_t count(int dim) const { return simplices(dim).size(); }
  std::size_t size() const noexcept;
  bool contains(std::span<const Vertex> vertices) const;

 private:
  int max_dim_;
  std::vector<std::vector<Simplex>> by_dim_;
};

/// Simplices in filtration order with a face lookup.
class Filtration {
 public:
  Filtration() = default;
  /// Sorts into filtration order. Face closure is not checked here;
  /// boundary_matrix() reports missing faces.
  explicit Filtration(std::vector<Simplex> simplices);

  std::size_t size() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  auto begin() const noexcept { return simplices_.begin(); }
  auto end() const noexcept { return simplices_.end(); }
  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }

  int max_dim() const noexcept { return max_dim_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  /// Largest simplex value, 0 when empty.
  double max_value() const noexcept;

  std::optional<std::size_t> position(std::span<const Vertex> vertices) const;

  /// Simplices with value <= scale, grouped like build_socioplex().
  SimplicialComplex prefix(double scale) const;

 private:
  std::uint64_t key(std::span<const Vertex> vertices) const;

  std::vector<Simplex> simplices_;
  int max_dim_ = -1;
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<std::uint64_t>> binomial_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> lookup_;
};

/// Throws InvalidArgument unless m is symmetric, nonnegative, finite and zero on the diagonal.
void require_dissimilarity(const DistanceMatrix& m);

/// Largest off-diagonal entry, 0 for a single point.
double diameter(const DistanceMatrix& m);

/// Indices j != i with m(i, j) <= radius.
std::vector<std::size_t> neighborhood(const DistanceMatrix& m, std::size_t i, double radius);

/// Turns a relative threshold (fraction of the diameter) into an absolute one.
double resolve_threshold(const DistanceMatrix& m, double threshold, bool relative);

SimplicialComplex build_socioplex(const DistanceMatrix& m, double threshold, int max_dim);

Filtration build_filtration(const DistanceMatrix& m, int max_dim, double max_scale = kInfinity,
                            std::size_t simplex_cap = kDefaultSimplexCap);

/// 1-skeleton at the threshold as an undirected Graphviz graph.
void write_dot(std::ostream& out, const DistanceMatrix& m, double threshold);

/// JSON array of {"vertices": [...], "value": x} in the complex's dimension order.
std::string simplices_to_json(const SimplicialComplex& complex);
std::string simplices_to_json(const Filtration& filtration);

}  // namespace socioplex
