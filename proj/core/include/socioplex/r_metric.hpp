#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "socioplex/agent_store.hpp"

namespace socioplex {

inline constexpr std::size_t kComponentCount = 5;

/// Nonnegative coefficients K1..K5 on the five component distances, summing to 1.
class Weights {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kParseTolerance = 1e-6;

  /// Equal weights 0.2 each.
  Weights();
  /// Throws InvalidArgument unless every entry is >= 0 and the sum is 1 within kSumTolerance.
  explicit Weights(const std::array<double, kComponentCount>& k);

  /// Parses "k1,k2,k3,k4,k5". Sums within kParseTolerance of 1 are renormalized.
  static Weights parse(std::string_view text);

  double operator[](std::size_t i) const { return k_[i]; }
  const std::array<double, kComponentCount>& values() const noexcept { return k_; }
  std::string to_string() const;

  friend bool operator==(const Weights&, const Weights&) = default;
  friend auto operator<=>(const Weights&, const Weights&) = default;

 private:
  std::array<double, kComponentCount> k_;
};

/// Categorical distances d1..d5 (institution, fields, PhD school, collaboration, citation).
/// Each entry is 0 for the same agent, 1 for a shared feature, 2 otherwise.
struct ComponentVector {
  std::array<std::uint8_t, kComponentCount> d{};

  std::uint8_t operator[](std::size_t i) const { return d[i]; }
  friend bool operator==(const ComponentVector&, const ComponentVector&) = default;
};

ComponentVector component_distances(const AgentRecord& a, const AgentRecord& b);

double r_distance(const ComponentVector& cv, const Weights& w);

/// Dense symmetric matrix of pairwise distances; row i belongs to ids()[i].
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Zero matrix labelled "0".."n-1".
  explicit DistanceMatrix(std::size_t n);
  DistanceMatrix(std::vector<std::string> ids, std::vector<double> row_major);
  /// Throws InvalidArgument if the rows are ragged or do not match ids.
  static DistanceMatrix from_rows(std::vector<std::string> ids,
                                  const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  void set_symmetric(std::size_t i, std::size_t j, double v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  /// Principal submatrix on the given rows (in the given order).
  DistanceMatrix submatrix(const std::vector<std::size_t>& rows) const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> entries_;
};

DistanceMatrix distance_matrix(const AgentSet& agents, const Weights& w);

/// {"ids": [...], "entries": [[...], ...]}; "ids" is optional on input.
DistanceMatrix parse_distance_matrix_json(std::string_view text,
                                          const std::string& source = "<json>");
DistanceMatrix load_distance_matrix(const std::filesystem::path& path);
std::string distance_matrix_to_json(const DistanceMatrix& m);
void save_distance_matrix(const DistanceMatrix& m, const std::filesystem::path& path);

struct MetricReport {
  struct Triple {
    std::size_t i, j, k;
    friend bool operator==(const Triple&, const Triple&) = default;
  };
  struct Pair {
    std::size_t i, j;
    friend bool operator==(const Pair&, const Pair&) = default;
  };

  std::vector<Triple> triangle_violations;  // m(i,k) > m(i,j) + m(j,k) + tol, i < k
  std::vector<Pair> asymmetric;             // i < j
  std::vector<std::size_t> nonzero_diagonal;
  std::vector<Pair> negative;               // any (i, j) with m(i,j) < -tol
  std::vector<Pair> zero_off_diagonal;      // i < j with |m(i,j)| <= tol

  bool ok() const noexcept {
    return triangle_violations.empty() && asymmetric.empty() && nonzero_diagonal.empty() &&
           negative.empty() && zero_off_diagonal.empty();
  }
};

/// Exhaustive check of the metric axioms over all pairs and triples.
MetricReport verify_metric(const DistanceMatrix& m, double tolerance);

}  // namespace socioplex
