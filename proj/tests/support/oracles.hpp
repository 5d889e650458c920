#pragma once

// Brute-force references used only by tests. Nothing here calls the clique
// expansion or the column reduction it is meant to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socioplex/agent_store.hpp"
#include "socioplex/r_metric.hpp"

namespace socioplex::testing {

inline DistanceMatrix example_table() {
  return DistanceMatrix::from_rows({"u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u9", "u10"},
                                   {{0, 1, 10, 9, 3, 10, 10, 10, 7, 1},
                                    {1, 0, 1, 2, 10, 10, 10, 10, 10, 10},
                                    {10, 1, 0, 1, 10, 10, 10, 10, 10, 10},
                                    {9, 2, 1, 0, 1, 10, 10, 10, 10, 10},
                                    {3, 10, 10, 1, 0, 1, 4, 3, 5, 8},
                                    {10, 10, 10, 10, 1, 0, 1, 2, 10, 10},
                                    {10, 10, 10, 10, 4, 1, 0, 1, 10, 10},
                                    {10, 10, 10, 10, 3, 2, 1, 0, 1, 10},
                                    {7, 10, 10, 10, 5, 10, 10, 1, 0, 4},
                                    {1, 10, 10, 10, 8, 10, 10, 10, 4, 0}});
}

// A, B, C, D around a ring: sides 1, diagonals 2.
inline DistanceMatrix square() {
  return DistanceMatrix::from_rows({"A", "B", "C", "D"},
                                   {{0, 1, 2, 1}, {1, 0, 1, 2}, {2, 1, 0, 1}, {1, 2, 1, 0}});
}

inline DistanceMatrix equilateral_triangle() {
  return DistanceMatrix::from_rows({"a", "b", "c"}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

// Symmetric matrix with small integer entries so ties are frequent.
inline DistanceMatrix random_matrix(std::mt19937_64& rng, std::size_t n, int max_value = 6) {
  std::uniform_int_distribution<int> dist(1, max_value);
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set_symmetric(i, j, dist(rng));
  return m;
}

inline DistanceMatrix random_real_matrix(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(0.1, 5.0);
  DistanceMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set_symmetric(i, j, dist(rng));
  return m;
}

inline AgentSet random_agents(std::mt19937_64& rng, std::size_t n) {
  static const std::vector<std::string> kInstitutions = {"UF", "NCSU", "MIT", "UCLA"};
  static const std::vector<std::string> kFields = {"05", "11", "14", "35", "53", "60", "68"};
  std::uniform_int_distribution<std::size_t> inst(0, kInstitutions.size() - 1);
  std::uniform_int_distribution<std::size_t> field(0, kFields.size() - 1);
  std::uniform_int_distribution<int> nfields(1, 3);
  std::bernoulli_distribution link(0.25);
  std::vector<AgentRecord> records(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = records[i];
    r.id = "a" + std::to_string(i);
    r.name = "Agent " + std::to_string(i);
    r.institution = kInstitutions[inst(rng)];
    r.phd_institution = kInstitutions[inst(rng)];
    const int k = nfields(rng);
    while (static_cast<int>(r.fields.size()) < k) {
      const auto& f = kFields[field(rng)];
      if (std::find(r.fields.begin(), r.fields.end(), f) == r.fields.end()) r.fields.push_back(f);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (link(rng)) records[i].collaborators.insert(records[j].id);
      if (link(rng)) records[i].citations.insert(records[j].id);
    }
  return AgentSet(std::move(records));
}

inline Weights random_weights(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::array<double, 5> k{};
  double sum = 0.0;
  for (auto& v : k) sum += (v = e(rng));
  for (auto& v : k) v /= sum;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) total += k[i];
  k[4] = std::max(0.0, 1.0 - total);
  return Weights(k);
}

// ---- dense GF(2) linear algebra ---------------------------------------------

using BitRow = std::vector<std::uint64_t>;

inline std::size_t gf2_rank(std::vector<BitRow> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t words = rows[0].size();
  for (std::size_t w = 0; w < words; ++w) {
    for (int bit = 0; bit < 64; ++bit) {
      const std::uint64_t mask = std::uint64_t{1} << bit;
      std::size_t pivot = rank;
      while (pivot < rows.size() && !(rows[pivot][w] & mask)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && (rows[r][w] & mask))
          for (std::size_t x = 0; x < words; ++x) rows[r][x] ^= rows[rank][x];
      ++rank;
    }
  }
  return rank;
}

// Every vertex subset of size <= max_dim + 1 whose pairwise entries are <= scale,
// grouped by dimension. Plain subset enumeration, exponential in n.
inline std::vector<std::vector<std::vector<std::size_t>>> brute_complex(const DistanceMatrix& m,
                                                                        int max_dim, double scale) {
  const std::size_t n = m.size();
  std::vector<std::vector<std::vector<std::size_t>>> by_dim(static_cast<std::size_t>(max_dim) + 1);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> verts;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) verts.push_back(v);
    if (static_cast<int>(verts.size()) - 1 > max_dim) continue;
    bool ok = true;
    for (std::size_t a = 0; a < verts.size() && ok; ++a)
      for (std::size_t b = a + 1; b < verts.size() && ok; ++b)
        if (m(verts[a], verts[b]) > scale) ok = false;
    if (ok) by_dim[verts.size() - 1].push_back(verts);
  }
  for (auto& g : by_dim) std::sort(g.begin(), g.end());
  return by_dim;
}

// Rank of the boundary map from dimension k to k-1 over GF(2).
inline std::size_t boundary_rank(const std::vector<std::vector<std::size_t>>& faces,
                                 const std::vector<std::vector<std::size_t>>& cofaces) {
  if (faces.empty() || cofaces.empty()) return 0;
  const std::size_t words = (faces.size() + 63) / 64;
  std::vector<BitRow> rows;
  rows.reserve(cofaces.size());
  for (const auto& s : cofaces) {
    BitRow row(words, 0);
    for (std::size_t skip = 0; skip < s.size(); ++skip) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != skip) face.push_back(s[i]);
      const auto it = std::lower_bound(faces.begin(), faces.end(), face);
      const auto idx = static_cast<std::size_t>(it - faces.begin());
      row[idx / 64] ^= std::uint64_t{1} << (idx % 64);
    }
    rows.push_back(std::move(row));
  }
  return gf2_rank(std::move(rows));
}

// beta_k of the complex at `scale`, k = 0..max_dim, by rank-nullity.
inline std::vector<int> dense_betti(const DistanceMatrix& m, int max_dim, double scale) {
  const auto cx = brute_complex(m, max_dim, scale);
  std::vector<std::size_t> ranks(cx.size() + 1, 0);  // ranks[k] = rank of d_k
  for (std::size_t k = 1; k < cx.size(); ++k) ranks[k] = boundary_rank(cx[k - 1], cx[k]);
  std::vector<int> betti;
  for (std::size_t k = 0; k < cx.size(); ++k)
    betti.push_back(static_cast<int>(cx[k].size() - ranks[k] - ranks[k + 1]));
  return betti;
}

// Distinct off-diagonal values plus 0, ascending.
inline std::vector<double> distinct_scales(const DistanceMatrix& m) {
  std::set<double> s{0.0};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) s.insert(m(i, j));
  return {s.begin(), s.end()};
}

// Persistence pairing from ranks of lower-left submatrices of a dense boundary
// matrix: (i, j) is a pair iff
//   r(i, j) - r(i+1, j) - r(i, j-1) + r(i+1, j-1) = 1,
// where r(a, b) is the rank of rows >= a, columns <= b.
inline std::set<std::pair<std::size_t, std::size_t>> rank_pairing(
    const std::vector<std::vector<std::size_t>>& columns) {
  const std::size_t n = columns.size();
  const std::size_t words = (n + 63) / 64;
  auto r = [&](std::size_t first_row, std::ptrdiff_t last_col) -> std::size_t {
    if (last_col < 0 || first_row >= n) return 0;
    std::vector<BitRow> rows;
    for (std::ptrdiff_t c = 0; c <= last_col; ++c) {
      BitRow row(words, 0);
      bool any = false;
      for (auto e : columns[static_cast<std::size_t>(c)])
        if (e >= first_row) {
          row[e / 64] ^= std::uint64_t{1} << (e % 64);
          any = true;
        }
      if (any) rows.push_back(std::move(row));
    }
    return gf2_rank(std::move(rows));
  };
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].empty()) continue;
    const auto jj = static_cast<std::ptrdiff_t>(j);
    for (std::size_t i = 0; i < j; ++i) {
      const long long v = static_cast<long long>(r(i, jj)) - static_cast<long long>(r(i + 1, jj)) -
                          static_cast<long long>(r(i, jj - 1)) +
                          static_cast<long long>(r(i + 1, jj - 1));
      if (v == 1) pairs.emplace(i, j);
    }
  }
  return pairs;
}

// AUC by direct comparison of every (positive, negative) pair.
inline double brute_auc(const std::vector<double>& positive, const std::vector<double>& negative) {
  if (positive.empty() || negative.empty()) return 0.5;
  double wins = 0.0;
  for (double p : positive)
    for (double q : negative) {
      if (std::abs(p - q) <= 1e-12)
        wins += 0.5;
      else if (p < q)
        wins += 1.0;
    }
  return wins / (static_cast<double>(positive.size()) * static_cast<double>(negative.size()));
}

inline long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace socioplex::testing
