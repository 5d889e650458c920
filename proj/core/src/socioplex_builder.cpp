#include "socioplex/socioplex_builder.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "socioplex/errors.hpp"

namespace socioplex {

namespace {

using nlohmann::json;

constexpr double kSymmetryTolerance = 1e-12;

// Vertices adjacent at `threshold`, keeping only the larger endpoint per vertex.
std::vector<std::vector<Vertex>> upper_neighbors(const DistanceMatrix& m, double threshold) {
  const auto n = m.size();
  std::vector<std::vector<Vertex>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m(i, j) <= threshold) adj[i].push_back(static_cast<Vertex>(j));
  return adj;
}

// Depth-first clique expansion. `emit` receives each clique once with its diameter;
// candidates are always larger than the last vertex so vertices come out sorted.
template <class Emit>
void expand(const DistanceMatrix& m, const std::vector<std::vector<Vertex>>& adj, int max_dim,
            std::vector<Vertex>& clique, double value, const std::vector<Vertex>& candidates,
            Emit& emit) {
  emit(clique, value);
  if (static_cast<int>(clique.size()) - 1 >= max_dim) return;
  std::vector<Vertex> next;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const Vertex v = candidates[c];
    next.clear();
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(c) + 1,
                          candidates.end(), adj[v].begin(), adj[v].end(),
                          std::back_inserter(next));
    double grown = value;
    for (Vertex u : clique) grown = std::max(grown, m(u, v));
    clique.push_back(v);
    expand(m, adj, max_dim, clique, grown, next, emit);
    clique.pop_back();
  }
}

template <class Emit>
void for_each_clique(const DistanceMatrix& m, double threshold, int max_dim, Emit&& emit) {
  const auto adj = upper_neighbors(m, threshold);
  std::vector<Vertex> clique;
  for (std::size_t v = 0; v < m.size(); ++v) {
    clique.assign(1, static_cast<Vertex>(v));
    expand(m, adj, max_dim, clique, 0.0, adj[v], emit);
  }
}

std::vector<std::vector<Simplex>> group_by_dim(int max_dim, std::vector<Simplex> simplices) {
  std::vector<std::vector<Simplex>> by_dim(static_cast<std::size_t>(std::max(max_dim, 0)) + 1);
  for (auto& s : simplices) by_dim[static_cast<std::size_t>(s.dim())].push_back(std::move(s));
  for (auto& group : by_dim)
    std::sort(group.begin(), group.end(),
              [](const Simplex& a, const Simplex& b) { return a.vertices < b.vertices; });
  return by_dim;
}

}  // namespace

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

SimplicialComplex::SimplicialComplex(int max_dim, std::vector<std::vector<Simplex>> by_dim)
    : max_dim_(max_dim), by_dim_(std::move(by_dim)) {}

const std::vector<Simplex>& SimplicialComplex::simplices(int dim) const {
  static const std::vector<Simplex> kNone;
  if (dim < 0 || static_cast<std::size_t>(dim) >= by_dim_.size()) return kNone;
  return by_dim_[static_cast<std::size_t>(dim)];
}

std::size_t SimplicialComplex::size() const noexcept {
  std::size_t total = 0;
  for (const auto& g : by_dim_) total += g.size();
  return total;
}

bool SimplicialComplex::contains(std::span<const Vertex> vertices) const {
  if (vertices.empty()) return false;
  const auto& group = simplices(static_cast<int>(vertices.size()) - 1);
  const std::vector<Vertex> key(vertices.begin(), vertices.end());
  return std::binary_search(
      group.begin(), group.end(), Simplex{key, 0.0},
      [](const Simplex& a, const Simplex& b) { return a.vertices < b.vertices; });
}

Filtration::Filtration(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
  for (const auto& s : simplices_) {
    if (s.vertices.empty()) throw InvalidArgument("simplex with no vertices");
    if (!std::is_sorted(s.vertices.begin(), s.vertices.end()) ||
        std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
      throw InvalidArgument("simplex vertices must be strictly increasing");
    max_dim_ = std::max(max_dim_, s.dim());
    vertex_count_ = std::max<std::size_t>(vertex_count_, s.vertices.back() + 1);
  }
  std::sort(simplices_.begin(), simplices_.end(), filtration_less);

  const std::size_t cols = static_cast<std::size_t>(max_dim_ + 2);
  binomial_.assign(vertex_count_ + 1, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t r = 0; r <= vertex_count_; ++r) {
    binomial_[r][0] = 1;
    for (std::size_t c = 1; c < cols && c <= r; ++c)
      binomial_[r][c] = binomial_[r - 1][c - 1] + (c < r ? binomial_[r - 1][c] : 0);
  }

  lookup_.assign(static_cast<std::size_t>(max_dim_ + 1), {});
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    auto& table = lookup_[static_cast<std::size_t>(s.dim())];
    if (!table.emplace(key(s.vertices), i).second)
      throw InvalidArgument("duplicate simplex in filtration");
  }
}

double Filtration::max_value() const noexcept {
  return simplices_.empty() ? 0.0 : simplices_.back().value;
}

std::uint64_t Filtration::key(std::span<const Vertex> vertices) const {
  // Combinatorial number system: unique among simplices of one dimension.
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) k += binomial_[vertices[i]][i + 1];
  return k;
}

std::optional<std::size_t> Filtration::position(std::span<const Vertex> vertices) const {
  if (vertices.empty()) return std::nullopt;
  const auto dim = vertices.size() - 1;
  if (dim >= lookup_.size()) return std::nullopt;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= vertex_count_) return std::nullopt;
    if (i && vertices[i] <= vertices[i - 1]) return std::nullopt;
  }
  const auto it = lookup_[dim].find(key(vertices));
  if (it == lookup_[dim].end()) return std::nullopt;
  return it->second;
}

SimplicialComplex Filtration::prefix(double scale) const {
  std::vector<Simplex> kept;
  for (const auto& s : simplices_) {
    if (s.value > scale) break;
    kept.push_back(s);
  }
  return SimplicialComplex(max_dim_, group_by_dim(max_dim_, std::move(kept)));
}

void require_dissimilarity(const DistanceMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m(i, i) != 0.0)
      throw InvalidArgument("distance matrix has nonzero diagonal at row " + std::to_string(i));
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (!std::isfinite(a) || a < 0.0)
        throw InvalidArgument("distance matrix entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") must be finite and >= 0");
      if (std::abs(a - b) > kSymmetryTolerance)
        throw InvalidArgument("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    }
  }
}

double diameter(const DistanceMatrix& m) {
  double d = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j) d = std::max(d, m(i, j));
  return d;
}

std::vector<std::size_t> neighborhood(const DistanceMatrix& m, std::size_t i, double radius) {
  if (i >= m.size())
    throw IndexOutOfRange("vertex " + std::to_string(i) + " out of range for " +
                          std::to_string(m.size()) + " agents");
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m.size(); ++j)
    if (j != i && m(i, j) <= radius) out.push_back(j);
  return out;
}

double resolve_threshold(const DistanceMatrix& m, double threshold, bool relative) {
  if (relative) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
      throw InvalidArgument("relative threshold must lie in [0, 1]");
    return threshold * diameter(m);
  }
  if (!(threshold >= 0.0)) throw InvalidArgument("threshold must be >= 0");
  return threshold;
}

SimplicialComplex build_socioplex(const DistanceMatrix& m, double threshold, int max_dim) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  require_dissimilarity(m);
  std::vector<Simplex> simplices;
  for_each_clique(m, threshold, max_dim, [&](const std::vector<Vertex>& clique, double value) {
    simplices.push_back({clique, value});
  });
  return SimplicialComplex(max_dim, group_by_dim(max_dim, std::move(simplices)));
}

Filtration build_filtration(const DistanceMatrix& m, int max_dim, double max_scale,
                            std::size_t simplex_cap) {
  if (max_dim < 0) throw InvalidArgument("max_dim must be >= 0");
  require_dissimilarity(m);
  std::vector<Simplex> simplices;
  for_each_clique(m, max_scale, max_dim, [&](const std::vector<Vertex>& clique, double value) {
    if (simplices.size() >= simplex_cap) throw CombinatorialBlowup(simplex_cap, max_dim);
    simplices.push_back({clique, value});
  });
  return Filtration(std::move(simplices));
}

void write_dot(std::ostream& out, const DistanceMatrix& m, double threshold) {
  const auto quoted = [](const std::string& s) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + '"';
  };
  out << "graph socioplex {\n";
  for (const auto& id : m.ids()) out << "  " << quoted(id) << ";\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) <= threshold)
        out << "  " << quoted(m.ids()[i]) << " -- " << quoted(m.ids()[j])
            << " [len=" << json(m(i, j)).dump() << "];\n";
  out << "}\n";
}

namespace {

json simplex_json(const Simplex& s) { return {{"vertices", s.vertices}, {"value", s.value}}; }

}  // namespace

std::string simplices_to_json(const SimplicialComplex& complex) {
  json arr = json::array();
  for (int d = 0; d <= complex.max_dim(); ++d)
    for (const auto& s : complex.simplices(d)) arr.push_back(simplex_json(s));
  return arr.dump() + "\n";
}

std::string simplices_to_json(const Filtration& filtration) {
  json arr = json::array();
  for (const auto& s : filtration) arr.push_back(simplex_json(s));
  return arr.dump() + "\n";
}

}  // namespace socioplex
