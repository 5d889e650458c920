#include "socioplex/persistence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>

#include "json.hpp"
#include "socioplex/errors.hpp"
#include "socioplex/union_find.hpp"

namespace socioplex {

namespace {

using nlohmann::json;

constexpr std::ptrdiff_t kNoColumn = -1;

// target ^= other, both sorted.
void add_column(Column& target, const Column& other, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

std::string describe(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.vertices[i]);
  }
  return out + "]";
}

}  // namespace

BoundaryMatrix boundary_matrix(const Filtration& f) {
  BoundaryMatrix bm;
  bm.columns.resize(f.size());
  bm.dims.resize(f.size());
  std::vector<Vertex> face;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const auto& s = f[j];
    bm.dims[j] = s.dim();
    if (s.dim() == 0) continue;
    auto& col = bm.columns[j];
    col.reserve(s.vertices.size());
    for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
      face.clear();
      for (std::size_t v = 0; v < s.vertices.size(); ++v)
        if (v != skip) face.push_back(s.vertices[v]);
      const auto pos = f.position(face);
      if (!pos || *pos >= j)
        throw MissingFace("simplex " + describe(s) + " at position " + std::to_string(j) +
                          " is missing a face that precedes it");
      col.push_back(*pos);
    }
    std::sort(col.begin(), col.end());
  }
  return bm;
}

Reduction reduce(const BoundaryMatrix& bm, const ReductionOptions& options) {
  const std::size_t n = bm.size();
  Reduction r;
  r.reduced = bm.columns;
  r.tracked = options.track_cycles;
  if (r.tracked) r.cycles.resize(n);

  std::vector<std::ptrdiff_t> pivot_column(n, kNoColumn);
  std::vector<bool> is_birth(n, false);
  Column scratch;

  auto reduce_column = [&](std::size_t j) {
    auto& col = r.reduced[j];
    const bool track = r.tracked && bm.dims[j] >= 1;
    if (track) r.cycles[j].assign(1, j);
    while (!col.empty()) {
      const auto p = pivot_column[col.back()];
      if (p == kNoColumn) break;
      add_column(col, r.reduced[static_cast<std::size_t>(p)], scratch);
      if (track) add_column(r.cycles[j], r.cycles[static_cast<std::size_t>(p)], scratch);
    }
    if (!col.empty()) {
      pivot_column[col.back()] = static_cast<std::ptrdiff_t>(j);
      is_birth[col.back()] = true;
    }
  };

  if (options.mode == ReductionMode::standard) {
    for (std::size_t j = 0; j < n; ++j) reduce_column(j);
  } else {
    int top = 0;
    for (int d : bm.dims) top = std::max(top, d);
    std::vector<std::vector<std::size_t>> by_dim(static_cast<std::size_t>(top) + 1);
    for (std::size_t j = 0; j < n; ++j) by_dim[static_cast<std::size_t>(bm.dims[j])].push_back(j);
    for (int d = top; d >= 1; --d) {
      for (auto j : by_dim[static_cast<std::size_t>(d)]) {
        // A column whose simplex is already known to create a class reduces to zero.
        if (is_birth[j]) {
          r.reduced[j].clear();
          continue;
        }
        reduce_column(j);
      }
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    if (!r.reduced[j].empty())
      r.pairs.push_back({r.reduced[j].back(), j});
    else if (!is_birth[j])
      r.essential.push_back(j);
  }

  if (r.tracked) {
    std::vector<bool> keep(n, false);
    for (auto e : r.essential) keep[e] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (!keep[j]) Column().swap(r.cycles[j]);
  }
  return r;
}

std::vector<Interval> PersistenceDiagram::of_dim(int dim) const {
  std::vector<Interval> out;
  for (const auto& i : intervals)
    if (i.dim == dim) out.push_back(i);
  return out;
}

int PersistenceDiagram::max_dim() const noexcept {
  int d = -1;
  for (const auto& i : intervals) d = std::max(d, i.dim);
  return d;
}

PersistenceDiagram make_diagram(const Filtration& f, const Reduction& r, bool keep_zero_length) {
  PersistenceDiagram d;
  for (const auto& p : r.pairs) {
    const auto& born = f[p.birth];
    const auto& dies = f[p.death];
    if (!keep_zero_length && dies.value == born.value) continue;
    d.intervals.push_back({born.dim(), born.value, dies.value, p.birth, p.death});
  }
  for (auto e : r.essential) d.intervals.push_back({f[e].dim(), f[e].value, kInfinity, e, {}});
  std::sort(d.intervals.begin(), d.intervals.end(), [](const Interval& a, const Interval& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death != b.death) return a.death < b.death;
    return a.birth_simplex < b.birth_simplex;
  });
  return d;
}

PersistenceDiagram barcodes(const Filtration& f, bool keep_zero_length) {
  return make_diagram(f, reduce(boundary_matrix(f)), keep_zero_length);
}

int betti_at(const PersistenceDiagram& d, double scale, int k) {
  return static_cast<int>(std::count_if(d.intervals.begin(), d.intervals.end(),
                                        [&](const Interval& i) {
                                          return i.dim == k && i.alive_at(scale);
                                        }));
}

PersistentHomology::PersistentHomology(Filtration f, ReductionOptions options,
                                       bool keep_zero_length)
    : filtration_(std::move(f)),
      reduction_(reduce(boundary_matrix(filtration_), options)),
      diagram_(make_diagram(filtration_, reduction_, keep_zero_length)) {}

Column PersistentHomology::representative_positions(const Interval& interval) const {
  if (interval.dim == 0)
    throw NotACycleInterval(
        "dimension-0 intervals are components; use component_vertices() instead");
  const auto b = interval.birth_simplex;
  if (b >= filtration_.size() || filtration_[b].dim() != interval.dim)
    throw InvalidArgument("interval does not belong to this filtration");
  if (interval.death_simplex) {
    const auto d = *interval.death_simplex;
    if (d >= reduction_.reduced.size() || reduction_.reduced[d].empty() ||
        reduction_.reduced[d].back() != b)
      throw InvalidArgument("interval does not match a persistence pair of this filtration");
    return reduction_.reduced[d];
  }
  if (!std::binary_search(reduction_.essential.begin(), reduction_.essential.end(), b))
    throw InvalidArgument("interval is not an essential class of this filtration");
  if (!reduction_.tracked)
    throw InvalidArgument("essential representatives need a reduction with cycle tracking");
  return reduction_.cycles[b];
}

std::vector<Simplex> PersistentHomology::representative_cycle(const Interval& interval) const {
  std::vector<Simplex> out;
  for (auto pos : representative_positions(interval)) out.push_back(filtration_[pos]);
  return out;
}

std::vector<Vertex> PersistentHomology::component_vertices(const Interval& interval) const {
  if (interval.dim != 0) throw InvalidArgument("component_vertices needs a dimension-0 interval");
  const auto& root = filtration_[interval.birth_simplex];
  const auto limit = interval.death_simplex.value_or(filtration_.size());
  UnionFind uf(filtration_.vertex_count());
  for (std::size_t j = 0; j < limit; ++j) {
    const auto& s = filtration_[j];
    if (s.dim() == 1) uf.unite(s.vertices[0], s.vertices[1]);
  }
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < filtration_.vertex_count(); ++v)
    if (uf.same(v, root.vertices[0]) && filtration_.position(std::vector<Vertex>{static_cast<Vertex>(v)}))
      out.push_back(static_cast<Vertex>(v));
  return out;
}

std::vector<Simplex> representative_cycle(const Filtration& f, const Interval& interval) {
  if (interval.dim == 0)
    throw NotACycleInterval(
        "dimension-0 intervals are components; use component_vertices() instead");
  return PersistentHomology(f, {ReductionMode::standard, true}, true).representative_cycle(interval);
}

Column chain_boundary(const Filtration& f, const Column& chain) {
  Column acc;
  Column face_col;
  Column scratch;
  std::vector<Vertex> face;
  for (auto pos : chain) {
    const auto& s = f[pos];
    if (s.dim() == 0) continue;
    face_col.clear();
    for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
      face.clear();
      for (std::size_t v = 0; v < s.vertices.size(); ++v)
        if (v != skip) face.push_back(s.vertices[v]);
      const auto fp = f.position(face);
      if (!fp) throw MissingFace("face of " + describe(s) + " missing from filtration");
      face_col.push_back(*fp);
    }
    std::sort(face_col.begin(), face_col.end());
    add_column(acc, face_col, scratch);
  }
  return acc;
}

std::string format_scale(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string diagram_to_text(const PersistenceDiagram& d) {
  std::string out;
  for (const auto& i : d.intervals) {
    out += std::to_string(i.dim);
    out += ' ';
    out += format_scale(i.birth);
    out += ' ';
    out += format_scale(i.death);
    out += '\n';
  }
  return out;
}

std::string diagram_to_json(const PersistenceDiagram& d,
                            const std::vector<std::vector<Simplex>>* representatives) {
  json bars = json::array();
  for (std::size_t k = 0; k < d.intervals.size(); ++k) {
    const auto& i = d.intervals[k];
    json bar = {{"dim", i.dim}, {"birth", i.birth}};
    bar["death"] = i.essential() ? json(nullptr) : json(i.death);
    if (representatives && k < representatives->size()) {
      json rep = json::array();
      for (const auto& s : (*representatives)[k]) rep.push_back(s.vertices);
      bar["representative"] = std::move(rep);
    }
    bars.push_back(std::move(bar));
  }
  return json{{"bars", std::move(bars)}}.dump(2) + "\n";
}

}  // namespace socioplex
