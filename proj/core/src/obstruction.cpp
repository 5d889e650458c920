#include "socioplex/obstruction.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "json.hpp"
#include "socioplex/errors.hpp"

namespace socioplex {

namespace {

using nlohmann::json;

json scale_json(double v) { return std::isinf(v) ? json(nullptr) : json(v); }

}  // namespace

std::vector<ObstructionReport> find_obstructions(const PersistentHomology& ph,
                                                 const DistanceMatrix& m, double threshold,
                                                 const ObstructionOptions& options) {
  if (options.min_persistence < 0.0) throw InvalidArgument("min_persistence must be >= 0");
  std::vector<ObstructionReport> reports;
  for (const auto& bar : ph.diagram().intervals) {
    if (bar.dim < 1 || bar.dim > options.max_dim) continue;
    if (!bar.alive_at(threshold)) continue;
    if (bar.persistence() <= 0.0 || bar.persistence() < options.min_persistence) continue;

    ObstructionReport report;
    report.dim = bar.dim;
    report.birth = bar.birth;
    report.death = bar.death;
    report.persistence = bar.persistence();
    report.threshold_gap = bar.essential() ? kInfinity : bar.death - threshold;
    report.representative = ph.representative_cycle(bar);

    std::set<Vertex> vertices;
    for (const auto& s : report.representative) vertices.insert(s.vertices.begin(), s.vertices.end());
    report.cycle.assign(vertices.begin(), vertices.end());
    for (auto v : report.cycle) report.cycle_ids.push_back(m.ids().at(v));

    if (bar.dim == 1) {
      for (std::size_t a = 0; a < report.cycle.size(); ++a)
        for (std::size_t b = a + 1; b < report.cycle.size(); ++b)
          if (m(report.cycle[a], report.cycle[b]) > threshold)
            report.missing_links.emplace_back(report.cycle[a], report.cycle[b]);
    }
    reports.push_back(std::move(report));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const ObstructionReport& a, const ObstructionReport& b) {
                     if (a.persistence != b.persistence) return a.persistence > b.persistence;
                     if (a.dim != b.dim) return a.dim < b.dim;
                     return a.birth < b.birth;
                   });
  return reports;
}

StrengthSummary group_strength(const DistanceMatrix& m, const std::vector<std::size_t>& members,
                               double threshold) {
  if (members.empty()) throw InvalidArgument("group must have at least one member");
  for (auto v : members)
    if (v >= m.size()) throw IndexOutOfRange("member " + std::to_string(v) + " out of range");
  std::vector<std::size_t> unique(members);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  StrengthSummary s;
  for (std::size_t a = 0; a < unique.size(); ++a)
    for (std::size_t b = a + 1; b < unique.size(); ++b) {
      const double d = m(unique[a], unique[b]);
      s.min_threshold = std::max(s.min_threshold, d);
      if (d > threshold) ++s.missing_links;
    }
  s.full_simplex = s.missing_links == 0;
  return s;
}

std::string obstructions_to_json(const std::vector<ObstructionReport>& reports,
                                 const DistanceMatrix& m) {
  json arr = json::array();
  for (const auto& r : reports) {
    json links = json::array();
    for (const auto& [a, b] : r.missing_links) links.push_back({m.ids().at(a), m.ids().at(b)});
    json entry = {{"cycle_ids", r.cycle_ids},   {"birth", r.birth},
                  {"death", scale_json(r.death)}, {"persistence", scale_json(r.persistence)},
                  {"missing_links", links},     {"threshold_gap", scale_json(r.threshold_gap)}};
    if (r.dim != 1) entry["dim"] = r.dim;
    arr.push_back(std::move(entry));
  }
  return arr.dump(2) + "\n";
}

std::string obstructions_to_table(const std::vector<ObstructionReport>& reports,
                                  const DistanceMatrix& m) {
  std::ostringstream out;
  out << "dim  birth  death  persistence  gap  cycle  missing_links\n";
  for (const auto& r : reports) {
    out << r.dim << "  " << format_scale(r.birth) << "  " << format_scale(r.death) << "  "
        << format_scale(r.persistence) << "  " << format_scale(r.threshold_gap) << "  ";
    for (std::size_t i = 0; i < r.cycle_ids.size(); ++i) out << (i ? "," : "") << r.cycle_ids[i];
    out << "  ";
    if (r.missing_links.empty()) out << "-";
    for (std::size_t i = 0; i < r.missing_links.size(); ++i)
      out << (i ? " " : "") << m.ids().at(r.missing_links[i].first) << "-"
          << m.ids().at(r.missing_links[i].second);
    out << '\n';
  }
  out << "(cycles are one representative per class; other homologous cycles exist)\n";
  return out.str();
}

}  // namespace socioplex
