#include "socioplex/r_metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "socioplex/errors.hpp"

namespace socioplex {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

bool shares_field(const AgentRecord& a, const AgentRecord& b) {
  for (const auto& fa : a.fields) {
    const auto na = normalize_field_code(fa);
    if (na.empty()) continue;
    for (const auto& fb : b.fields)
      if (na == normalize_field_code(fb)) return true;
  }
  return false;
}

bool linked(const std::set<std::string>& a_links, const std::string& a_id,
            const std::set<std::string>& b_links, const std::string& b_id) {
  return a_links.contains(b_id) || b_links.contains(a_id);
}

std::uint8_t category(bool shared) { return shared ? 1 : 2; }

}  // namespace

Weights::Weights() { k_.fill(1.0 / kComponentCount); }

Weights::Weights(const std::array<double, kComponentCount>& k) : k_(k) {
  double sum = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i]) || k[i] < 0.0)
      throw InvalidArgument("weight K" + std::to_string(i + 1) + " must be finite and >= 0, got " +
                            format_double(k[i]));
    sum += k[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw InvalidArgument("weights must sum to 1, got " + format_double(sum));
}

Weights Weights::parse(std::string_view text) {
  std::array<double, kComponentCount> k{};
  std::size_t count = 0;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    auto token = rest.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (count == kComponentCount)
      throw InvalidArgument("expected 5 comma-separated weights, got more: \"" +
                            std::string(text) + "\"");
    double v = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || res.ec != std::errc{} || res.ptr != token.data() + token.size())
      throw InvalidArgument("invalid weight \"" + std::string(token) + "\"");
    k[count++] = v;
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (count != kComponentCount)
    throw InvalidArgument("expected 5 comma-separated weights, got " + std::to_string(count));

  double sum = 0.0;
  for (double v : k) {
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidArgument("weights must be finite and >= 0: \"" + std::string(text) + "\"");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kParseTolerance)
    throw InvalidArgument("weights must sum to 1 (within 1e-6), got " + format_double(sum));
  if (std::abs(sum - 1.0) <= kSumTolerance) return Weights(k);
  for (double& v : k) v /= sum;
  // Division can leave the sum a few ulps away; put the residue on the largest weight.
  const double residue = 1.0 - std::accumulate(k.begin(), k.end(), 0.0);
  *std::max_element(k.begin(), k.end()) += residue;
  return Weights(k);
}

std::string Weights::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (i) out += ',';
    out += format_double(k_[i]);
  }
  return out;
}

ComponentVector component_distances(const AgentRecord& a, const AgentRecord& b) {
  if (a.id == b.id) return {};
  ComponentVector cv;
  cv.d[0] = category(a.institution == b.institution);
  cv.d[1] = category(shares_field(a, b));
  cv.d[2] = category(a.phd_institution == b.phd_institution);
  cv.d[3] = category(linked(a.collaborators, a.id, b.collaborators, b.id));
  cv.d[4] = category(linked(a.citations, a.id, b.citations, b.id));
  return cv;
}

double r_distance(const ComponentVector& cv, const Weights& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kComponentCount; ++i) sum += cv[i] * w[i];
  return sum;
}

DistanceMatrix::DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {
  ids_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ids_.push_back(std::to_string(i));
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids, std::vector<double> row_major)
    : n_(ids.size()), ids_(std::move(ids)), entries_(std::move(row_major)) {
  if (entries_.size() != n_ * n_)
    throw InvalidArgument("distance matrix needs " + std::to_string(n_ * n_) + " entries, got " +
                          std::to_string(entries_.size()));
}

DistanceMatrix DistanceMatrix::from_rows(std::vector<std::string> ids,
                                         const std::vector<std::vector<double>>& rows) {
  if (ids.size() != rows.size())
    throw InvalidArgument("distance matrix has " + std::to_string(rows.size()) + " rows but " +
                          std::to_string(ids.size()) + " ids");
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw InvalidArgument("distance matrix row " + std::to_string(i) + " has " +
                            std::to_string(rows[i].size()) + " entries, expected " +
                            std::to_string(rows.size()));
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return DistanceMatrix(std::move(ids), std::move(flat));
}

DistanceMatrix DistanceMatrix::submatrix(const std::vector<std::size_t>& rows) const {
  std::vector<std::string> ids;
  std::vector<double> flat;
  ids.reserve(rows.size());
  flat.reserve(rows.size() * rows.size());
  for (auto i : rows)
    if (i >= n_) throw IndexOutOfRange("row " + std::to_string(i) + " out of range");
  for (auto i : rows) {
    ids.push_back(ids_[i]);
    for (auto j : rows) flat.push_back((*this)(i, j));
  }
  return DistanceMatrix(std::move(ids), std::move(flat));
}

DistanceMatrix distance_matrix(const AgentSet& agents, const Weights& w) {
  const std::size_t n = agents.size();
  std::vector<double> flat(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = r_distance(component_distances(agents[i], agents[j]), w);
      flat[i * n + j] = d;
      flat[j * n + i] = d;
    }
  }
  return DistanceMatrix(agents.ids(), std::move(flat));
}

DistanceMatrix parse_distance_matrix_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source, 1, e.what());
  }
  if (!doc.is_object() || !doc.contains("entries"))
    throw ParseError(source, 1, "expected an object with an \"entries\" array");
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw ParseError(source, 1, "\"entries\" must be an array of rows");

  std::vector<std::vector<double>> rows;
  rows.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& row = entries[i];
    if (!row.is_array())
      throw ParseError(source, 1, "row " + std::to_string(i) + " must be an array");
    auto& out = rows.emplace_back();
    out.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number())
        throw ParseError(source, 1, "row " + std::to_string(i) + " contains a non-number");
      out.push_back(v.get<double>());
    }
  }

  std::vector<std::string> ids;
  if (const auto it = doc.find("ids"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw ParseError(source, 1, "\"ids\" must be an array of strings");
    for (const auto& v : *it) {
      if (!v.is_string()) throw ParseError(source, 1, "\"ids\" must be an array of strings");
      ids.push_back(v.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back(std::to_string(i));
  }
  try {
    return DistanceMatrix::from_rows(std::move(ids), rows);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, 1, e.what());
  }
}

DistanceMatrix load_distance_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_distance_matrix_json(buf.str(), path.string());
}

std::string distance_matrix_to_json(const DistanceMatrix& m) {
  // One row per line keeps large matrices diffable.
  std::string out = "{\n  \"ids\": " + json(m.ids()).dump() + ",\n  \"entries\": [";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ",\n    [" : "\n    [";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ", ";
      out += json(m(i, j)).dump();
    }
    out += ']';
  }
  out += m.size() ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

void save_distance_matrix(const DistanceMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << distance_matrix_to_json(m);
  if (!out) throw IoError("write failed for " + path.string());
}

MetricReport verify_metric(const DistanceMatrix& m, double tolerance) {
  MetricReport report;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i)) > tolerance) report.nonzero_diagonal.push_back(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < -tolerance) report.negative.push_back({i, j});
      if (i < j) {
        if (std::abs(m(i, j) - m(j, i)) > tolerance) report.asymmetric.push_back({i, j});
        if (std::abs(m(i, j)) <= tolerance) report.zero_off_diagonal.push_back({i, j});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (m(i, k) > m(i, j) + m(j, k) + tolerance) report.triangle_violations.push_back({i, j, k});
      }
  return report;
}

}  // namespace socioplex
