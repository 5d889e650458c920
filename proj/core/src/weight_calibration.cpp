#include "socioplex/weight_calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "socioplex/errors.hpp"

namespace socioplex {

namespace {

// Ties in distance are decided with this slack; grid weights produce sums of
// at most five terms in [0, 2].
constexpr double kTieTolerance = 1e-12;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Distinct pairs have components in {1,2}, so a pair falls in one of 32 patterns.
struct PatternCounts {
  std::array<ComponentVector, 32> pattern{};
  std::array<std::size_t, 32> positives{};
  std::array<std::size_t, 32> negatives{};
  std::size_t total_positives = 0;
  std::size_t total_negatives = 0;
};

std::size_t pattern_index(const ComponentVector& cv) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < kComponentCount; ++i)
    idx |= static_cast<std::size_t>(cv[i] == 2) << i;
  return idx;
}

PatternCounts count_patterns(const AgentSet& agents, const LabelSet& labels) {
  PatternCounts counts;
  for (std::size_t p = 0; p < 32; ++p)
    for (std::size_t i = 0; i < kComponentCount; ++i)
      counts.pattern[p].d[i] = (p >> i) & 1U ? 2 : 1;

  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const auto idx = pattern_index(component_distances(agents[i], agents[j]));
      if (labels.contains(make_id_pair(agents[i].id, agents[j].id))) {
        ++counts.positives[idx];
        ++counts.total_positives;
      } else {
        ++counts.negatives[idx];
        ++counts.total_negatives;
      }
    }
  }
  return counts;
}

double auc(const PatternCounts& counts, const Weights& w) {
  if (counts.total_positives == 0 || counts.total_negatives == 0) return 0.5;

  struct Bucket {
    double distance;
    std::size_t pos, neg;
  };
  std::vector<Bucket> buckets;
  buckets.reserve(32);
  for (std::size_t p = 0; p < 32; ++p)
    if (counts.positives[p] + counts.negatives[p] > 0)
      buckets.push_back({r_distance(counts.pattern[p], w), counts.positives[p], counts.negatives[p]});
  std::sort(buckets.begin(), buckets.end(),
            [](const Bucket& a, const Bucket& b) { return a.distance < b.distance; });

  // Sweep from closest to farthest: a positive beats every negative farther away.
  double wins = 0.0;
  std::size_t negatives_seen = 0;
  for (std::size_t b = 0; b < buckets.size();) {
    std::size_t e = b;
    std::size_t pos = 0, neg = 0;
    while (e < buckets.size() && buckets[e].distance - buckets[b].distance <= kTieTolerance) {
      pos += buckets[e].pos;
      neg += buckets[e].neg;
      ++e;
    }
    const std::size_t negatives_after = counts.total_negatives - negatives_seen - neg;
    wins += static_cast<double>(pos) * (static_cast<double>(negatives_after) + 0.5 * static_cast<double>(neg));
    negatives_seen += neg;
    b = e;
  }
  return wins / (static_cast<double>(counts.total_positives) *
                 static_cast<double>(counts.total_negatives));
}

// Compositions of `total` into `parts` nonnegative integers, ascending lexicographic.
void compositions(int total, std::size_t parts, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    prefix.push_back(first);
    compositions(total - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<Weights> grid(int divisions, bool pin_k4) {
  std::vector<std::vector<int>> counts;
  std::vector<int> prefix;
  compositions(divisions, pin_k4 ? kComponentCount - 1 : kComponentCount, prefix, counts);
  std::vector<Weights> out;
  out.reserve(counts.size());
  for (auto& c : counts) {
    if (pin_k4) c.insert(c.begin() + 3, 0);
    std::array<double, kComponentCount> k{};
    for (std::size_t i = 0; i < kComponentCount; ++i)
      k[i] = static_cast<double>(c[i]) / static_cast<double>(divisions);
    out.emplace_back(k);
  }
  return out;
}

}  // namespace

IdPair make_id_pair(std::string a, std::string b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

LabelSet parse_label_pairs(std::string_view text, const std::string& source) {
  LabelSet labels;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    ++line_no;
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos)
      throw ParseError(source, line_no, "expected \"idA,idB\"");
    const auto a = trim(line.substr(0, comma));
    const auto b = trim(line.substr(comma + 1));
    if (a.empty() || b.empty() || b.find(',') != std::string_view::npos)
      throw ParseError(source, line_no, "expected \"idA,idB\"");
    if (a == b) throw ParseError(source, line_no, "pair names the same agent twice");
    labels.insert(make_id_pair(std::string(a), std::string(b)));
  }
  return labels;
}

LabelSet load_label_pairs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_label_pairs(buf.str(), path.string());
}

LabelSet collaboration_labels(const AgentSet& agents) {
  LabelSet labels;
  for (const auto& r : agents)
    for (const auto& other : r.collaborators)
      if (other != r.id && agents.contains(other)) labels.insert(make_id_pair(r.id, other));
  return labels;
}

int grid_divisions(double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 1.0)
    throw InvalidArgument("grid step must lie in (0, 1]");
  const double steps = 1.0 / grid_step;
  const double rounded = std::round(steps);
  if (std::abs(rounded * grid_step - 1.0) > 1e-9)
    throw InvalidArgument("grid step must divide 1 evenly");
  return static_cast<int>(rounded);
}

std::vector<Weights> enumerate_simplex(double grid_step) {
  return grid(grid_divisions(grid_step), false);
}

double score_weights(const AgentSet& agents, const Weights& w, const LabelSet& labels) {
  return auc(count_patterns(agents, labels), w);
}

Weights fit_weights(const AgentSet& agents, const CalibrationConfig& config,
                    const LabelSet& labels) {
  if (agents.size() < 2)
    throw EmptyAgentSet("calibration needs at least two agents (no pairs to score)");

  const bool pin_k4 = config.label_source == LabelSource::d4_labels;
  const auto counts =
      count_patterns(agents, pin_k4 ? collaboration_labels(agents) : labels);
  const auto candidates = grid(grid_divisions(config.grid_step), pin_k4);

  // Candidates are in ascending lexicographic order, so keeping the first
  // strict maximum is the lexicographically smallest optimum.
  std::size_t best = 0;
  double best_score = auc(counts, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double s = auc(counts, candidates[i]);
    if (s > best_score + kTieTolerance) {
      best_score = s;
      best = i;
    }
  }
  return candidates[best];
}

}  // namespace socioplex
