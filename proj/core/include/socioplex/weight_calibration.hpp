#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "socioplex/agent_store.hpp"
#include "socioplex/r_metric.hpp"

namespace socioplex {

/// Unordered pair of agent ids, stored with first <= second.
using IdPair = std::pair<std::string, std::string>;
using LabelSet = std::set<IdPair>;

IdPair make_id_pair(std::string a, std::string b);

/// One "idA,idB" pair per line; blank lines and lines starting with '#' are skipped.
LabelSet load_label_pairs(const std::filesystem::path& path);
LabelSet parse_label_pairs(std::string_view text, const std::string& source = "<labels>");

/// Pairs of agents that record a collaboration in either direction (both in the set).
LabelSet collaboration_labels(const AgentSet& agents);

enum class LabelSource { held_out_pairs, d4_labels };
enum class Scoring { auc };

struct CalibrationConfig {
  double grid_step = 0.05;
  LabelSource label_source = LabelSource::held_out_pairs;
  Scoring scoring = Scoring::auc;
};

/// Number of grid intervals, round(1 / step). Throws InvalidArgument if step is not in
/// (0, 1] or does not divide 1 within 1e-9.
int grid_divisions(double grid_step);

/// Every weight vector whose entries are nonnegative multiples of grid_step,
/// in ascending lexicographic order.
std::vector<Weights> enumerate_simplex(double grid_step);

/// AUC of -r_distance as a ranking of labelled pairs above unlabelled ones, over
/// all unordered pairs of the set. Ties count one half. Labels naming agents outside
/// the set are ignored. Returns 0.5 when either class is empty.
double score_weights(const AgentSet& agents, const Weights& w, const LabelSet& labels);

/// Exhaustive grid search for the AUC-maximizing weights; ties go to the
/// lexicographically smallest vector. With LabelSource::d4_labels the labels are
/// the recorded collaborations and K4 is pinned to 0. Throws EmptyAgentSet for
/// fewer than two agents.
Weights fit_weights(const AgentSet& agents, const CalibrationConfig& config,
                    const LabelSet& labels = {});

}  // namespace socioplex
