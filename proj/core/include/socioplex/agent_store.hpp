#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace socioplex {

/// One researcher's profile. Link sets may name agents outside the loaded set.
struct AgentRecord {
  std::string id;
  std::string name;
  std::string institution;
  std::string phd_institution;
  std::vector<std::string> fields;  // 1..3 field codes
  std::set<std::string> collaborators;
  std::set<std::string> citations;

  friend bool operator==(const AgentRecord&, const AgentRecord&) = default;
};

/// Ordered agents plus id lookup. Positions are the row/column order of any
/// DistanceMatrix derived from the set. Immutable once built.
class AgentSet {
 public:
  AgentSet() = default;
  /// Throws DuplicateId if two records share an id.
  explicit AgentSet(std::vector<AgentRecord> records);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const AgentRecord& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<AgentRecord>& records() const noexcept { return records_; }
  auto begin() const noexcept { return records_.begin(); }
  auto end() const noexcept { return records_.end(); }

  std::optional<std::size_t> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }
  std::vector<std::string> ids() const;

  friend bool operator==(const AgentSet& a, const AgentSet& b) { return a.records_ == b.records_; }

 private:
  std::vector<AgentRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class AgentFormat { csv, json };

/// Picks the format from the file extension (.csv / .json).
AgentFormat agent_format_from_path(const std::filesystem::path& path);

AgentSet load_agents(const std::filesystem::path& path, AgentFormat format);
AgentSet parse_agents_csv(std::string_view text, const std::string& source = "<csv>");
AgentSet parse_agents_json(std::string_view text, const std::string& source = "<json>");

void save_agents(const AgentSet& agents, const std::filesystem::path& path, AgentFormat format);
std::string agents_to_csv(const AgentSet& agents);
std::string agents_to_json(const AgentSet& agents);

struct ValidationIssue {
  std::string agent_id;
  std::string reason;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool ok() const noexcept { return issues.empty(); }
  /// Number of issues whose reason starts with `reason`.
  std::size_t count(std::string_view reason) const;
};

/// Lists every record-level invariant violation. Dangling ids are reported
/// as "dangling collaborator <id>" / "dangling citation <id>".
ValidationReport validate(const AgentSet& agents);

/// Trimmed and ASCII case-folded field code, the form used for comparisons.
std::string normalize_field_code(std::string_view code);

}  // namespace socioplex
