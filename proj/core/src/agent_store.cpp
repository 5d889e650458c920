#include "socioplex/agent_store.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "socioplex/errors.hpp"

namespace socioplex {

namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader =
    "id,name,institution,phd_institution,field1,field2,field3,collaborators,citations";
constexpr std::size_t kCsvColumns = 9;

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::set<std::string> split_ids(std::string_view list) {
  std::set<std::string> out;
  while (!list.empty()) {
    const auto pos = list.find(';');
    const auto token = trim(list.substr(0, pos));
    if (!token.empty()) out.emplace(token);
    if (pos == std::string_view::npos) break;
    list.remove_prefix(pos + 1);
  }
  return out;
}

std::string join_ids(const std::set<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ';';
    out += id;
  }
  return out;
}

// RFC 4180 style record splitter. Returns false at end of input.
// `line` is advanced past every physical line consumed.
bool next_csv_record(std::string_view text, std::size_t& pos, std::size_t& line,
                     std::vector<std::string>& cells, const std::string& source) {
  cells.clear();
  if (pos >= text.size()) return false;
  ++line;
  const std::size_t start_line = line;
  std::string cell;
  bool quoted = false;
  bool after_quote = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cell += '"';
          ++pos;
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
      after_quote = false;
    } else if (c == '\n') {
      break;
    } else if (c == '\r') {
      // tolerated before \n
    } else if (c == '"' && cell.empty() && !after_quote) {
      quoted = true;
    } else {
      if (after_quote) throw ParseError(source, line, "unexpected character after closing quote");
      cell += c;
    }
  }
  if (quoted) throw ParseError(source, start_line, "unterminated quoted field");
  cells.push_back(std::move(cell));
  return true;
}

bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos ||
         (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                         std::isspace(static_cast<unsigned char>(s.back()))));
}

void write_csv_cell(std::string& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string json_string(const json& obj, const char* key, const std::string& source,
                        std::size_t row) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string())
    throw ParseError(source, row, std::string("key \"") + key + "\" must be a string");
  return it->get<std::string>();
}

std::set<std::string> json_id_set(const json& obj, const char* key, const std::string& source,
                                  std::size_t row) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (it->is_string()) return split_ids(it->get<std::string>());
  if (!it->is_array())
    throw ParseError(source, row, std::string("key \"") + key + "\" must be an array of ids");
  std::set<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string())
      throw ParseError(source, row, std::string("key \"") + key + "\" must contain strings");
    out.insert(v.get<std::string>());
  }
  return out;
}

}  // namespace

AgentSet::AgentSet(std::vector<AgentRecord> records) : records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (!index_.emplace(records_[i].id, i).second) throw DuplicateId(records_[i].id);
  }
}

std::optional<std::size_t> AgentSet::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> AgentSet::ids() const {
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.id);
  return out;
}

AgentFormat agent_format_from_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return AgentFormat::csv;
  if (ext == ".json") return AgentFormat::json;
  throw InvalidArgument("cannot infer agent file format from \"" + path.string() +
                        "\"; expected .csv or .json");
}

AgentSet parse_agents_csv(std::string_view text, const std::string& source) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::size_t pos = 0;
  std::size_t line = 0;
  std::vector<std::string> cells;
  if (!next_csv_record(text, pos, line, cells, source))
    throw ParseError(source, 1, "missing header");
  std::string header;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) header += ',';
    header += trim(cells[i]);
  }
  if (header != kCsvHeader)
    throw ParseError(source, 1, "unexpected header, expected \"" + std::string(kCsvHeader) + "\"");

  std::vector<AgentRecord> records;
  while (true) {
    const std::size_t row_line = line + 1;
    if (!next_csv_record(text, pos, line, cells, source)) break;
    if (cells.size() == 1 && trim(cells[0]).empty()) continue;  // blank line
    if (cells.size() != kCsvColumns)
      throw ParseError(source, row_line,
                       "expected " + std::to_string(kCsvColumns) + " columns, found " +
                           std::to_string(cells.size()));
    AgentRecord r;
    r.id = trim(cells[0]);
    if (r.id.empty()) throw ParseError(source, row_line, "empty id");
    r.name = cells[1];
    r.institution = cells[2];
    r.phd_institution = cells[3];
    for (std::size_t f = 4; f < 7; ++f) {
      const auto code = trim(cells[f]);
      if (!code.empty()) r.fields.emplace_back(code);
    }
    r.collaborators = split_ids(cells[7]);
    r.citations = split_ids(cells[8]);
    records.push_back(std::move(r));
  }
  return AgentSet(std::move(records));
}

AgentSet parse_agents_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset only; count lines up to it
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + upto, '\n'));
    throw ParseError(source, line, e.what());
  }
  if (!doc.is_array()) throw ParseError(source, 1, "top-level value must be an array of agents");

  std::vector<AgentRecord> records;
  records.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& obj = doc[i];
    const std::size_t row = i + 1;
    if (!obj.is_object()) throw ParseError(source, row, "agent entry must be an object");
    AgentRecord r;
    r.id = json_string(obj, "id", source, row);
    if (r.id.empty()) throw ParseError(source, row, "empty id");
    r.name = json_string(obj, "name", source, row);
    r.institution = json_string(obj, "institution", source, row);
    r.phd_institution = json_string(obj, "phd_institution", source, row);
    if (const auto it = obj.find("fields"); it != obj.end()) {
      if (!it->is_array()) throw ParseError(source, row, "key \"fields\" must be an array");
      for (const auto& f : *it) {
        if (!f.is_string()) throw ParseError(source, row, "field codes must be strings");
        r.fields.push_back(f.get<std::string>());
      }
    } else {
      for (const char* key : {"field1", "field2", "field3"}) {
        auto code = json_string(obj, key, source, row);
        if (!trim(code).empty()) r.fields.emplace_back(trim(code));
      }
    }
    r.collaborators = json_id_set(obj, "collaborators", source, row);
    r.citations = json_id_set(obj, "citations", source, row);
    records.push_back(std::move(r));
  }
  return AgentSet(std::move(records));
}

AgentSet load_agents(const std::filesystem::path& path, AgentFormat format) {
  const auto text = read_file(path);
  const auto source = path.string();
  return format == AgentFormat::csv ? parse_agents_csv(text, source)
                                    : parse_agents_json(text, source);
}

std::string agents_to_csv(const AgentSet& agents) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : agents) {
    if (r.fields.size() > 3)
      throw InvalidArgument("agent \"" + r.id + "\" has more than 3 fields; CSV holds at most 3");
    std::array<std::string_view, kCsvColumns> cells{};
    cells[0] = r.id;
    cells[1] = r.name;
    cells[2] = r.institution;
    cells[3] = r.phd_institution;
    for (std::size_t f = 0; f < r.fields.size(); ++f) cells[4 + f] = r.fields[f];
    const auto collab = join_ids(r.collaborators);
    const auto cites = join_ids(r.citations);
    cells[7] = collab;
    cells[8] = cites;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      write_csv_cell(out, cells[i]);
    }
    out += '\n';
  }
  return out;
}

std::string agents_to_json(const AgentSet& agents) {
  json doc = json::array();
  for (const auto& r : agents) {
    doc.push_back({{"id", r.id},
                   {"name", r.name},
                   {"institution", r.institution},
                   {"phd_institution", r.phd_institution},
                   {"fields", r.fields},
                   {"collaborators", r.collaborators},
                   {"citations", r.citations}});
  }
  return doc.dump(2) + "\n";
}

void save_agents(const AgentSet& agents, const std::filesystem::path& path, AgentFormat format) {
  write_file(path, format == AgentFormat::csv ? agents_to_csv(agents) : agents_to_json(agents));
}

std::size_t ValidationReport::count(std::string_view reason) const {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [&](const auto& i) {
    return std::string_view(i.reason).starts_with(reason);
  }));
}

ValidationReport validate(const AgentSet& agents) {
  ValidationReport report;
  auto add = [&](const AgentRecord& r, std::string reason) {
    report.issues.push_back({r.id, std::move(reason)});
  };
  for (const auto& r : agents) {
    if (r.id.empty()) add(r, "id empty");
    if (r.fields.empty()) add(r, "fields empty");
    if (r.fields.size() > 3) add(r, "too many fields (" + std::to_string(r.fields.size()) + ")");
    std::set<std::string> seen;
    for (const auto& f : r.fields) {
      const auto code = normalize_field_code(f);
      if (code.empty()) {
        add(r, "field code empty");
      } else if (!seen.insert(code).second) {
        add(r, "duplicate field " + code);
      }
    }
    if (r.collaborators.contains(r.id)) add(r, "self-reference in collaborators");
    if (r.citations.contains(r.id)) add(r, "self-reference in citations");
    for (const auto& id : r.collaborators)
      if (id != r.id && !agents.contains(id)) add(r, "dangling collaborator " + id);
    for (const auto& id : r.citations)
      if (id != r.id && !agents.contains(id)) add(r, "dangling citation " + id);
  }
  return report;
}

std::string normalize_field_code(std::string_view code) {
  std::string out(trim(code));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace socioplex
