#include "padicprob/cli/report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "padicprob/errors.hpp"

namespace padicprob::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

nlohmann::ordered_json fields_json(const Fields& fields) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : fields) j[k] = v;
  return j;
}

Fields json_fields(const nlohmann::ordered_json& j) {
  Fields out;
  for (const auto& [k, v] : j.items()) out.emplace_back(k, v.get<std::string>());
  return out;
}

}  // namespace

std::string Report::cell(std::size_t row, std::string_view column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) fail(ErrorKind::InvalidArgument, "report has no column '" + std::string(column) + "'");
  return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

std::string Report::summary_value(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  fail(ErrorKind::InvalidArgument, "report has no summary field '" + std::string(key) + "'");
}

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i > 0 ? "," : "") << csv_escape(report.columns[i]);
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i > 0 ? "," : "") << csv_escape(row[i]);
      out << '\n';
    }
    return;
  }
  nlohmann::ordered_json config{{"record", "config"}, {"schema", report.schema}};
  config["config"] = fields_json(report.config);
  config["columns"] = report.columns;
  out << config.dump() << '\n';
  for (const auto& row : report.rows) {
    nlohmann::ordered_json j{{"record", "row"}};
    for (std::size_t i = 0; i < row.size(); ++i) j[report.columns[i]] = row[i];
    out << j.dump() << '\n';
  }
  nlohmann::ordered_json summary{{"record", "summary"}};
  summary["summary"] = fields_json(report.summary);
  out << summary.dump() << '\n';
}

Report parse_csv(std::string_view text, std::string schema) {
  Report report;
  report.schema = std::move(schema);
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = csv_split(line);
    if (header) {
      report.columns = std::move(cells);
      header = false;
      continue;
    }
    if (cells.size() != report.columns.size()) fail(ErrorKind::Parse, "CSV row has the wrong number of cells");
    report.rows.push_back(std::move(cells));
  }
  if (header) fail(ErrorKind::Parse, "CSV report without a header");
  return report;
}

Report parse_jsonl(std::string_view text) {
  Report report;
  std::istringstream in{std::string(text)};
  std::string line;
  bool seen_config = false;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::ordered_json::parse(line);
      const auto record = j.at("record").get<std::string>();
      if (record == "config") {
        report.schema = j.at("schema").get<std::string>();
        report.config = json_fields(j.at("config"));
        report.columns = j.at("columns").get<std::vector<std::string>>();
        seen_config = true;
      } else if (record == "row") {
        if (!seen_config) fail(ErrorKind::Parse, "row record before the config record");
        std::vector<std::string> row;
        for (const auto& c : report.columns) row.push_back(j.at(c).get<std::string>());
        report.rows.push_back(std::move(row));
      } else if (record == "summary") {
        report.summary = json_fields(j.at("summary"));
      } else {
        fail(ErrorKind::Parse, "unknown record kind '" + record + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("JSON-lines report: ") + e.what());
  }
  if (!seen_config) fail(ErrorKind::Parse, "JSON-lines report without a config record");
  return report;
}

}  // namespace padicprob::cli
