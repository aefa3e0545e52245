#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace padicprob::cli {

enum class Format { Csv, Json };

using Fields = std::vector<std::pair<std::string, std::string>>;

// A tabular report. Every cell is text; rationals are written exactly as
// "num/den" (or split into num and den columns), never as floating point.
struct Report {
  std::string schema;
  Fields config;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  Fields summary;

  std::string cell(std::size_t row, std::string_view column) const;
  std::string summary_value(std::string_view key) const;
};

// CSV holds the header and rows only. JSON-lines holds one config record,
// one record per row and one summary record.
void write_report(const Report& report, Format format, std::ostream& out);

Report parse_csv(std::string_view text, std::string schema);
Report parse_jsonl(std::string_view text);

}  // namespace padicprob::cli
