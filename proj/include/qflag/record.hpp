#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qflag {

/// One command result: an echo of the inputs and a table of decimal strings.
struct Record {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const Record&, const Record&) = default;
};

enum class OutputFormat { Table, Csv, Json };

/// Throws ValidationError for names other than table, csv, json.
OutputFormat parse_output_format(std::string_view name);

/// Table: aligned columns under a header line, or the bare value for a 1x1
/// record. CSV: header line then rows, LF endings. JSON: one object, every
/// integer as a string. All three end with a newline.
std::string render(const Record& record, OutputFormat format);

/// Inverse of render(record, OutputFormat::Json).
Record parse_json_record(std::string_view text);

}  // namespace qflag
