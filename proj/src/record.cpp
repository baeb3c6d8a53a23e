#include "qflag/record.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "qflag/error.hpp"

namespace qflag {

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ValidationError("unknown output format '" + std::string(name) + "'");
}

std::string render(const Record& record, OutputFormat format) {
  std::ostringstream out;
  switch (format) {
    case OutputFormat::Table: {
      if (record.rows.size() == 1 && record.columns.size() == 1) {
        out << record.rows[0][0] << '\n';
        break;
      }
      std::vector<std::size_t> width(record.columns.size());
      for (std::size_t c = 0; c < record.columns.size(); ++c) width[c] = record.columns[c].size();
      for (const auto& row : record.rows) {
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
      }
      auto emit = [&](const std::vector<std::string>& cells) {
        std::string line;
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (c) line += "  ";
          line += cells[c];
          if (c + 1 < cells.size()) line.append(width[c] - cells[c].size(), ' ');
        }
        out << line << '\n';
      };
      emit(record.columns);
      for (const auto& row : record.rows) emit(row);
      break;
    }
    case OutputFormat::Csv: {
      auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_escape(cells[c]);
        out << '\n';
      };
      emit(record.columns);
      for (const auto& row : record.rows) emit(row);
      break;
    }
    case OutputFormat::Json: {
      nlohmann::ordered_json j;
      j["kind"] = record.kind;
      j["parameters"] = nlohmann::ordered_json::object();
      for (const auto& [key, value] : record.parameters) j["parameters"][key] = value;
      j["columns"] = record.columns;
      j["rows"] = record.rows;
      out << j.dump() << '\n';
      break;
    }
  }
  return out.str();
}

Record parse_json_record(std::string_view text) {
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    Record r;
    r.kind = j.at("kind").get<std::string>();
    for (const auto& [key, value] : j.at("parameters").items()) r.parameters.emplace_back(key, value.get<std::string>());
    r.columns = j.at("columns").get<std::vector<std::string>>();
    r.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed record: ") + e.what());
  }
}

}  // namespace qflag
