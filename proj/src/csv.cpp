#include "aerial/csv.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

#include "aerial/error.hpp"

namespace aerial {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

bool is_missing_cell(const std::string& trimmed) {
  return trimmed.empty() || trimmed == "?";
}

// Splits one physical CSV record. Quoted fields may contain the delimiter
// and doubled quotes.
std::vector<std::string> split_record(const std::string& line, char delimiter,
                                      std::size_t record_index,
                                      const std::string& origin) {
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    fail(ErrorCode::parse, origin + ": record " + std::to_string(record_index) +
                               " has an unterminated quoted field");
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

bool parses_as_number(const std::string& cell, double* value) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  const char* begin = t.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + t.size()) return false;
  if (value) *value = v;
  return true;
}

RawTable parse_csv(std::istream& in, const CsvOptions& options,
                   const std::string& origin) {
  RawTable table;
  std::string line;
  std::size_t record_index = 0;
  std::size_t expected_fields = 0;
  bool have_columns = false;

  while (std::getline(in, line)) {
    ++record_index;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && !have_columns) continue;  // leading blank lines

    std::vector<std::string> fields =
        split_record(line, options.delimiter, record_index, origin);

    if (!have_columns) {
      expected_fields = fields.size();
      table.columns.resize(expected_fields);
      for (std::size_t c = 0; c < expected_fields; ++c) {
        table.columns[c].name = options.has_header
                                    ? trim(fields[c])
                                    : "col" + std::to_string(c);
      }
      have_columns = true;
      if (options.has_header) continue;
    }

    if (fields.size() != expected_fields) {
      fail(ErrorCode::parse,
           origin + ": record " + std::to_string(record_index) + " has " +
               std::to_string(fields.size()) + " fields, expected " +
               std::to_string(expected_fields));
    }
    for (std::size_t c = 0; c < expected_fields; ++c) {
      std::string cell = trim(fields[c]);
      const bool missing = is_missing_cell(cell);
      table.columns[c].cells.push_back(std::move(cell));
      table.columns[c].missing.push_back(missing);
    }
    ++table.n_rows;
  }

  if (!have_columns || table.n_rows == 0) {
    fail(ErrorCode::parse, origin + ": no data rows");
  }

  for (RawColumn& column : table.columns) {
    bool numeric = false;
    for (std::size_t r = 0; r < column.cells.size(); ++r) {
      if (column.missing[r]) continue;
      if (!parses_as_number(column.cells[r])) {
        numeric = false;
        break;
      }
      numeric = true;
    }
    column.kind = numeric ? ColumnKind::numeric : ColumnKind::categorical;
  }
  return table;
}

RawTable load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::io, "cannot open " + path);
  }
  return parse_csv(in, options, path);
}

}  // namespace aerial
