#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aerial {

enum class ColumnKind { categorical, numeric };

struct CsvOptions {
  char delimiter = ',';
  bool has_header = true;
};

// One parsed column. Missing cells (empty or "?") keep their flag set; the
// cell text is preserved as read.
struct RawColumn {
  std::string name;
  ColumnKind kind = ColumnKind::categorical;
  std::vector<std::string> cells;
  std::vector<bool> missing;
};

struct RawTable {
  std::vector<RawColumn> columns;
  std::size_t n_rows = 0;
};

// Parses a delimiter-separated file with optional quoting ("" escapes a
// quote inside a quoted field). Column kind is numeric when every
// non-missing cell parses fully as a number, categorical otherwise.
RawTable load_csv(const std::string& path, const CsvOptions& options = {});

// Same, from an already-open stream; `origin` names the source in errors.
RawTable parse_csv(std::istream& in, const CsvOptions& options,
                   const std::string& origin);

// True when the trimmed cell parses completely as a finite-or-inf/nan double.
bool parses_as_number(const std::string& cell, double* value = nullptr);

}  // namespace aerial
