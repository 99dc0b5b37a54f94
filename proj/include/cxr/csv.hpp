#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cxr {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, LF or CRLF line
/// ends. Blank lines are skipped. Throws kMalformedCsv on an unterminated quote.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// Quotes the field only when it contains a comma, quote, or line break.
std::string csv_field(std::string_view field);

std::string csv_line(const std::vector<std::string>& fields);

}  // namespace cxr
