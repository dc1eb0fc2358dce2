#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tailix {

/// Shortest-free, round-trippable rendering: %.17g, '.' decimal separator.
std::string format_number(double value);
std::string format_number(const std::optional<double>& value,
                          std::string_view missing);

using CsvRow = std::vector<std::string>;

/// RFC 4180 style: comma separated, fields with commas, quotes or newlines are
/// quoted, LF line endings (CRLF accepted on input).
std::vector<CsvRow> parse_csv(std::string_view text);
std::string write_csv(const std::vector<CsvRow>& rows);

}  // namespace tailix
