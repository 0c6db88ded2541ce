#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace schemata {

// Six significant digits, `.` as decimal separator, independent of locale.
std::string format_number(double value);

// Joins fields with commas; fields containing separators or quotes are quoted.
std::string csv_row(const std::vector<std::string>& fields);

// Minimal RFC 4180 reader: one vector of fields per record.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace schemata
