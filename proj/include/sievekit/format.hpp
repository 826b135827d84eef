#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sievekit {

/// Shortest decimal that parses back to the same double; "inf", "-inf",
/// "nan" for non-finite values.
std::string format_real(double value);

/// Inverse of format_real. Throws DataError on malformed input.
double parse_real(std::string_view text);
unsigned long long parse_unsigned(std::string_view text);

/// Splits on `sep`, trimming ASCII whitespace; empty pieces are dropped.
std::vector<std::string> split_list(std::string_view text, char sep = ',');

std::string_view trim(std::string_view text);

} // namespace sievekit
