#pragma once

// Minimal RFC-4180-style line splitting shared by the CSV readers.

#include <string>
#include <string_view>
#include <vector>

namespace qrja::csv {

/// Splits one line on commas. Double-quoted fields may contain commas and
/// doubled quotes. Trailing '\r' is dropped.
[[nodiscard]] std::vector<std::string> split_line(std::string_view line);

/// Quotes a field if it contains a comma, quote, or newline.
[[nodiscard]] std::string escape(std::string_view field);

/// Parses a finite double, whole-field match required. Throws ParseError.
[[nodiscard]] double parse_double(std::string_view field, std::string_view what, std::size_t row);
[[nodiscard]] long long parse_int(std::string_view field, std::string_view what, std::size_t row);

[[nodiscard]] std::string_view trim(std::string_view s);

}  // namespace qrja::csv
