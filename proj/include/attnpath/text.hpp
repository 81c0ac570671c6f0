#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace attnpath {

/// Lowercases ASCII letters and strips leading/trailing non-alphanumerics.
/// Internal punctuation survives ("Mother's," -> "mother's").
std::string normalize_word(std::string_view raw);

/// Splits on runs of blanks/tabs; no empty fields.
std::vector<std::string_view> split_whitespace(std::string_view line);

/// Splits text into lines, dropping a trailing '\r' from each.
std::vector<std::string_view> split_lines(std::string_view text);

/// One RFC-4180 record; quoted fields may contain commas and doubled quotes.
/// Embedded newlines are not supported.
std::vector<std::string> split_csv_record(std::string_view line);

/// Quotes a CSV field only when it needs it.
std::string csv_escape(std::string_view field);

/// Strict decimal parse of the whole token; false on trailing junk or non-finite.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, long long& out);

/// Fixed-point formatting with `decimals` digits ("%.6f" by default).
std::string fixed(double value, int decimals = 6);

/// Shortest representation that parses back to the same double.
std::string shortest(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace attnpath
