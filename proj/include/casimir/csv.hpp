#pragma once

#include <initializer_list>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace casimir::csv {

struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<int> line_numbers;  // 1-based source line of each row
};

/// Reads a header line followed by rows of numbers. Blank lines and lines whose
/// first non-blank character is '#' are skipped. Throws ValidationError naming
/// the source and line on a header mismatch or a malformed field.
NumericTable read_numeric(std::istream& in, std::initializer_list<std::string_view> expected_header,
                          const std::string& source);

struct RecordTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> line_numbers;
};

/// Reads a header line and rows of untyped fields; every row must have as many
/// fields as the header. Same comment rules as read_numeric.
RecordTable read_records(std::istream& in, const std::string& source);

/// Scientific notation with 12 significant digits, locale independent.
std::string format(double v);

/// Shortest representation that parses back to the same double.
std::string format_exact(double v);

/// Locale-independent strict parse of a full token; throws ValidationError.
double parse_double(std::string_view token, const std::string& context);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view line, char sep);

}  // namespace casimir::csv
