#include "casimir/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::csv {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view token, const std::string& context) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw ValidationError(context + ": not a finite number: '" + std::string(token) + "'");
  }
  return v;
}

NumericTable read_numeric(std::istream& in, std::initializer_list<std::string_view> expected_header,
                          const std::string& source) {
  NumericTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view, ',');
    if (!have_header) {
      bool ok = fields.size() == expected_header.size();
      std::size_t i = 0;
      for (auto expected : expected_header) {
        if (!ok) break;
        ok = fields[i++] == expected;
      }
      if (!ok) {
        std::string want;
        for (auto e : expected_header) want += (want.empty() ? "" : ",") + std::string(e);
        throw ValidationError(source + ":" + std::to_string(line_no) + ": expected header '" +
                              want + "', got '" + std::string(view) + "'");
      }
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != expected_header.size()) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(expected_header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      row.push_back(parse_double(fields[i], source + ":" + std::to_string(line_no) + " column '" +
                                                table.header[i] + "'"));
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ValidationError(source + ": missing header line");
  return table;
}

RecordTable read_records(std::istream& in, const std::string& source) {
  RecordTable table;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (view.empty() || view.front() == '#') continue;
    const auto fields = split(view, ',');
    if (!have_header) {
      for (auto f : fields) table.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header.size()) + " fields, got " +
                            std::to_string(fields.size()));
    }
    table.rows.emplace_back(fields.begin(), fields.end());
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ValidationError(source + ": missing header line");
  return table;
}

std::string format(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 11);
  return std::string(buf.data(), ptr);
}

std::string format_exact(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace casimir::csv
