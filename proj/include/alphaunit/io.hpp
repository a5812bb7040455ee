#pragma once

// Data ingestion for the command-line tool: single-column CSV extraction,
// min-max scaling to [0, 1] and the boundary squeeze y -> (y (n-1) + 0.5) / n.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "alphaunit/errors.hpp"
#include "alphaunit/unit_sample.hpp"

namespace alphaunit {

/// Column selector: zero-based index or header name.
using column_ref = std::variant<std::size_t, std::string>;

namespace detail {

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view space = " \t\r\n";
  const auto first = s.find_first_not_of(space);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(space);
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline bool parse_number(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, out);
  return result.ec == std::errc{} && result.ptr == end && std::isfinite(out);
}

}  // namespace detail

/// Reads one numeric column. Blank lines are skipped; the first non-blank row
/// is a header when any of its fields is non-numeric. Errors cite 1-based line
/// numbers.
inline std::vector<double> ingest_csv(const std::filesystem::path& path, const column_ref& column) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open data file '" + path.string() + "'");

  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  std::size_t index = std::holds_alternative<std::size_t>(column) ? std::get<std::size_t>(column) : 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    if (first_row) {
      first_row = false;
      double ignored = 0.0;
      const bool header = std::any_of(fields.begin(), fields.end(), [&](std::string_view f) {
        return !detail::parse_number(f, ignored);
      });
      if (header) {
        if (const auto* name = std::get_if<std::string>(&column)) {
          const auto it = std::find(fields.begin(), fields.end(), std::string_view(*name));
          if (it == fields.end()) {
            throw data_error("line " + std::to_string(line_no) + ": column '" + *name +
                             "' not found in header");
          }
          index = static_cast<std::size_t>(it - fields.begin());
        } else if (index >= fields.size()) {
          throw data_error("line " + std::to_string(line_no) + ": column index " +
                           std::to_string(index) + " out of range");
        }
        continue;
      }
      if (const auto* name = std::get_if<std::string>(&column)) {
        throw data_error("column '" + *name + "' requested but '" + path.string() +
                         "' has no header row");
      }
    }
    if (index >= fields.size()) {
      throw data_error("line " + std::to_string(line_no) + ": missing column " +
                       std::to_string(index));
    }
    double value = 0.0;
    if (!detail::parse_number(fields[index], value)) {
      throw data_error("line " + std::to_string(line_no) + ": non-numeric value '" +
                       std::string(fields[index]) + "'");
    }
    values.push_back(value);
  }
  return values;
}

struct scaled_values {
  std::vector<double> values;
  bool squeezed = false;
};

/// y -> (y (n - 1) + 0.5) / n, mapping [0, 1] into [0.5/n, 1 - 0.5/n].
inline std::vector<double> squeeze_values(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(),
                 [n](double y) { return (y * (n - 1.0) + 0.5) / n; });
  return out;
}

/// (x - min) / (max - min), optionally followed by the boundary squeeze.
inline scaled_values minmax_transform(std::span<const double> values, bool squeeze) {
  if (values.size() < 2) throw data_error("minmax_transform: need at least two values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) throw data_error("minmax_transform: degenerate range (all values equal)");
  std::vector<double> scaled(values.size());
  const double min = *lo;
  std::transform(values.begin(), values.end(), scaled.begin(),
                 [min, range](double x) { return (x - min) / range; });
  if (squeeze) return {squeeze_values(scaled), true};
  return {std::move(scaled), false};
}

/// Validates scaled data as a unit sample; boundary zeros are reported with a
/// pointer to the squeeze option.
inline unit_sample to_unit_sample(scaled_values scaled, std::string source) {
  for (std::size_t i = 0; i < scaled.values.size(); ++i) {
    const double x = scaled.values[i];
    if (!(x >= 0.0 && x <= 1.0)) {
      throw data_error("value " + std::to_string(x) + " at position " + std::to_string(i + 1) +
                       " lies outside [0, 1]; rescale with --minmax");
    }
    if (x == 0.0) {
      throw data_error("value at position " + std::to_string(i + 1) +
                       " is exactly 0; enable the boundary squeeze with --squeeze");
    }
  }
  return unit_sample(std::move(scaled.values), scaled.squeezed, std::move(source));
}

}  // namespace alphaunit
