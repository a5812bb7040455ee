#pragma once

// JSON report emission. Floating-point values are printed with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

namespace alphaunit::cli {

using json = nlohmann::ordered_json;

inline constexpr std::string_view tool_version = "0.1.0";

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_json(std::ostream& out, const json& value, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  switch (value.type()) {
    case json::value_t::object: {
      if (value.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(key).dump() << ": ";
        write_json(out, item, indent + 2);
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (value.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      bool first = true;
      for (const auto& item : value) {
        if (!first) out << ",\n";
        first = false;
        out << pad;
        write_json(out, item, indent + 2);
      }
      out << '\n' << close_pad << ']';
      return;
    }
    case json::value_t::number_float:
      out << format_double(value.get<double>());
      return;
    default:
      out << value.dump();
      return;
  }
}

/// Top-level report: {command, inputs, results, seed, tool_version}.
inline json make_report(std::string_view command, json inputs, json results,
                        std::optional<std::uint64_t> seed) {
  json report;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["results"] = std::move(results);
  report["seed"] = seed ? json(*seed) : json(nullptr);
  report["tool_version"] = tool_version;
  return report;
}

}  // namespace alphaunit::cli
