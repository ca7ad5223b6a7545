#pragma once

// Deterministic pretty-printer: containers whose children are all scalars
// go on one line when short enough, everything else is indented.

#include <string>

#include "json.hpp"

namespace hochschild::cli {

using Json = nlohmann::ordered_json;

namespace detail {

inline bool all_scalar(const Json& j) {
  for (const auto& c : j)
    if (c.is_structured()) return false;
  return true;
}

inline std::string inline_form(const Json& j) {
  std::string s;
  if (j.is_array()) {
    s = "[";
    bool first = true;
    for (const auto& c : j) {
      if (!first) s += ", ";
      first = false;
      s += c.dump();
    }
    return s + "]";
  }
  s = "{";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) s += ", ";
    first = false;
    s += Json(it.key()).dump() + ": " + it.value().dump();
  }
  return s + "}";
}

inline void format(const Json& j, int depth, std::string& out) {
  constexpr std::size_t kInlineWidth = 100;
  if (!j.is_structured()) {
    out += j.dump();
    return;
  }
  if (j.empty()) {
    out += j.is_array() ? "[]" : "{}";
    return;
  }
  if (all_scalar(j)) {
    std::string s = inline_form(j);
    if (s.size() <= kInlineWidth) {
      out += s;
      return;
    }
  }
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  out += j.is_array() ? "[\n" : "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (j.is_object()) out += Json(it.key()).dump() + ": ";
    format(it.value(), depth + 1, out);
  }
  out += "\n" + close + (j.is_array() ? "]" : "}");
}

}  // namespace detail

inline std::string format_json(const Json& j) {
  std::string out;
  detail::format(j, 0, out);
  out += "\n";
  return out;
}

}  // namespace hochschild::cli
