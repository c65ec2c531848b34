#pragma once

#include <string>
#include <vector>

#include "lr/error.hpp"
#include "lr/logic.hpp"

namespace lr::detail {

[[noreturn]] inline void script_error(ErrorKind kind, const ScriptNode& n, const std::string& msg) {
  std::string where = n.line ? "line " + std::to_string(n.line) + ": " : std::string();
  fail(kind, where + n.rule + ": " + msg);
}

inline const Hyp* find_hyp(const Zone& z, const std::string& name) {
  for (const Hyp& h : z)
    if (h.name == name) return &h;
  return nullptr;
}

inline std::string join_names(const Zone& z, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < z.size(); ++i) out += (out.empty() ? "" : ",") + z[i].name;
  return out;
}

/// The most recent context position carrying `name`.
inline std::size_t last_position(const std::vector<std::string>& names, const std::string& name) {
  for (std::size_t i = names.size(); i-- > 0;)
    if (names[i] == name) return i;
  fail(ErrorKind::Defect, "hypothesis '" + name + "' has no context position");
}

inline std::string fresh_name(const std::vector<std::string>& names, std::string base) {
  if (base.empty()) base = "x";
  auto taken = [&](const std::string& s) {
    for (const auto& n : names)
      if (n == s) return true;
    return false;
  };
  if (!taken(base)) return base;
  for (std::size_t k = 1;; ++k)
    if (!taken(base + std::to_string(k))) return base + std::to_string(k);
}

}  // namespace lr::detail
