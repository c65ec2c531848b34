#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lr/linalg.hpp"
#include "lr/semiring.hpp"
#include "lr/syntax.hpp"

namespace lr {

/// `x :r A, ... |- t : C`
struct Judgment {
  TyCtx ctx;
  UsageCtx usage;
  TermPtr term;
  TyPtr type;
  std::size_t line = 0;  // 1-based source line, 0 when built in code
};

/// A header (`semiring NAME`), optional `base A, B` declarations and one
/// judgment per blank-line separated stanza. `#` starts a comment.
struct JudgmentFile {
  const Semiring* semiring = nullptr;
  std::vector<std::string> bases;
  std::vector<Judgment> judgments;
};

/// Empty `bases` accepts any identifier as a base type.
TyPtr parse_type(const Semiring& sr, std::string_view text,
                 const std::vector<std::string>& bases = {});
/// `scope` lists the display names of the enclosing context, outermost first.
TermPtr parse_term(const Semiring& sr, std::string_view text,
                   const std::vector<std::string>& scope = {},
                   const std::vector<std::string>& bases = {});
/// `(1,0,w)`; `()` is the empty vector.
UsageCtx parse_usage(const Semiring& sr, std::string_view text);
/// `x :1 A, y :w B`, returning the typing and usage contexts.
std::pair<TyCtx, UsageCtx> parse_context(const Semiring& sr, std::string_view text,
                                         const std::vector<std::string>& bases = {});
Judgment parse_judgment(const Semiring& sr, std::string_view text,
                        const std::vector<std::string>& bases = {});
/// `fallback` is used when the file has no `semiring` header; `override`
/// wins over the header when non-null.
JudgmentFile parse_judgment_file(std::string_view text, const Semiring* fallback = nullptr,
                                 const Semiring* override = nullptr);

std::string print(const Semiring& sr, const Judgment& j);
/// Context in judgment syntax: `x :1 A, y :w B`.
std::string print_context(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage);
std::string print(const Semiring& sr, const JudgmentFile& file);

/// Splits a file into stanzas of non-comment lines, with their first line
/// number. Lines are kept verbatim (indentation included).
struct Stanza {
  std::size_t line = 0;
  std::vector<std::string> lines;
};
std::vector<Stanza> split_stanzas(std::string_view text);
/// Trims ASCII whitespace from both ends.
std::string trim(std::string_view s);
/// Splits on `sep` at bracket depth zero, trimming each piece. An empty
/// input gives no pieces.
std::vector<std::string> split_top(std::string_view s, char sep);

}  // namespace lr
