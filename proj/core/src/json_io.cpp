#include "lr/json_io.hpp"

#include <json.hpp>

#include "lr/error.hpp"
#include "lr/parse.hpp"

namespace lr {

using Json = nlohmann::ordered_json;

namespace {

// Printing then re-parsing the root term renames shadowed binders apart, so
// every node's context prints unambiguously.
Derivation canonical(const Semiring& sr, const Derivation& d) {
  TyCtx ctx = freshen_names(d.ctx);
  auto names = names_of(ctx);
  TermPtr t = parse_term(sr, print(sr, *d.term, names), names);
  return check(sr, ctx, d.usage, t, d.type);
}

Json fact_json(const Semiring& sr, const Fact& f) {
  Json j;
  switch (f.kind) {
    case Fact::Kind::Leq:
      j["lhs"] = print(sr, f.left);
      j["rhs"] = print(sr, f.right);
      j["kind"] = "leq";
      break;
    case Fact::Kind::Add:
      j["lhs"] = print(sr, f.left) + " + " + print(sr, f.right);
      j["rhs"] = print(sr, f.result);
      j["kind"] = "add";
      break;
    case Fact::Kind::Scale:
      j["lhs"] = sr.print(f.scalar) + " * " + print(sr, f.left);
      j["rhs"] = print(sr, f.result);
      j["kind"] = "scale";
      break;
  }
  return j;
}

Json node_json(const Semiring& sr, const Derivation& d) {
  Json ctx = Json::array();
  for (std::size_t i = 0; i < d.ctx.size(); ++i) {
    Json b;
    b["name"] = d.ctx[i].name;
    b["usage"] = sr.print(d.usage[i]);
    b["type"] = print(sr, *d.ctx[i].type);
    ctx.push_back(std::move(b));
  }
  Json j;
  j["rule"] = d.rule;
  j["conclusion"]["ctx"] = std::move(ctx);
  j["conclusion"]["term"] = print(sr, *d.term, names_of(d.ctx));
  j["conclusion"]["type"] = print(sr, *d.type);
  j["facts"] = Json::array();
  for (const auto& f : d.facts) j["facts"].push_back(fact_json(sr, f));
  j["children"] = Json::array();
  for (const auto& c : d.children) j["children"].push_back(node_json(sr, c));
  return j;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorKind::ParseError, std::string("derivation JSON lacks field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string())
    fail(ErrorKind::ParseError, std::string("derivation JSON field '") + key + "' must be a string");
  return v.get<std::string>();
}

bool differ(const Json& a, const Json& b, std::vector<std::size_t>& path) {
  for (const char* k : {"rule", "conclusion", "facts"})
    if (!a.contains(k) || a.at(k) != b.at(k)) return true;
  const Json& ka = field(a, "children");
  const Json& kb = b.at("children");
  if (!ka.is_array() || ka.size() != kb.size()) return true;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    path.push_back(i);
    if (differ(ka[i], kb[i], path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

std::string derivation_json(const Semiring& sr, const Derivation& d, int indent) {
  return node_json(sr, canonical(sr, d)).dump(indent);
}

Derivation derivation_from_json(const Semiring& sr, std::string_view input) {
  Json j;
  try {
    j = Json::parse(input);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  const Json& concl = field(j, "conclusion");
  const Json& ctx_json = field(concl, "ctx");
  if (!ctx_json.is_array()) fail(ErrorKind::ParseError, "conclusion ctx must be an array");
  TyCtx ctx;
  std::vector<Usage> usage;
  for (const Json& b : ctx_json) {
    ctx.push_back({text(b, "name"), parse_type(sr, text(b, "type"))});
    usage.push_back(sr.parse_or_fail(text(b, "usage")));
  }
  TermPtr t = parse_term(sr, text(concl, "term"), names_of(ctx));
  Derivation d = check(sr, ctx, UsageCtx(std::move(usage)), t, parse_type(sr, text(concl, "type")));
  std::vector<std::size_t> path;
  if (differ(j, node_json(sr, d), path)) {
    std::string p;
    for (auto i : path) p += "/" + std::to_string(i);
    Error e(ErrorKind::RuleMismatch,
            "derivation JSON disagrees with the re-checked derivation at node " +
                (p.empty() ? "/" : p));
    e.path = path;
    throw e;
  }
  return d;
}

}  // namespace lr
