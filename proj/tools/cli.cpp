#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "lr/checker.hpp"
#include "lr/dill.hpp"
#include "lr/error.hpp"
#include "lr/json_io.hpp"
#include "lr/parse.hpp"
#include "lr/pd.hpp"
#include "lr/semiring.hpp"
#include "lr/traversal.hpp"

namespace lr::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad invocations and unreadable inputs; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::ScopeError:
    case ErrorKind::UnknownSemiring:
      return 2;
    default:
      return 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool use_color() {
  const char* c = std::getenv("LR_COLOR");
  return c && std::string(c) == "1";
}

std::string ok_tag() { return use_color() ? "\x1b[32mOK\x1b[0m" : "OK"; }
std::string fail_tag() { return use_color() ? "\x1b[31mFAIL\x1b[0m" : "FAIL"; }

Json error_json(const Error& e) {
  Json j;
  j["kind"] = std::string(to_string(e.kind()));
  j["message"] = e.detail();
  if (!e.rule.empty()) j["rule"] = e.rule;
  if (!e.path.empty() || !e.rule.empty()) j["path"] = e.path;
  if (!e.lhs.empty() || !e.rhs.empty()) {
    j["lhs"] = e.lhs;
    j["rhs"] = e.rhs;
  }
  if (e.coordinate) j["coordinate"] = *e.coordinate;
  return j;
}

enum class Mode { Infer, Annotated, Auto };

Derivation derive(const Semiring& sr, const Judgment& j, Mode mode) {
  if (mode == Mode::Infer) return infer_check(sr, j.ctx, j.usage, j.term, j.type);
  if (mode == Mode::Annotated) return check(sr, j.ctx, j.usage, j.term, j.type);
  try {
    return check(sr, j.ctx, j.usage, j.term, j.type);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MissingAnnotation) throw;
    return infer_check(sr, j.ctx, j.usage, j.term, j.type);
  }
}

const Semiring* semiring_option(const std::string& name) {
  return name.empty() ? nullptr : &semiring_by_name(name);
}

struct Outcome {
  std::size_t line = 0;
  std::optional<Derivation> derivation;
  std::optional<Error> error;
};

template <class F>
Outcome attempt(std::size_t line, F&& f) {
  Outcome o;
  o.line = line;
  try {
    o.derivation = f();
  } catch (const Error& e) {
    o.error = e;
  }
  return o;
}

int code_of(const std::vector<Outcome>& outcomes) {
  int code = 0;
  for (const auto& o : outcomes)
    if (o.error) code = std::max(code, exit_code(*o.error));
  return code;
}

Json results_json(const Semiring& sr, const std::vector<Outcome>& outcomes) {
  Json doc;
  doc["semiring"] = std::string(sr.name());
  doc["results"] = Json::array();
  for (const auto& o : outcomes) {
    Json r;
    r["line"] = o.line;
    if (o.derivation) {
      r["status"] = "ok";
      r["derivation"] = Json::parse(derivation_json(sr, *o.derivation));
    } else {
      r["status"] = "error";
      r["error"] = error_json(*o.error);
    }
    doc["results"].push_back(std::move(r));
  }
  return doc;
}

// Judgment-file output: successes as judgments, failures on `err`.
int emit_judgments(const Semiring& sr, const std::vector<std::string>& bases,
                   const std::vector<Outcome>& outcomes, bool json, std::ostream& out,
                   std::ostream& err) {
  if (json) {
    out << results_json(sr, outcomes).dump(2) << "\n";
    return code_of(outcomes);
  }
  JudgmentFile file;
  file.semiring = &sr;
  file.bases = bases;
  for (const auto& o : outcomes) {
    if (o.derivation) {
      const Derivation& d = *o.derivation;
      file.judgments.push_back({d.ctx, d.usage, d.term, d.type, o.line});
    } else {
      err << "line " << o.line << ": " << fail_tag() << " " << o.error->report() << "\n";
    }
  }
  out << print(sr, file);
  return code_of(outcomes);
}

int cmd_check(const std::string& path, const std::string& semiring, Mode mode, bool json,
              std::ostream& out) {
  JudgmentFile f = parse_judgment_file(read_file(path), nullptr, semiring_option(semiring));
  const Semiring& sr = *f.semiring;
  std::vector<Outcome> outcomes;
  for (const auto& j : f.judgments)
    outcomes.push_back(attempt(j.line, [&] { return derive(sr, j, mode); }));
  if (json) {
    out << results_json(sr, outcomes).dump(2) << "\n";
  } else {
    for (const auto& o : outcomes) {
      if (o.derivation)
        out << "line " << o.line << ": " << ok_tag() << "\n" << render(sr, *o.derivation);
      else
        out << "line " << o.line << ": " << fail_tag() << " " << o.error->report() << "\n";
    }
  }
  return code_of(outcomes);
}

int cmd_validate(const std::string& path, const std::string& semiring, std::ostream& out,
                 std::ostream& err) {
  const std::string text = read_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  std::size_t count = 0;
  std::string regenerated;
  if (doc.is_object() && doc.contains("results")) {
    const Semiring& sr = semiring_by_name(doc.value("semiring", semiring));
    Json again = doc;
    for (auto& r : again["results"]) {
      if (!r.contains("derivation")) continue;
      Derivation d = derivation_from_json(sr, r["derivation"].dump());
      r["derivation"] = Json::parse(derivation_json(sr, d));
      ++count;
    }
    regenerated = again.dump(2) + "\n";
  } else {
    if (semiring.empty()) throw UsageError("a bare derivation needs --semiring");
    const Semiring& sr = semiring_by_name(semiring);
    regenerated = derivation_json(sr, derivation_from_json(sr, text)) + "\n";
    count = 1;
  }
  if (regenerated != text) {
    err << fail_tag() << " re-checked output differs from the input bytes\n";
    return 1;
  }
  out << ok_tag() << " " << count << " derivation(s) re-check byte-identically\n";
  return 0;
}

// `target x :1 A, ...` followed by `map x -> y` lines.
int cmd_rename(const Semiring& sr, const JudgmentFile& f, const std::string& map_path, bool json,
               std::ostream& out, std::ostream& err) {
  std::optional<std::pair<TyCtx, UsageCtx>> target;
  std::map<std::string, std::string> map;
  for (const auto& st : split_stanzas(read_file(map_path)))
    for (const auto& raw : st.lines) {
      std::string line = trim(raw);
      if (line.rfind("target", 0) == 0) {
        target = parse_context(sr, std::string_view(line).substr(6), f.bases);
      } else if (line.rfind("map ", 0) == 0) {
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw Error(ErrorKind::ParseError, "map line lacks '->'");
        map[trim(std::string_view(line).substr(4, arrow - 4))] =
            trim(std::string_view(line).substr(arrow + 2));
      } else {
        throw Error(ErrorKind::ParseError, "unexpected line in map file: " + line);
      }
    }
  if (!target) throw Error(ErrorKind::ParseError, "map file lacks a 'target' line");
  const auto& [tctx, tusage] = *target;
  auto position = [&](const TyCtx& ctx, const std::string& name) {
    for (std::size_t i = 0; i < ctx.size(); ++i)
      if (ctx[i].name == name) return i;
    throw Error(ErrorKind::ScopeError, "'" + name + "' is not in the context");
  };
  std::vector<Outcome> outcomes;
  for (const auto& j : f.judgments)
    outcomes.push_back(attempt(j.line, [&] {
      std::vector<std::size_t> image;
      for (const auto& b : j.ctx) {
        auto it = map.find(b.name);
        if (it == map.end()) throw Error(ErrorKind::ScopeError, "no map entry for '" + b.name + "'");
        image.push_back(position(tctx, it->second));
      }
      Derivation d = derive(sr, j, Mode::Auto);
      return ren(sr, tctx, tusage, [&](std::size_t k) { return image.at(k); }, d);
    }));
  return emit_judgments(sr, f.bases, outcomes, json, out, err);
}

// `target x :1 A, ...` followed by `y := TERM @ (row)` per variable of the
// judgment's context; each term lives over the target context at its row.
int cmd_subst(const Semiring& sr, const JudgmentFile& f, const std::string& env_path, bool json,
              std::ostream& out, std::ostream& err) {
  std::optional<std::pair<TyCtx, UsageCtx>> target;
  std::map<std::string, std::pair<std::string, std::string>> entries;
  for (const auto& st : split_stanzas(read_file(env_path)))
    for (const auto& raw : st.lines) {
      std::string line = trim(raw);
      if (line.rfind("target", 0) == 0) {
        target = parse_context(sr, std::string_view(line).substr(6), f.bases);
        continue;
      }
      auto def = line.find(":=");
      auto at = line.rfind('@');
      if (def == std::string::npos || at == std::string::npos || at < def)
        throw Error(ErrorKind::ParseError, "expected 'x := TERM @ (row)', found: " + line);
      entries[trim(std::string_view(line).substr(0, def))] = {
          trim(std::string_view(line).substr(def + 2, at - def - 2)),
          trim(std::string_view(line).substr(at + 1))};
    }
  if (!target) throw Error(ErrorKind::ParseError, "environment file lacks a 'target' line");
  const auto& [src, p] = *target;
  std::vector<Outcome> outcomes;
  for (const auto& j : f.judgments)
    outcomes.push_back(attempt(j.line, [&] {
      std::vector<UsageCtx> rows;
      std::vector<Derivation> act;
      for (const auto& b : j.ctx) {
        auto it = entries.find(b.name);
        if (it == entries.end())
          throw Error(ErrorKind::ScopeError, "no environment entry for '" + b.name + "'");
        UsageCtx row = parse_usage(sr, it->second.second);
        Judgment e{src, row, parse_term(sr, it->second.first, names_of(src), f.bases), b.type, 0};
        act.push_back(derive(sr, e, Mode::Auto));
        rows.push_back(row);
      }
      UsageMatrix psi(j.ctx.size(), src.size(), sr.zero());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < src.size() && c < rows[r].size(); ++c) psi.at(r, c) = rows[r][c];
      Derivation d = derive(sr, j, Mode::Auto);
      return sub(sr, env_build(sr, src, p, j.ctx, j.usage, psi, act), d);
    }));
  return emit_judgments(sr, f.bases, outcomes, json, out, err);
}

int cmd_transform(const std::string& op, const std::string& path, const std::string& aux,
                  const std::string& semiring, bool json, std::ostream& out, std::ostream& err) {
  JudgmentFile f = parse_judgment_file(read_file(path), nullptr, semiring_option(semiring));
  const Semiring& sr = *f.semiring;
  if (op == "bottomup") {
    std::vector<Outcome> outcomes;
    for (const auto& j : f.judgments)
      outcomes.push_back(
          attempt(j.line, [&] { return to_bottom_up(sr, derive(sr, j, Mode::Auto)); }));
    return emit_judgments(sr, f.bases, outcomes, json, out, err);
  }
  if (op == "rename" || op == "subst") {
    if (aux.empty()) throw UsageError(op + " needs an auxiliary file");
    return op == "rename" ? cmd_rename(sr, f, aux, json, out, err)
                          : cmd_subst(sr, f, aux, json, out, err);
  }
  if (op == "cut") {
    if (f.judgments.size() != 2)
      throw UsageError("cut needs a file with exactly two judgments: x:A^1 |- B, then G R |- A");
    std::vector<Outcome> outcomes{attempt(f.judgments[1].line, [&] {
      return cut1(sr, derive(sr, f.judgments[0], Mode::Auto),
                  derive(sr, f.judgments[1], Mode::Auto));
    })};
    return emit_judgments(sr, f.bases, outcomes, json, out, err);
  }
  throw UsageError("unknown transform '" + op + "' (bottomup, rename, subst, cut)");
}

template <class File, class Translate>
int from_logic(const Semiring& sr, const File& file, Translate&& tr, bool json, std::ostream& out,
               std::ostream& err) {
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < file.proofs.size(); ++i)
    outcomes.push_back(attempt(i + 1, [&] { return tr(file.proofs[i]); }));
  return emit_judgments(sr, file.bases, outcomes, json, out, err);
}

template <class Logic, class Translate>
int to_logic(const Semiring& sr, const std::string& text, Logic file, Translate&& tr,
             std::ostream& out, std::ostream& err) {
  JudgmentFile f = parse_judgment_file(text, &sr, nullptr);
  if (f.semiring != &sr)
    throw UsageError("expected a " + std::string(sr.name()) + " judgment file, found " +
                     std::string(f.semiring->name()));
  file.bases = f.bases;
  int code = 0;
  for (const auto& j : f.judgments) {
    try {
      file.proofs.push_back(tr(derive(sr, j, Mode::Auto)));
    } catch (const Error& e) {
      err << "line " << j.line << ": " << fail_tag() << " " << e.report() << "\n";
      code = std::max(code, exit_code(e));
    }
  }
  out << print(file);
  return code;
}

int cmd_translate(const std::string& dir, const std::string& path, bool json, std::ostream& out,
                  std::ostream& err) {
  const std::string text = read_file(path);
  if (dir == "dill2lr")
    return from_logic(lin01w(), parse_dill_file(text),
                      [](const DillDerivation& d) { return dill_to_lr(d); }, json, out, err);
  if (dir == "pd2lr")
    return from_logic(mod01box(), parse_pd_file(text),
                      [](const PdDerivation& d) { return pd_to_lr(d); }, json, out, err);
  if (json) throw UsageError("--json applies to dill2lr and pd2lr only");
  if (dir == "lr2dill")
    return to_logic(lin01w(), text, DillFile{},
                    [](const Derivation& d) { return lr_to_dill(d); }, out, err);
  if (dir == "lr2pd")
    return to_logic(mod01box(), text, PdFile{},
                    [](const Derivation& d) { return lr_to_pd(d); }, out, err);
  throw UsageError("unknown direction '" + dir + "' (dill2lr, lr2dill, pd2lr, lr2pd)");
}

int cmd_laws(const std::string& semiring, std::size_t budget, std::ostream& out) {
  const Semiring& sr = semiring_by_name(semiring);
  auto violations = law_audit(sr, budget);
  for (const auto& v : violations) {
    out << fail_tag() << " " << v.law << " at";
    for (Usage u : v.witness) out << " " << sr.print(u);
    out << "\n";
  }
  if (violations.empty())
    out << ok_tag() << " " << sr.name() << ": every law holds ("
        << (sr.enumerable() ? "exhaustive" : "bounded and sampled") << ")\n";
  out << "0 is top and + is meet: " << (zero_top_and_add_meet(sr) ? "yes" : "no") << "\n";
  return violations.empty() ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checker and translator for a graded linear lambda calculus", "lr"};
  app.require_subcommand(1);

  std::string file, semiring, op, aux, direction;
  bool infer = false, annotated = false, json = false;
  std::size_t budget = 1000;

  auto* check_cmd = app.add_subcommand("check", "Check every judgment of a file");
  check_cmd->add_option("file", file, "Judgment file")->required();
  check_cmd->add_option("--semiring", semiring, "trivial | lin01w | mod01box | nat");
  auto* fi = check_cmd->add_flag("--infer", infer, "Choose splits automatically (default)");
  auto* fa = check_cmd->add_flag("--annotated", annotated, "Use the splits written in the file");
  fi->excludes(fa);
  check_cmd->add_flag("--json", json, "Print derivations as JSON");

  auto* validate_cmd =
      app.add_subcommand("validate", "Re-check a JSON dump and compare it byte for byte");
  validate_cmd->add_option("file", file, "JSON file")->required();
  validate_cmd->add_option("--semiring", semiring, "Semiring of a bare derivation");

  auto* transform_cmd = app.add_subcommand("transform", "Rewrite the derivations of a file");
  transform_cmd->add_option("op", op, "bottomup | rename | subst | cut")->required();
  transform_cmd->add_option("file", file, "Judgment file")->required();
  transform_cmd->add_option("aux", aux, "Map file (rename) or environment file (subst)");
  transform_cmd->add_option("--semiring", semiring, "Override the file's semiring");
  transform_cmd->add_flag("--json", json, "Print derivations as JSON");

  auto* translate_cmd = app.add_subcommand("translate", "Translate between lambda-R, DILL and PD");
  translate_cmd->add_option("direction", direction, "dill2lr | lr2dill | pd2lr | lr2pd")
      ->required();
  translate_cmd->add_option("file", file, "Input file")->required();
  translate_cmd->add_flag("--json", json, "Print lambda-R derivations as JSON");

  auto* laws_cmd = app.add_subcommand("laws", "Audit the skew-semiring laws of an instance");
  laws_cmd->add_option("--semiring", semiring, "Instance to audit")->required();
  laws_cmd->add_option("--budget", budget, "Random samples for infinite instances");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (check_cmd->parsed())
      return cmd_check(file, semiring, annotated ? Mode::Annotated : Mode::Infer, json, out);
    if (validate_cmd->parsed()) return cmd_validate(file, semiring, out, err);
    if (transform_cmd->parsed())
      return cmd_transform(op, file, aux, semiring, json, out, err);
    if (translate_cmd->parsed()) return cmd_translate(direction, file, json, out, err);
    if (laws_cmd->parsed()) return cmd_laws(semiring, budget, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << e.report() << "\n";
    return exit_code(e);
  }
  return 2;
}

}  // namespace lr::cli
