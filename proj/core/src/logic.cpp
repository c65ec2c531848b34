#include "lr/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "lr/error.hpp"
#include "lr/parse.hpp"

namespace lr {

FormulaPtr formula(int op, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr atom(std::string name) {
  auto f = std::make_shared<Formula>();
  f->op = kAtom;
  f->name = std::move(name);
  return f;
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->op != b->op || a->name != b->name) return false;
  return same_formula(a->left, b->left) && same_formula(a->right, b->right);
}

namespace {

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class FormulaParser {
 public:
  FormulaParser(const FormulaSyntax& syn, std::string_view text,
                const std::vector<std::string>& atoms)
      : syn_(syn), text_(text), atoms_(atoms) {
    for (const auto& [s, op] : syn.prefix) symbols_.push_back(s);
    for (const auto& [s, op] : syn.binary) symbols_.push_back(s);
    symbols_.push_back("(");
    symbols_.push_back(")");
    // Longest spelling first so "-o" wins over a hypothetical "-".
    std::sort(symbols_.begin(), symbols_.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    lex();
  }

  FormulaPtr parse() {
    FormulaPtr f = binary(0);
    if (pos_ != toks_.size()) error("unexpected '" + toks_[pos_] + "'");
    return f;
  }

 private:
  void lex() {
    std::size_t i = 0;
    while (i < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[i]))) {
        ++i;
        continue;
      }
      if (word_char(text_[i])) {
        std::size_t j = i;
        while (j < text_.size() && word_char(text_[j])) ++j;
        toks_.emplace_back(text_.substr(i, j - i));
        i = j;
        continue;
      }
      bool matched = false;
      for (const auto& s : symbols_) {
        if (text_.substr(i, s.size()) == s) {
          toks_.push_back(s);
          i += s.size();
          matched = true;
          break;
        }
      }
      if (!matched)
        fail(ErrorKind::ParseError, "unexpected character '" + std::string(1, text_[i]) +
                                        "' in formula '" + std::string(text_) + "'");
    }
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorKind::ParseError, msg + " in formula '" + std::string(text_) + "'");
  }

  bool accept(const std::string& s) {
    if (pos_ < toks_.size() && toks_[pos_] == s) {
      ++pos_;
      return true;
    }
    return false;
  }

  FormulaPtr binary(std::size_t level) {
    if (level == syn_.binary.size()) return unary();
    FormulaPtr l = binary(level + 1);
    if (accept(syn_.binary[level].first))
      return formula(syn_.binary[level].second, l, binary(level));
    return l;
  }

  FormulaPtr unary() {
    for (const auto& [s, op] : syn_.prefix)
      if (accept(s)) return formula(op, unary());
    if (accept("(")) {
      FormulaPtr f = binary(0);
      if (!accept(")")) error("expected ')'");
      return f;
    }
    if (pos_ == toks_.size()) error("expected a formula");
    const std::string& t = toks_[pos_];
    if (!word_char(t[0])) error("unexpected '" + t + "'");
    ++pos_;
    for (const auto& [s, op] : syn_.constants)
      if (s == t) return formula(op);
    if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_')
      error("'" + t + "' is not a base type");
    if (!atoms_.empty() && std::find(atoms_.begin(), atoms_.end(), t) == atoms_.end())
      error("undeclared base type '" + t + "'");
    return atom(t);
  }

  const FormulaSyntax& syn_;
  std::string_view text_;
  const std::vector<std::string>& atoms_;
  std::vector<std::string> symbols_;
  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
};

// Binding strength: binary operator i sits at level i, prefix forms and
// atoms above every binary operator.
std::size_t level_of(const FormulaSyntax& syn, const Formula& f) {
  for (std::size_t i = 0; i < syn.binary.size(); ++i)
    if (syn.binary[i].second == f.op) return i;
  return syn.binary.size();
}

void print_into(const FormulaSyntax& syn, const Formula& f, std::size_t min_level,
                std::string& out) {
  const std::size_t lvl = level_of(syn, f);
  const bool parens = lvl < min_level;
  if (parens) out += '(';
  if (f.op == kAtom) {
    out += f.name;
  } else if (lvl < syn.binary.size()) {
    print_into(syn, *f.left, lvl + 1, out);
    out += ' ' + syn.binary[lvl].first + ' ';
    print_into(syn, *f.right, lvl, out);
  } else {
    bool done = false;
    for (const auto& [s, op] : syn.prefix)
      if (op == f.op) {
        out += s;
        print_into(syn, *f.left, syn.binary.size(), out);
        done = true;
      }
    for (const auto& [s, op] : syn.constants)
      if (!done && op == f.op) {
        out += s;
        done = true;
      }
    if (!done) fail(ErrorKind::Defect, "formula with unknown connective " + std::to_string(f.op));
  }
  if (parens) out += ')';
}

}  // namespace

FormulaPtr parse_formula(const FormulaSyntax& syn, std::string_view text,
                         const std::vector<std::string>& atoms) {
  return FormulaParser(syn, text, atoms).parse();
}

std::string print_formula(const FormulaSyntax& syn, const FormulaPtr& f) {
  std::string out;
  print_into(syn, *f, 0, out);
  return out;
}

bool same_zone(const Zone& a, const Zone& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const Hyp& x, const Hyp& y) {
    return x.name == y.name && same_formula(x.type, y.type);
  });
}

bool same_sequent(const Sequent& a, const Sequent& b) {
  return same_zone(a.gamma, b.gamma) && same_zone(a.delta, b.delta) &&
         same_formula(a.goal, b.goal);
}

void require_distinct_names(const Sequent& s) {
  std::set<std::string> seen;
  for (const Zone* z : {&s.gamma, &s.delta})
    for (const Hyp& h : *z)
      if (!seen.insert(h.name).second)
        fail(ErrorKind::ScopeError, "hypothesis name '" + h.name + "' occurs twice");
}

namespace {

Zone parse_zone(const FormulaSyntax& syn, std::string_view text,
                const std::vector<std::string>& atoms) {
  Zone z;
  for (const std::string& item : split_top(text, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      fail(ErrorKind::ParseError, "hypothesis '" + item + "' lacks ':'");
    std::string name = trim(std::string_view(item).substr(0, colon));
    if (name.empty() || !std::all_of(name.begin(), name.end(), word_char))
      fail(ErrorKind::ParseError, "bad hypothesis name '" + name + "'");
    z.push_back({name, parse_formula(syn, std::string_view(item).substr(colon + 1), atoms)});
  }
  return z;
}

std::string print_zone(const FormulaSyntax& syn, const Zone& z) {
  std::string out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) out += ", ";
    out += z[i].name + ":" + print_formula(syn, z[i].type);
  }
  return out;
}

}  // namespace

Sequent parse_sequent(const SequentSyntax& syn, std::string_view text,
                      const std::vector<std::string>& atoms) {
  auto turn = text.find("|-");
  if (turn == std::string_view::npos) fail(ErrorKind::ParseError, "sequent lacks '|-'");
  std::string_view zones = text.substr(0, turn);
  std::string goal = trim(text.substr(turn + 2));
  if (!syn.suffix.empty()) {
    if (goal.size() < syn.suffix.size() ||
        goal.compare(goal.size() - syn.suffix.size(), syn.suffix.size(), syn.suffix) != 0)
      fail(ErrorKind::ParseError, "sequent goal must end with '" + syn.suffix + "'");
    goal = trim(std::string_view(goal).substr(0, goal.size() - syn.suffix.size()));
  }
  auto sep = zones.find(syn.separator);
  if (sep == std::string_view::npos)
    fail(ErrorKind::ParseError, "sequent lacks the zone separator '" + syn.separator + "'");
  Sequent s;
  s.gamma = parse_zone(*syn.formulas, zones.substr(0, sep), atoms);
  s.delta = parse_zone(*syn.formulas, zones.substr(sep + syn.separator.size()), atoms);
  s.goal = parse_formula(*syn.formulas, goal, atoms);
  require_distinct_names(s);
  return s;
}

std::string print_sequent(const SequentSyntax& syn, const Sequent& s) {
  std::string g = print_zone(*syn.formulas, s.gamma);
  std::string d = print_zone(*syn.formulas, s.delta);
  std::string out = g.empty() ? syn.separator : g + " " + syn.separator;
  if (!d.empty()) out += " " + d;
  out += " |- " + print_formula(*syn.formulas, s.goal);
  if (!syn.suffix.empty()) out += " " + syn.suffix;
  return out;
}

namespace {

struct ScriptLine {
  std::size_t indent;
  std::string text;
  std::size_t line;
};

ScriptNode parse_script_line(const ScriptLine& l) {
  ScriptNode node;
  node.line = l.line;
  const std::string& s = l.text;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto error = [&](const std::string& msg) {
    fail(ErrorKind::ParseError, "line " + std::to_string(l.line) + ": " + msg);
  };
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) node.rule += s[i++];
  for (skip_space(); i < s.size(); skip_space()) {
    std::size_t eq = s.find('=', i);
    if (eq == std::string::npos) error("expected key=value in '" + s + "'");
    std::string key = s.substr(i, eq - i);
    if (key.empty() || !std::all_of(key.begin(), key.end(), word_char))
      error("bad parameter name '" + key + "'");
    i = eq + 1;
    std::string value;
    if (i < s.size() && s[i] == '{') {
      int depth = 0;
      std::size_t start = i + 1;
      for (; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        if (s[i] == '}' && --depth == 0) break;
      }
      if (i == s.size()) error("unbalanced '{' in parameter '" + key + "'");
      value = trim(std::string_view(s).substr(start, i - start));
      ++i;
    } else {
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) value += s[i++];
    }
    if (!node.params.emplace(key, value).second) error("parameter '" + key + "' given twice");
  }
  return node;
}

ScriptNode build(const std::vector<ScriptLine>& lines, std::size_t& pos) {
  const std::size_t indent = lines[pos].indent;
  ScriptNode node = parse_script_line(lines[pos++]);
  if (pos < lines.size() && lines[pos].indent > indent) {
    const std::size_t child_indent = lines[pos].indent;
    while (pos < lines.size() && lines[pos].indent > indent) {
      if (lines[pos].indent != child_indent)
        fail(ErrorKind::ParseError, "line " + std::to_string(lines[pos].line) +
                                        ": inconsistent indentation among premises");
      node.kids.push_back(build(lines, pos));
    }
  }
  return node;
}

}  // namespace

ScriptNode parse_script(const std::vector<std::string>& raw, std::size_t first_line) {
  std::vector<ScriptLine> lines;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const std::string& r = raw[k];
    std::size_t ind = 0;
    while (ind < r.size() && (r[ind] == ' ' || r[ind] == '\t')) ++ind;
    if (ind == r.size()) continue;
    lines.push_back({ind, trim(r), first_line + k});
  }
  if (lines.empty()) fail(ErrorKind::ParseError, "empty proof script");
  std::size_t pos = 0;
  ScriptNode root = build(lines, pos);
  if (pos != lines.size())
    fail(ErrorKind::ParseError, "line " + std::to_string(lines[pos].line) +
                                    ": proof script has more than one root");
  return root;
}

std::string print_script(const ScriptNode& node, std::size_t indent) {
  std::string out(indent, ' ');
  out += node.rule;
  for (const auto& [k, v] : node.params) {
    bool plain = !v.empty() && std::none_of(v.begin(), v.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c)) || c == '{' || c == '}';
    });
    out += " " + k + "=" + (plain ? v : "{" + v + "}");
  }
  out += '\n';
  for (const auto& k : node.kids) out += print_script(k, indent + 2);
  return out;
}

std::vector<std::string> param_list(const ScriptNode& node, const std::string& key) {
  auto it = node.params.find(key);
  if (it == node.params.end()) return {};
  return split_top(it->second, ',');
}

ProofFile parse_proof_file(std::string_view text) {
  ProofFile file;
  for (const Stanza& st : split_stanzas(text)) {
    std::size_t k = 0;
    // Header lines may share the first stanza.
    for (; k < st.lines.size(); ++k) {
      std::string line = trim(st.lines[k]);
      if (line.rfind("logic ", 0) == 0) {
        file.logic = trim(std::string_view(line).substr(6));
      } else if (line.rfind("base ", 0) == 0) {
        for (auto& b : split_top(std::string_view(line).substr(5), ','))
          if (!b.empty()) file.bases.push_back(b);
      } else {
        break;
      }
    }
    if (k == st.lines.size()) continue;
    ProofStanza ps;
    ps.line = st.line + k;
    ps.sequent = trim(st.lines[k]);
    ps.script.assign(st.lines.begin() + static_cast<std::ptrdiff_t>(k) + 1, st.lines.end());
    if (ps.script.empty())
      fail(ErrorKind::ParseError,
           "line " + std::to_string(ps.line) + ": sequent without a proof script");
    file.stanzas.push_back(std::move(ps));
  }
  if (file.logic.empty()) fail(ErrorKind::ParseError, "proof file lacks a 'logic' header");
  return file;
}

}  // namespace lr
