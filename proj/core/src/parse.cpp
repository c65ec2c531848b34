#include "lr/parse.hpp"

#include <algorithm>
#include <cctype>

#include "lr/error.hpp"

namespace lr {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (trim(s).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{' || c == '<') ++depth;
    if (c == ')' || c == ']' || c == '}' || (c == '>' && depth > 0 && (i == 0 || s[i - 1] != '-')))
      --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::vector<Stanza> split_stanzas(std::string_view text) {
  std::vector<Stanza> out;
  Stanza cur;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto flush = [&] {
    if (!cur.lines.empty()) out.push_back(std::move(cur));
    cur = Stanza{};
  };
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++line_no;
    std::string t = trim(raw);
    if (t.empty()) {
      flush();
    } else if (t[0] != '#') {
      if (cur.lines.empty()) cur.line = line_no;
      cur.lines.emplace_back(raw);
    }
    pos = nl + 1;
  }
  flush();
  return out;
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t col = 0;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.col = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Number;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else {
      t.kind = Tok::Punct;
      std::string_view two = s.substr(i, 2);
      if (two == "-o" || two == "->" || two == "|-") {
        t.text = std::string(two);
        i += 2;
      } else if (std::string_view("\\.:,(){}<>|!@;=[]+&*#").find(c) != std::string_view::npos) {
        t.text = std::string(1, c);
        ++i;
      } else {
        fail(ErrorKind::ParseError,
             "column " + std::to_string(i + 1) + ": unexpected character '" + c + "'");
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.col = s.size() + 1;
  out.push_back(end);
  return out;
}

const char* const kKeywords[] = {"let", "in", "case", "of", "inl", "inr", "absurd", "I", "Top"};

bool is_keyword(const std::string& s) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), s) != std::end(kKeywords);
}

class Parser {
 public:
  Parser(const Semiring& sr, std::string_view text, const std::vector<std::string>& bases)
      : sr_(sr), toks_(lex(text)), bases_(bases) {}

  // Types.
  TyPtr type() {
    TyPtr a = sum_type();
    if (accept("-o")) return ty::fun(a, type());
    return a;
  }

  // Terms.
  TermPtr term(std::vector<std::string>& scope) {
    if (peek_ident("let")) return let_term(scope);
    if (peek_ident("case")) return case_term(scope);
    if (accept("\\")) {
      std::string x = ident("binder name");
      expect(":");
      TyPtr a = type();
      expect(".");
      scope.push_back(x);
      TermPtr body = term(scope);
      scope.pop_back();
      return tm::lam(x, a, body);
    }
    return app_term(scope);
  }

  UsageCtx vector() {
    expect("(");
    std::vector<Usage> out;
    if (!accept(")")) {
      do out.push_back(usage()); while (accept(","));
      expect(")");
    }
    return UsageCtx(std::move(out));
  }

  std::pair<TyCtx, UsageCtx> context() {
    TyCtx ctx;
    UsageCtx usage_ctx;
    if (at_end() || peek("|-")) return {ctx, usage_ctx};
    do {
      std::string x = ident("variable name");
      expect(":");
      usage_ctx.push_back(usage());
      ctx.push_back({x, type()});
    } while (accept(","));
    return {ctx, usage_ctx};
  }

  Judgment judgment() {
    Judgment j;
    std::tie(j.ctx, j.usage) = context();
    expect("|-");
    std::vector<std::string> scope = names_of(j.ctx);
    j.term = term(scope);
    expect(":");
    j.type = type();
    return j;
  }

  void finish() {
    if (!at_end()) error("unexpected '" + cur().text + "'");
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at_end() const { return cur().kind == Tok::End; }
  bool peek(std::string_view p) const { return cur().kind == Tok::Punct && cur().text == p; }
  bool peek_ident(std::string_view p) const {
    return cur().kind == Tok::Ident && cur().text == p;
  }
  bool accept(std::string_view p) {
    if (!peek(p)) return false;
    ++pos_;
    return true;
  }
  bool accept_ident(std::string_view p) {
    if (!peek_ident(p)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) error("expected '" + std::string(p) + "'");
  }
  void expect_ident(std::string_view p) {
    if (!accept_ident(p)) error("expected '" + std::string(p) + "'");
  }
  [[noreturn]] void error(const std::string& msg) const {
    std::string found = at_end() ? "end of input" : "'" + cur().text + "'";
    fail(ErrorKind::ParseError,
         "column " + std::to_string(cur().col) + ": " + msg + " (found " + found + ")");
  }
  std::string ident(const char* what) {
    if (cur().kind != Tok::Ident || is_keyword(cur().text)) error(std::string("expected ") + what);
    return toks_[pos_++].text;
  }

  Usage usage() {
    const Token& t = cur();
    if (t.kind == Tok::End) error("expected a usage");
    auto u = sr_.parse(t.text);
    if (!u) error("'" + t.text + "' is not a usage of " + std::string(sr_.name()));
    ++pos_;
    return *u;
  }

  TyPtr sum_type() {
    TyPtr a = with_type();
    if (accept("+")) return ty::sum(a, sum_type());
    return a;
  }
  TyPtr with_type() {
    TyPtr a = tensor_type();
    if (accept("&")) return ty::with(a, with_type());
    return a;
  }
  TyPtr tensor_type() {
    TyPtr a = prefix_type();
    if (accept("*")) return ty::tensor(a, tensor_type());
    return a;
  }
  TyPtr prefix_type() {
    if (accept("!")) {
      expect("[");
      Usage r = usage();
      expect("]");
      return ty::bang(r, prefix_type());
    }
    if (accept("(")) {
      TyPtr a = type();
      expect(")");
      return a;
    }
    if (accept_ident("I")) return ty::one();
    if (accept_ident("Top")) return ty::top();
    if (cur().kind == Tok::Number && cur().text == "0") {
      ++pos_;
      return ty::zero();
    }
    if (cur().kind == Tok::Ident && !is_keyword(cur().text)) {
      std::string n = cur().text;
      if (!bases_.empty() && std::find(bases_.begin(), bases_.end(), n) == bases_.end())
        error("undeclared base type '" + n + "'");
      ++pos_;
      return ty::base(n);
    }
    error("expected a type");
  }

  std::optional<std::pair<UsageCtx, std::optional<UsageCtx>>> annotation() {
    if (!accept("@")) return std::nullopt;
    expect("{");
    UsageCtx p = vector();
    std::optional<UsageCtx> q;
    if (accept(";")) q = vector();
    expect("}");
    return std::make_pair(p, q);
  }

  TermPtr annotate(TermPtr t) {
    if (auto a = annotation()) return tm::with_split(t, a->first, a->second);
    return t;
  }

  TermPtr let_term(std::vector<std::string>& scope) {
    expect_ident("let");
    auto ann = annotation();
    TermPtr out;
    if (accept("!")) {
      std::string x = ident("binder name");
      expect("=");
      TermPtr s = term(scope);
      expect_ident("in");
      scope.push_back(x);
      TermPtr body = term(scope);
      scope.pop_back();
      out = tm::bang_elim(s, x, body);
    } else {
      expect("(");
      if (accept(")")) {
        expect("=");
        TermPtr s = term(scope);
        expect_ident("in");
        out = tm::unit_elim(s, term(scope));
      } else {
        std::string x = ident("binder name");
        expect(",");
        std::string y = ident("binder name");
        expect(")");
        expect("=");
        TermPtr s = term(scope);
        expect_ident("in");
        scope.push_back(x);
        scope.push_back(y);
        TermPtr body = term(scope);
        scope.resize(scope.size() - 2);
        out = tm::pair_elim(s, x, y, body);
      }
    }
    if (ann) out = tm::with_split(out, ann->first, ann->second);
    return out;
  }

  TermPtr case_term(std::vector<std::string>& scope) {
    expect_ident("case");
    auto ann = annotation();
    TermPtr s = term(scope);
    expect_ident("of");
    expect("{");
    expect_ident("inl");
    std::string x = ident("binder name");
    expect("->");
    scope.push_back(x);
    TermPtr l = term(scope);
    scope.pop_back();
    expect("|");
    expect_ident("inr");
    std::string y = ident("binder name");
    expect("->");
    scope.push_back(y);
    TermPtr r = term(scope);
    scope.pop_back();
    expect("}");
    TermPtr out = tm::case_of(s, x, l, y, r);
    if (ann) out = tm::with_split(out, ann->first, ann->second);
    return out;
  }

  bool atom_start() const {
    if (peek("(") || peek("<")) return true;
    return cur().kind == Tok::Ident && !is_keyword(cur().text);
  }

  TermPtr app_term(std::vector<std::string>& scope) {
    TermPtr head = prefix_term(scope);
    while (atom_start()) {
      TermPtr arg = postfix_term(scope);
      head = annotate(tm::app(head, arg));
    }
    return head;
  }

  TermPtr prefix_term(std::vector<std::string>& scope) {
    if (accept_ident("inl")) return tm::inl(app_term(scope));
    if (accept_ident("inr")) return tm::inr(app_term(scope));
    if (accept_ident("absurd")) {
      auto ann = annotation();
      TermPtr out = tm::absurd(app_term(scope));
      if (ann) out = tm::with_split(out, ann->first, ann->second);
      return out;
    }
    if (accept("!")) {
      Usage r = usage();
      auto ann = annotation();
      TermPtr out = tm::bang(r, app_term(scope));
      if (ann) {
        if (ann->second) error("a ! introduction takes a single annotation vector");
        out = tm::with_split(out, ann->first, std::nullopt);
      }
      return out;
    }
    return postfix_term(scope);
  }

  TermPtr postfix_term(std::vector<std::string>& scope) {
    TermPtr t = atom(scope);
    while (peek(".")) {
      ++pos_;
      if (cur().kind != Tok::Number || (cur().text != "1" && cur().text != "2"))
        error("expected projection .1 or .2");
      t = cur().text == "1" ? tm::proj1(t) : tm::proj2(t);
      ++pos_;
    }
    return t;
  }

  TermPtr atom(std::vector<std::string>& scope) {
    if (accept("<")) {
      if (accept(">")) return tm::eat();
      TermPtr l = term(scope);
      expect(",");
      TermPtr r = term(scope);
      expect(">");
      return tm::with_pair(l, r);
    }
    if (accept("(")) {
      if (accept(")")) return tm::unit();
      TermPtr a = term(scope);
      if (accept(",")) {
        TermPtr b = term(scope);
        expect(")");
        return annotate(tm::pair(a, b));
      }
      if (accept(":")) {
        TyPtr c = type();
        expect(")");
        if (!has_result_ascription(a->kind))
          error("only eliminators, injections and <> take a type ascription");
        return tm::with_type(a, c);
      }
      expect(")");
      return a;
    }
    if (cur().kind == Tok::Ident && !is_keyword(cur().text)) {
      const std::string& n = cur().text;
      for (std::size_t k = scope.size(); k-- > 0;) {
        if (scope[k] == n) {
          ++pos_;
          return tm::var(scope.size() - 1 - k);
        }
      }
      fail(ErrorKind::ScopeError,
           "column " + std::to_string(cur().col) + ": unbound variable '" + n + "'");
    }
    error("expected a term");
  }

  const Semiring& sr_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& bases_;
};

}  // namespace

TyPtr parse_type(const Semiring& sr, std::string_view text, const std::vector<std::string>& bases) {
  Parser p(sr, text, bases);
  TyPtr t = p.type();
  p.finish();
  return t;
}

TermPtr parse_term(const Semiring& sr, std::string_view text, const std::vector<std::string>& scope,
                   const std::vector<std::string>& bases) {
  Parser p(sr, text, bases);
  std::vector<std::string> s = scope;
  TermPtr t = p.term(s);
  p.finish();
  return t;
}

UsageCtx parse_usage(const Semiring& sr, std::string_view text) {
  static const std::vector<std::string> none;
  Parser p(sr, text, none);
  UsageCtx v = p.vector();
  p.finish();
  return v;
}

std::pair<TyCtx, UsageCtx> parse_context(const Semiring& sr, std::string_view text,
                                         const std::vector<std::string>& bases) {
  Parser p(sr, text, bases);
  auto out = p.context();
  p.finish();
  return out;
}

Judgment parse_judgment(const Semiring& sr, std::string_view text,
                        const std::vector<std::string>& bases) {
  Parser p(sr, text, bases);
  Judgment j = p.judgment();
  p.finish();
  return j;
}

namespace {

bool starts_with_word(const std::string& line, std::string_view word) {
  return line.size() > word.size() && line.compare(0, word.size(), word) == 0 &&
         std::isspace(static_cast<unsigned char>(line[word.size()]));
}

}  // namespace

JudgmentFile parse_judgment_file(std::string_view text, const Semiring* fallback,
                                 const Semiring* override) {
  JudgmentFile file;
  file.semiring = override;
  struct Pending {
    std::string text;
    std::size_t line;
  };
  std::vector<Pending> pending;
  for (const Stanza& st : split_stanzas(text)) {
    std::string body;
    std::size_t body_line = 0;
    for (std::size_t i = 0; i < st.lines.size(); ++i) {
      std::string line = trim(st.lines[i]);
      if (starts_with_word(line, "semiring")) {
        const Semiring& named = semiring_by_name(trim(line.substr(8)));
        if (!file.semiring) file.semiring = &named;
      } else if (starts_with_word(line, "base")) {
        for (auto& b : split_top(line.substr(4), ',')) {
          if (b.empty()) continue;
          file.bases.push_back(b);
        }
      } else {
        if (body.empty()) body_line = st.line + i;
        body += (body.empty() ? "" : " ") + line;
      }
    }
    if (!body.empty()) pending.push_back({body, body_line});
  }
  if (!file.semiring) file.semiring = fallback;
  if (!file.semiring)
    fail(ErrorKind::ParseError, "no semiring: add a 'semiring NAME' header or pass --semiring");
  for (const auto& p : pending) {
    try {
      Judgment j = parse_judgment(*file.semiring, p.text, file.bases);
      j.line = p.line;
      file.judgments.push_back(std::move(j));
    } catch (const Error& e) {
      fail(e.kind(), "line " + std::to_string(p.line) + ": " + e.detail());
    }
  }
  return file;
}

std::string print_context(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage) {
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].name + " :" + sr.print(usage[i]) + " " + print(sr, *ctx[i].type);
  }
  return out;
}

std::string print(const Semiring& sr, const Judgment& j) {
  TyCtx ctx = freshen_names(j.ctx);
  std::string c = print_context(sr, ctx, j.usage);
  return (c.empty() ? "" : c + " ") + "|- " + print(sr, *j.term, names_of(ctx)) + " : " +
         print(sr, *j.type);
}

std::string print(const Semiring& sr, const JudgmentFile& file) {
  std::string out = "semiring " + std::string(sr.name()) + "\n";
  if (!file.bases.empty()) {
    out += "base ";
    for (std::size_t i = 0; i < file.bases.size(); ++i)
      out += (i ? ", " : "") + file.bases[i];
    out += "\n";
  }
  for (const auto& j : file.judgments) out += "\n" + print(sr, j) + "\n";
  return out;
}

}  // namespace lr
