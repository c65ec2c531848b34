#include "lr/syntax.hpp"

#include <algorithm>

#include "lr/error.hpp"

namespace lr {

namespace ty {

namespace {
TyPtr make(TyKind kind, TyPtr a = nullptr, TyPtr b = nullptr) {
  auto t = std::make_shared<Ty>();
  t->kind = kind;
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}
}  // namespace

TyPtr base(std::string name) {
  auto t = std::make_shared<Ty>();
  t->kind = TyKind::Base;
  t->name = std::move(name);
  return t;
}
TyPtr fun(TyPtr a, TyPtr b) { return make(TyKind::Fun, std::move(a), std::move(b)); }
TyPtr one() { return make(TyKind::One); }
TyPtr tensor(TyPtr a, TyPtr b) { return make(TyKind::Tensor, std::move(a), std::move(b)); }
TyPtr zero() { return make(TyKind::Zero); }
TyPtr sum(TyPtr a, TyPtr b) { return make(TyKind::Sum, std::move(a), std::move(b)); }
TyPtr top() { return make(TyKind::Top); }
TyPtr with(TyPtr a, TyPtr b) { return make(TyKind::With, std::move(a), std::move(b)); }
TyPtr bang(Usage r, TyPtr a) {
  auto t = std::make_shared<Ty>();
  t->kind = TyKind::Bang;
  t->grade = r;
  t->left = std::move(a);
  return t;
}

}  // namespace ty

bool same_type(const Ty& a, const Ty& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TyKind::Base: return a.name == b.name;
    case TyKind::One:
    case TyKind::Zero:
    case TyKind::Top: return true;
    case TyKind::Bang: return a.grade == b.grade && same_type(*a.left, *b.left);
    default: return same_type(*a.left, *b.left) && same_type(*a.right, *b.right);
  }
}

bool same_type(const TyPtr& a, const TyPtr& b) {
  if (!a || !b) return !a && !b;
  return same_type(*a, *b);
}

namespace {

// Binding strength: -o 0, + 1, & 2, * 3, ! 4, atoms 5.
int type_level(TyKind k) {
  switch (k) {
    case TyKind::Fun: return 0;
    case TyKind::Sum: return 1;
    case TyKind::With: return 2;
    case TyKind::Tensor: return 3;
    case TyKind::Bang: return 4;
    default: return 5;
  }
}

std::string print_type(const Semiring& sr, const Ty& t, int ctx_level) {
  std::string out;
  const int lvl = type_level(t.kind);
  auto binary = [&](const char* op) {
    return print_type(sr, *t.left, lvl + 1) + " " + op + " " + print_type(sr, *t.right, lvl);
  };
  switch (t.kind) {
    case TyKind::Base: out = t.name; break;
    case TyKind::One: out = "I"; break;
    case TyKind::Zero: out = "0"; break;
    case TyKind::Top: out = "Top"; break;
    case TyKind::Fun: out = binary("-o"); break;
    case TyKind::Sum: out = binary("+"); break;
    case TyKind::With: out = binary("&"); break;
    case TyKind::Tensor: out = binary("*"); break;
    case TyKind::Bang: out = "![" + sr.print(t.grade) + "] " + print_type(sr, *t.left, lvl); break;
  }
  if (lvl < ctx_level) return "(" + out + ")";
  return out;
}

}  // namespace

std::string print(const Semiring& sr, const Ty& t) { return print_type(sr, t, 0); }

void collect_grades(const Ty& t, std::vector<Usage>& out) {
  if (t.kind == TyKind::Bang) out.push_back(t.grade);
  if (t.left) collect_grades(*t.left, out);
  if (t.right) collect_grades(*t.right, out);
}

TyCtx concat(const TyCtx& a, const TyCtx& b) {
  TyCtx out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::size_t position_of(std::size_t n, std::size_t index) {
  if (index >= n)
    fail(ErrorKind::ScopeError, "variable #" + std::to_string(index) +
                                    " is not bound in a context of length " + std::to_string(n));
  return n - 1 - index;
}

namespace {

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
  if (base.empty()) base = "x";
  if (std::find(taken.begin(), taken.end(), base) == taken.end()) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (std::find(taken.begin(), taken.end(), candidate) == taken.end()) return candidate;
  }
}

}  // namespace

TyCtx freshen_names(const TyCtx& ctx) {
  TyCtx out;
  std::vector<std::string> taken;
  for (const auto& b : ctx) {
    std::string n = fresh_name(b.name, taken);
    taken.push_back(n);
    out.push_back({n, b.type});
  }
  return out;
}

namespace tm {

namespace {
std::shared_ptr<Term> node(TermKind kind, std::vector<TermPtr> kids = {}) {
  auto t = std::make_shared<Term>();
  t->kind = kind;
  t->kids = std::move(kids);
  return t;
}
}  // namespace

TermPtr var(std::size_t index) {
  auto t = node(TermKind::Var);
  t->index = index;
  return t;
}
TermPtr lam(std::string name, TyPtr arg, TermPtr body) {
  auto t = node(TermKind::Lam, {std::move(body)});
  t->type = std::move(arg);
  t->binders = {std::move(name)};
  return t;
}
TermPtr app(TermPtr f, TermPtr a) { return node(TermKind::App, {std::move(f), std::move(a)}); }
TermPtr unit() { return node(TermKind::UnitI); }
TermPtr unit_elim(TermPtr scrut, TermPtr body, TyPtr result) {
  auto t = node(TermKind::UnitE, {std::move(scrut), std::move(body)});
  t->type = std::move(result);
  return t;
}
TermPtr pair(TermPtr l, TermPtr r) { return node(TermKind::Pair, {std::move(l), std::move(r)}); }
TermPtr pair_elim(TermPtr scrut, std::string x, std::string y, TermPtr body, TyPtr result) {
  auto t = node(TermKind::PairE, {std::move(scrut), std::move(body)});
  t->type = std::move(result);
  t->binders = {std::move(x), std::move(y)};
  return t;
}
TermPtr absurd(TermPtr scrut, TyPtr result) {
  auto t = node(TermKind::ExF, {std::move(scrut)});
  t->type = std::move(result);
  return t;
}
TermPtr inl(TermPtr t) { return node(TermKind::InjL, {std::move(t)}); }
TermPtr inr(TermPtr t) { return node(TermKind::InjR, {std::move(t)}); }
TermPtr case_of(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right,
                TyPtr result) {
  auto t = node(TermKind::Case, {std::move(scrut), std::move(left), std::move(right)});
  t->type = std::move(result);
  t->binders = {std::move(x), std::move(y)};
  return t;
}
TermPtr eat() { return node(TermKind::Eat); }
TermPtr proj1(TermPtr t) { return node(TermKind::ProjL, {std::move(t)}); }
TermPtr proj2(TermPtr t) { return node(TermKind::ProjR, {std::move(t)}); }
TermPtr with_pair(TermPtr l, TermPtr r) {
  return node(TermKind::WithI, {std::move(l), std::move(r)});
}
TermPtr bang(Usage r, TermPtr t) {
  auto n = node(TermKind::BangI, {std::move(t)});
  n->grade = r;
  return n;
}
TermPtr bang_elim(TermPtr scrut, std::string x, TermPtr body, TyPtr result) {
  auto t = node(TermKind::BangE, {std::move(scrut), std::move(body)});
  t->type = std::move(result);
  t->binders = {std::move(x)};
  return t;
}

TermPtr with_split(const TermPtr& t, std::optional<UsageCtx> p, std::optional<UsageCtx> q) {
  auto out = std::make_shared<Term>(*t);
  out->split_p = std::move(p);
  out->split_q = std::move(q);
  return out;
}

TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids) {
  auto out = std::make_shared<Term>(*t);
  out->kids = std::move(kids);
  return out;
}

TermPtr with_type(const TermPtr& t, TyPtr type) {
  auto out = std::make_shared<Term>(*t);
  out->type = std::move(type);
  return out;
}

}  // namespace tm

std::string_view kind_name(TermKind kind) {
  switch (kind) {
    case TermKind::Var: return "var";
    case TermKind::Lam: return "-o-I";
    case TermKind::App: return "-o-E";
    case TermKind::UnitI: return "I-I";
    case TermKind::UnitE: return "I-E";
    case TermKind::Pair: return "*-I";
    case TermKind::PairE: return "*-E";
    case TermKind::ExF: return "0-E";
    case TermKind::InjL: return "+-Il";
    case TermKind::InjR: return "+-Ir";
    case TermKind::Case: return "+-E";
    case TermKind::Eat: return "Top-I";
    case TermKind::ProjL: return "&-El";
    case TermKind::ProjR: return "&-Er";
    case TermKind::WithI: return "&-I";
    case TermKind::BangI: return "!-I";
    case TermKind::BangE: return "!-E";
  }
  return "?";
}

bool has_two_split(TermKind kind) {
  switch (kind) {
    case TermKind::App:
    case TermKind::UnitE:
    case TermKind::Pair:
    case TermKind::PairE:
    case TermKind::ExF:
    case TermKind::Case:
    case TermKind::BangE: return true;
    default: return false;
  }
}

std::size_t binder_count(TermKind kind, std::size_t child) {
  switch (kind) {
    case TermKind::Lam: return 1;
    case TermKind::PairE: return child == 1 ? 2 : 0;
    case TermKind::Case: return child == 0 ? 0 : 1;
    case TermKind::BangE: return child == 1 ? 1 : 0;
    default: return 0;
  }
}

bool has_result_ascription(TermKind kind) {
  switch (kind) {
    case TermKind::InjL:
    case TermKind::InjR:
    case TermKind::Eat:
    case TermKind::UnitE:
    case TermKind::PairE:
    case TermKind::ExF:
    case TermKind::Case:
    case TermKind::BangE: return true;
    default: return false;
  }
}

namespace {

TermPtr erase_impl(const TermPtr& t, bool ascriptions) {
  auto out = std::make_shared<Term>(*t);
  out->split_p.reset();
  out->split_q.reset();
  if (ascriptions && has_result_ascription(t->kind)) out->type.reset();
  for (auto& k : out->kids) k = erase_impl(k, ascriptions);
  return out;
}

}  // namespace

TermPtr erase(const TermPtr& t) { return erase_impl(t, false); }
TermPtr erase_all(const TermPtr& t) { return erase_impl(t, true); }

bool same_term(const Term& a, const Term& b, bool compare_annotations) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == TermKind::Var && a.index != b.index) return false;
  if (a.kind == TermKind::BangI && a.grade != b.grade) return false;
  if (a.kind == TermKind::Lam && !same_type(a.type, b.type)) return false;
  if (compare_annotations) {
    if (a.split_p != b.split_p || a.split_q != b.split_q) return false;
    if (has_result_ascription(a.kind) && !same_type(a.type, b.type)) return false;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!same_term(*a.kids[i], *b.kids[i], compare_annotations)) return false;
  return true;
}

std::size_t term_depth(const Term& t) {
  std::size_t d = 0;
  for (const auto& k : t.kids) d = std::max(d, term_depth(*k));
  return d + 1;
}

std::size_t term_size(const Term& t) {
  std::size_t s = 1;
  for (const auto& k : t.kids) s += term_size(*k);
  return s;
}

namespace {

void collect_free(const Term& t, std::size_t depth, std::optional<std::size_t> scope,
                  std::set<std::size_t>& out) {
  if (t.kind == TermKind::Var) {
    if (t.index >= depth) {
      std::size_t outer = t.index - depth;
      if (scope && outer >= *scope)
        fail(ErrorKind::ScopeError, "dangling variable #" + std::to_string(outer));
      out.insert(outer);
    }
    return;
  }
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    collect_free(*t.kids[i], depth + binder_count(t.kind, i), scope, out);
}

}  // namespace

std::set<std::size_t> free_var_demanded(const Term& t, std::optional<std::size_t> scope) {
  std::set<std::size_t> out;
  collect_free(t, 0, scope, out);
  return out;
}

std::vector<std::string> names_of(const TyCtx& ctx) {
  std::vector<std::string> out;
  for (const auto& b : ctx) out.push_back(b.name);
  return out;
}

namespace {

class TermPrinter {
 public:
  explicit TermPrinter(const Semiring& sr) : sr_(sr) {}

  // Levels: 0 binding forms, 1 application/prefix, 2 atoms.
  std::string go(const Term& t, std::vector<std::string>& names, int level) {
    if (has_result_ascription(t.kind) && t.type) {
      return "(" + body(t, names) + " : " + print(sr_, *t.type) + ")";
    }
    std::string out = body(t, names);
    if (own_level(t.kind) < level) return "(" + out + ")";
    return out;
  }

 private:
  static int own_level(TermKind k) {
    switch (k) {
      case TermKind::Lam:
      case TermKind::UnitE:
      case TermKind::PairE:
      case TermKind::Case:
      case TermKind::BangE: return 0;
      case TermKind::App:
      case TermKind::ExF:
      case TermKind::InjL:
      case TermKind::InjR:
      case TermKind::BangI: return 1;
      default: return 2;
    }
  }

  std::string split(const Term& t) const {
    if (!t.split_p) return "";
    std::string out = "@{" + print(sr_, *t.split_p);
    if (t.split_q) out += ";" + print(sr_, *t.split_q);
    return out + "}";
  }

  std::string bind(std::vector<std::string>& names, const std::string& hint) {
    std::string n = fresh_name(hint, names);
    names.push_back(n);
    return n;
  }

  std::string under(const Term& t, std::vector<std::string>& names,
                    const std::vector<std::string>& hints, std::vector<std::string>& chosen,
                    int level) {
    const std::size_t mark = names.size();
    chosen.clear();
    for (const auto& h : hints) chosen.push_back(bind(names, h));
    std::string out = go(t, names, level);
    names.resize(mark);
    return out;
  }

  std::string hint(const Term& t, std::size_t i) const {
    return i < t.binders.size() ? t.binders[i] : std::string("x");
  }

  std::string keyword_split(const Term& t) const {
    std::string s = split(t);
    return s.empty() ? "" : " " + s;
  }

  std::string body(const Term& t, std::vector<std::string>& names) {
    std::vector<std::string> chosen;
    switch (t.kind) {
      case TermKind::Var: {
        if (t.index >= names.size()) return "?" + std::to_string(t.index);
        return names[names.size() - 1 - t.index];
      }
      case TermKind::Lam: {
        std::string b = under(*t.kids[0], names, {hint(t, 0)}, chosen, 0);
        return "\\" + chosen[0] + ":" + print(sr_, *t.type) + ". " + b;
      }
      case TermKind::App: {
        std::string f = go(*t.kids[0], names, 1);
        std::string a = go(*t.kids[1], names, 2);
        // An annotation right after a pair would bind to the pair.
        if (t.split_p && t.kids[1]->kind == TermKind::Pair) a = "(" + a + ")";
        std::string s = split(t);
        return f + " " + a + (s.empty() ? "" : " " + s);
      }
      case TermKind::UnitI: return "()";
      case TermKind::UnitE: {
        std::string s = go(*t.kids[0], names, 0);
        std::string b = go(*t.kids[1], names, 0);
        return "let" + keyword_split(t) + " () = " + s + " in " + b;
      }
      case TermKind::Pair:
        return "(" + go(*t.kids[0], names, 0) + ", " + go(*t.kids[1], names, 0) + ")" + split(t);
      case TermKind::PairE: {
        std::string s = go(*t.kids[0], names, 0);
        std::string b = under(*t.kids[1], names, {hint(t, 0), hint(t, 1)}, chosen, 0);
        return "let" + keyword_split(t) + " (" + chosen[0] + ", " + chosen[1] + ") = " + s +
               " in " + b;
      }
      case TermKind::ExF: return "absurd" + keyword_split(t) + " " + go(*t.kids[0], names, 1);
      case TermKind::InjL: return "inl " + go(*t.kids[0], names, 1);
      case TermKind::InjR: return "inr " + go(*t.kids[0], names, 1);
      case TermKind::Case: {
        std::string s = go(*t.kids[0], names, 0);
        std::vector<std::string> cl, cr;
        std::string l = under(*t.kids[1], names, {hint(t, 0)}, cl, 0);
        std::string r = under(*t.kids[2], names, {hint(t, 1)}, cr, 0);
        return "case" + keyword_split(t) + " " + s + " of {inl " + cl[0] + " -> " + l +
               " | inr " + cr[0] + " -> " + r + "}";
      }
      case TermKind::Eat: return "<>";
      case TermKind::ProjL: return go(*t.kids[0], names, 2) + ".1";
      case TermKind::ProjR: return go(*t.kids[0], names, 2) + ".2";
      case TermKind::WithI:
        return "<" + go(*t.kids[0], names, 0) + ", " + go(*t.kids[1], names, 0) + ">";
      case TermKind::BangI:
        return "! " + sr_.print(t.grade) + keyword_split(t) + " " + go(*t.kids[0], names, 1);
      case TermKind::BangE: {
        std::string s = go(*t.kids[0], names, 0);
        std::string b = under(*t.kids[1], names, {hint(t, 0)}, chosen, 0);
        return "let" + keyword_split(t) + " !" + chosen[0] + " = " + s + " in " + b;
      }
    }
    return "?";
  }

  const Semiring& sr_;
};

}  // namespace

std::string print(const Semiring& sr, const Term& t, const std::vector<std::string>& names) {
  std::vector<std::string> scope = names;
  return TermPrinter(sr).go(t, scope, 0);
}

UVar uvar_check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage, std::size_t index) {
  if (ctx.size() != usage.size())
    fail(ErrorKind::DimensionMismatch, "usage context length differs from typing context");
  uvar_check(sr, usage, index);
  return UVar{ctx, usage, index, ctx[index].type};
}

void uvar_check(const Semiring& sr, const UsageCtx& usage, std::size_t index) {
  const UsageCtx target = basis(sr, usage.size(), index);
  if (auto bad = first_leq_failure(sr, usage, target)) {
    Error e(ErrorKind::UsageMismatch, "usage " + print(sr, usage) + " does not select variable " +
                                          std::to_string(index) + ": " + sr.print(usage[*bad]) +
                                          " is not <| " + sr.print(target[*bad]));
    e.rule = "var";
    e.lhs = print(sr, usage);
    e.rhs = print(sr, target);
    e.coordinate = *bad;
    throw e;
  }
}

}  // namespace lr
