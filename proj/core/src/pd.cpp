#include "lr/pd.hpp"

#include <optional>

#include "logic_internal.hpp"
#include "lr/error.hpp"
#include "lr/parse.hpp"
#include "lr/traversal.hpp"

namespace lr {

namespace pd {

const FormulaSyntax& formula_syntax() {
  static const FormulaSyntax syn{
      {{"T", Truth}, {"F", Falsity}},
      {{"[]", Box}},
      {{"=>", Imp}, {"\\/", Or}, {"/\\", And}},
  };
  return syn;
}

const SequentSyntax& sequent_syntax() {
  static const SequentSyntax syn{&formula_syntax(), "|v", "true"};
  return syn;
}

namespace {
struct RuleInfo {
  Rule rule;
  const char* name;
  std::size_t arity;
};

constexpr RuleInfo kRules[] = {
    {Rule::Hyp, "hyp", 0},      {Rule::HypValid, "hyp*", 0}, {Rule::ImpI, "imp-I", 1},
    {Rule::ImpE, "imp-E", 2},   {Rule::BoxI, "box-I", 1},    {Rule::BoxE, "box-E", 2},
    {Rule::TopI, "top-I", 0},   {Rule::AndI, "and-I", 2},    {Rule::AndE1, "and-E1", 1},
    {Rule::AndE2, "and-E2", 1}, {Rule::BotE, "bot-E", 1},    {Rule::OrI1, "or-I1", 1},
    {Rule::OrI2, "or-I2", 1},   {Rule::OrE, "or-E", 3},
};

const RuleInfo& info(Rule r) {
  for (const auto& i : kRules)
    if (i.rule == r) return i;
  fail(ErrorKind::Defect, "unknown PD rule");
}
}  // namespace

std::string_view rule_name(Rule r) { return info(r).name; }

}  // namespace pd

using namespace pd;
using detail::script_error;

PdTy parse_pd_type(std::string_view text, const std::vector<std::string>& bases) {
  return parse_formula(formula_syntax(), text, bases);
}

std::string print_pd_type(const PdTy& t) { return print_formula(formula_syntax(), t); }

PdSequent parse_pd_sequent(std::string_view text, const std::vector<std::string>& bases) {
  return parse_sequent(sequent_syntax(), text, bases);
}

std::string print_pd(const PdSequent& s) { return print_sequent(sequent_syntax(), s); }

namespace {

bool takes_type(Rule r) {
  return r == Rule::ImpE || r == Rule::BoxE || r == Rule::AndE1 || r == Rule::AndE2 ||
         r == Rule::OrE;
}

std::size_t binder_count(Rule r) {
  if (r == Rule::OrE) return 2;
  return (r == Rule::ImpI || r == Rule::BoxE) ? 1 : 0;
}

Rule rule_from(const ScriptNode& n) {
  for (const auto& i : kRules)
    if (n.rule == i.name) return i.rule;
  script_error(ErrorKind::RuleMismatch, n, "unknown PD rule");
}

void check_params(const ScriptNode& n, Rule r) {
  for (const auto& [k, v] : n.params) {
    bool ok = (k == "ty" && takes_type(r)) || (k == "as" && binder_count(r) > 0) ||
              (k == "var" && (r == Rule::Hyp || r == Rule::HypValid));
    if (!ok) script_error(ErrorKind::RuleMismatch, n, "unexpected parameter '" + k + "'");
  }
}

void expect_goal(const ScriptNode& n, const FormulaPtr& goal, int op) {
  if (goal->op != op)
    script_error(ErrorKind::RuleMismatch, n, "cannot conclude the goal " + print_pd_type(goal));
}

FormulaPtr type_param(const ScriptNode& n, int op) {
  auto it = n.params.find("ty");
  if (it == n.params.end()) script_error(ErrorKind::RuleMismatch, n, "needs a ty= parameter");
  FormulaPtr t = parse_pd_type(it->second);
  if (op != kAtom && t->op != op)
    script_error(ErrorKind::RuleMismatch, n, "ty=" + it->second + " has the wrong connective");
  return t;
}

std::vector<std::string> binders(const ScriptNode& n, std::size_t count) {
  auto names = param_list(n, "as");
  if (names.size() != count)
    script_error(ErrorKind::RuleMismatch, n,
                 "needs as= with " + std::to_string(count) + " hypothesis name(s)");
  return names;
}

Zone extended(Zone z, const Hyp& h) {
  z.push_back(h);
  return z;
}

// hyp and hyp*: the named hypothesis, or the first one of the goal's type.
void axiom(const ScriptNode& n, const Zone& zone, const FormulaPtr& goal, const char* what) {
  auto it = n.params.find("var");
  const Hyp* h = nullptr;
  if (it != n.params.end()) {
    h = detail::find_hyp(zone, it->second);
    if (!h) script_error(ErrorKind::RuleMismatch, n, "'" + it->second + "' is not a " + what);
  } else {
    for (const Hyp& c : zone)
      if (same_formula(c.type, goal)) {
        h = &c;
        break;
      }
    if (!h) script_error(ErrorKind::RuleMismatch, n, std::string("no ") + what + " matches");
  }
  if (!same_formula(h->type, goal))
    script_error(ErrorKind::RuleMismatch, n,
                 "hypothesis '" + h->name + "' has type " + print_pd_type(h->type));
}

PdDerivation build(const PdSequent& s, const ScriptNode& n) {
  const Rule r = rule_from(n);
  check_params(n, r);
  if (n.kids.size() != info(r).arity)
    script_error(ErrorKind::RuleMismatch, n,
                 "has " + std::to_string(info(r).arity) + " premise(s) but the script gives " +
                     std::to_string(n.kids.size()));
  const Zone& g = s.gamma;
  const Zone& d = s.delta;
  const FormulaPtr& goal = s.goal;
  std::vector<PdSequent> premises;
  switch (r) {
    case Rule::Hyp:
      axiom(n, d, goal, "true hypothesis");
      break;
    case Rule::HypValid:
      axiom(n, g, goal, "valid hypothesis");
      break;
    case Rule::ImpI: {
      expect_goal(n, goal, Imp);
      auto as = binders(n, 1);
      premises = {{g, extended(d, {as[0], goal->left}), goal->right}};
      break;
    }
    case Rule::ImpE: {
      FormulaPtr a = type_param(n, kAtom);
      premises = {{g, d, formula(Imp, a, goal)}, {g, d, a}};
      break;
    }
    case Rule::BoxI:
      expect_goal(n, goal, Box);
      premises = {{g, {}, goal->left}};
      break;
    case Rule::BoxE: {
      FormulaPtr t = type_param(n, Box);
      auto as = binders(n, 1);
      premises = {{g, d, t}, {extended(g, {as[0], t->left}), d, goal}};
      break;
    }
    case Rule::TopI:
      expect_goal(n, goal, Truth);
      break;
    case Rule::AndI:
      expect_goal(n, goal, And);
      premises = {{g, d, goal->left}, {g, d, goal->right}};
      break;
    case Rule::AndE1:
      premises = {{g, d, formula(And, goal, type_param(n, kAtom))}};
      break;
    case Rule::AndE2:
      premises = {{g, d, formula(And, type_param(n, kAtom), goal)}};
      break;
    case Rule::BotE:
      premises = {{g, d, formula(Falsity)}};
      break;
    case Rule::OrI1:
    case Rule::OrI2:
      expect_goal(n, goal, Or);
      premises = {{g, d, r == Rule::OrI1 ? goal->left : goal->right}};
      break;
    case Rule::OrE: {
      FormulaPtr t = type_param(n, Or);
      auto as = binders(n, 2);
      premises = {{g, d, t},
                  {g, extended(d, {as[0], t->left}), goal},
                  {g, extended(d, {as[1], t->right}), goal}};
      break;
    }
  }
  PdDerivation out{r, s, {}};
  for (std::size_t i = 0; i < premises.size(); ++i) {
    try {
      require_distinct_names(premises[i]);
    } catch (const Error& e) {
      script_error(e.kind(), n, e.detail());
    }
    out.children.push_back(build(premises[i], n.kids[i]));
  }
  return out;
}

std::optional<std::vector<std::size_t>> first_difference(const PdDerivation& a,
                                                         const PdDerivation& b) {
  if (a.rule != b.rule || !same_sequent(a.seq, b.seq) || a.children.size() != b.children.size())
    return std::vector<std::size_t>{};
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (auto p = first_difference(a.children[i], b.children[i])) {
      p->insert(p->begin(), i);
      return p;
    }
  return std::nullopt;
}

}  // namespace

PdDerivation pd_check(const PdSequent& s, const ScriptNode& script) {
  require_distinct_names(s);
  return build(s, script);
}

ScriptNode to_script(const PdDerivation& d) {
  ScriptNode n;
  n.rule = std::string(rule_name(d.rule));
  if (d.children.size() != info(d.rule).arity)
    script_error(ErrorKind::RuleMismatch, n, "has the wrong number of premises");
  const auto& k = d.children;
  switch (d.rule) {
    case Rule::BoxE:
    case Rule::OrE:
      n.params["ty"] = print_pd_type(k[0].seq.goal);
      break;
    case Rule::ImpE:
      n.params["ty"] = print_pd_type(k[1].seq.goal);
      break;
    case Rule::AndE1:
    case Rule::AndE2: {
      const FormulaPtr& w = k[0].seq.goal;
      if (w->op != And) script_error(ErrorKind::RuleMismatch, n, "premise is not a /\\ goal");
      n.params["ty"] = print_pd_type(d.rule == Rule::AndE1 ? w->right : w->left);
      break;
    }
    default:
      break;
  }
  auto last = [&](const Zone& z) {
    if (z.empty()) script_error(ErrorKind::RuleMismatch, n, "premise lacks its binder");
    return z.back().name;
  };
  switch (d.rule) {
    case Rule::ImpI: n.params["as"] = last(k[0].seq.delta); break;
    case Rule::BoxE: n.params["as"] = last(k[1].seq.gamma); break;
    case Rule::OrE: n.params["as"] = last(k[1].seq.delta) + "," + last(k[2].seq.delta); break;
    default: break;
  }
  for (const auto& c : d.children) n.kids.push_back(to_script(c));
  return n;
}

void pd_validate(const PdDerivation& d) {
  PdDerivation rebuilt = pd_check(d.seq, to_script(d));
  if (auto path = first_difference(d, rebuilt)) {
    std::string p;
    for (auto i : *path) p += "/" + std::to_string(i);
    Error e(ErrorKind::RuleMismatch,
            "PD derivation disagrees with its rule at node " + (p.empty() ? "/" : p));
    e.path = *path;
    throw e;
  }
}

std::size_t derivation_size(const PdDerivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += derivation_size(c);
  return n;
}

TyPtr embed_ty_pd(const PdTy& t) {
  switch (t->op) {
    case kAtom: return ty::base(t->name);
    case Truth: return ty::one();
    case And: return ty::with(embed_ty_pd(t->left), embed_ty_pd(t->right));
    case Imp: return ty::fun(embed_ty_pd(t->left), embed_ty_pd(t->right));
    case Box: return ty::bang(Mod01BoxSemiring::kBox, embed_ty_pd(t->left));
    case Falsity: return ty::zero();
    case Or: return ty::sum(embed_ty_pd(t->left), embed_ty_pd(t->right));
  }
  fail(ErrorKind::Defect, "unknown PD connective");
}

namespace {

void forbid_bangs(const TyPtr& t) {
  std::vector<Usage> grades;
  collect_grades(*t, grades);
  for (Usage g : grades)
    if (g != Mod01BoxSemiring::kBox)
      fail(ErrorKind::ForbiddenBang, "![" + mod01box().print(g) + "] has no PD counterpart in " +
                                         print(mod01box(), *t));
}

}  // namespace

PdTy unembed_ty_pd(const TyPtr& t) {
  switch (t->kind) {
    case TyKind::Base: return atom(t->name);
    case TyKind::Top: return formula(Truth);
    case TyKind::With: return formula(And, unembed_ty_pd(t->left), unembed_ty_pd(t->right));
    case TyKind::Fun: return formula(Imp, unembed_ty_pd(t->left), unembed_ty_pd(t->right));
    case TyKind::Bang:
      forbid_bangs(t);
      return formula(Box, unembed_ty_pd(t->left));
    case TyKind::Zero: return formula(Falsity);
    case TyKind::Sum: return formula(Or, unembed_ty_pd(t->left), unembed_ty_pd(t->right));
    case TyKind::One:
    case TyKind::Tensor:
      fail(ErrorKind::TypeMismatch,
           "I and * have no PD counterpart; rewrite them to Top and & first");
  }
  fail(ErrorKind::Defect, "unknown type kind");
}

namespace {

// PD to mod01box: valid hypotheses at #, true ones at 1, the rest at 0.
class ToLr {
 public:
  TermPtr run(const PdDerivation& d) {
    const auto& k = d.children;
    const UsageCtx r = usage(d.seq);
    auto goal = [&] { return embed_ty_pd(d.seq.goal); };
    auto shared = [&](TermPtr t) { return tm::with_split(t, r, r); };
    switch (d.rule) {
      case Rule::Hyp: return var(first_of(d.seq.delta, d.seq.goal));
      case Rule::HypValid: return var(first_of(d.seq.gamma, d.seq.goal));
      case Rule::ImpI: {
        const Hyp& x = k[0].seq.delta.back();
        return tm::lam(x.name, embed_ty_pd(x.type), under(x, k[0]));
      }
      case Rule::ImpE: return shared(tm::app(run(k[0]), run(k[1])));
      case Rule::BoxI:
        return tm::with_split(tm::bang(Mod01BoxSemiring::kBox, run(k[0])), usage(k[0].seq),
                              std::nullopt);
      case Rule::BoxE: {
        const Hyp& x = k[1].seq.gamma.back();
        TermPtr s = run(k[0]);
        return shared(tm::bang_elim(s, x.name, under(x, k[1]), goal()));
      }
      case Rule::TopI: return tm::unit();
      case Rule::AndI: return tm::with_pair(run(k[0]), run(k[1]));
      case Rule::AndE1: return tm::proj1(run(k[0]));
      case Rule::AndE2: return tm::proj2(run(k[0]));
      case Rule::BotE: return shared(tm::absurd(run(k[0]), goal()));
      case Rule::OrI1: return tm::with_type(tm::inl(run(k[0])), goal());
      case Rule::OrI2: return tm::with_type(tm::inr(run(k[0])), goal());
      case Rule::OrE: {
        const Hyp& x = k[1].seq.delta.back();
        const Hyp& y = k[2].seq.delta.back();
        TermPtr s = run(k[0]);
        TermPtr l = under(x, k[1]);
        TermPtr rr = under(y, k[2]);
        return shared(tm::case_of(s, x.name, l, y.name, rr, goal()));
      }
    }
    fail(ErrorKind::Defect, "unknown PD rule");
  }

  void push(const Hyp& h) { names_.push_back(h.name); }

  UsageCtx usage(const PdSequent& s) const {
    std::vector<Usage> u(names_.size(), Mod01BoxSemiring::kZero);
    for (const Hyp& h : s.gamma) u[detail::last_position(names_, h.name)] = Mod01BoxSemiring::kBox;
    for (const Hyp& h : s.delta) u[detail::last_position(names_, h.name)] = Mod01BoxSemiring::kOne;
    return UsageCtx(std::move(u));
  }

 private:
  static const std::string& first_of(const Zone& z, const FormulaPtr& goal) {
    for (const Hyp& h : z)
      if (same_formula(h.type, goal)) return h.name;
    fail(ErrorKind::Defect, "axiom without a matching hypothesis");
  }

  TermPtr var(const std::string& name) const {
    return tm::var(names_.size() - 1 - detail::last_position(names_, name));
  }

  TermPtr under(const Hyp& bound, const PdDerivation& premise) {
    push(bound);
    TermPtr t = run(premise);
    names_.pop_back();
    return t;
  }

  std::vector<std::string> names_;
};

}  // namespace

Derivation pd_to_lr(const PdDerivation& d) {
  ToLr tr;
  TyCtx ctx;
  for (const Zone* z : {&d.seq.gamma, &d.seq.delta})
    for (const Hyp& h : *z) {
      tr.push(h);
      ctx.push_back({h.name, embed_ty_pd(h.type)});
    }
  UsageCtx r = tr.usage(d.seq);
  TermPtr t = tr.run(d);
  try {
    return check(mod01box(), ctx, r, t, embed_ty_pd(d.seq.goal));
  } catch (const Error& e) {
    fail(ErrorKind::Defect, std::string("PD translation does not re-check: ") + e.what());
  }
}

TopMeetIso top_meet_iso(const Semiring& sr, const TyPtr& a, const TyPtr& b) {
  if (!zero_top_and_add_meet(sr))
    fail(ErrorKind::HypothesisFailed,
         std::string(sr.name()) + " does not have 0 as top element with + as meet");
  const UsageCtx one{sr.one()};
  const UsageCtx zero{sr.zero()};
  auto ctx = [](TyPtr t) { return TyCtx{{"x", std::move(t)}}; };
  TopMeetIso out;
  out.unit_to_top = check(sr, ctx(ty::one()), one, tm::eat(), ty::top());
  out.top_to_unit = check(sr, ctx(ty::top()), one, tm::unit(), ty::one());
  TermPtr with_body = tm::with_pair(tm::var(1), tm::var(0));
  TermPtr unpack = tm::with_split(tm::pair_elim(tm::var(0), "y", "z", with_body), one, zero);
  out.tensor_to_with = check(sr, ctx(ty::tensor(a, b)), one, unpack, ty::with(a, b));
  TermPtr repack = tm::with_split(tm::pair(tm::proj1(tm::var(0)), tm::proj2(tm::var(0))), one, one);
  out.with_to_tensor = check(sr, ctx(ty::with(a, b)), one, repack, ty::tensor(a, b));
  return out;
}

namespace {

TyPtr no_tensors(const TyPtr& t) {
  if (!t) return t;
  switch (t->kind) {
    case TyKind::One: return ty::top();
    case TyKind::Tensor: return ty::with(no_tensors(t->left), no_tensors(t->right));
    case TyKind::Fun: return ty::fun(no_tensors(t->left), no_tensors(t->right));
    case TyKind::Sum: return ty::sum(no_tensors(t->left), no_tensors(t->right));
    case TyKind::With: return ty::with(no_tensors(t->left), no_tensors(t->right));
    case TyKind::Bang: return ty::bang(t->grade, no_tensors(t->left));
    default: return t;
  }
}

TyCtx no_tensors(const TyCtx& ctx) {
  TyCtx out;
  for (const auto& b : ctx) out.push_back({b.name, no_tensors(b.type)});
  return out;
}

// Each case keeps the conclusion usage R. Pair becomes <M, N> after
// weakening both sides to R <| P + Q, which under meet is below P and Q;
// let (x, y) = M in N substitutes x.1 and x.2 of M, each at P.
Derivation rewrite(const Semiring& sr, const Derivation& d) {
  const Term& t = *d.term;
  const TyCtx ctx = no_tensors(d.ctx);
  const TyPtr type = no_tensors(d.type);
  std::vector<Derivation> kids;
  for (const auto& c : d.children) kids.push_back(rewrite(sr, c));
  switch (t.kind) {
    case TermKind::UnitI:
      return check(sr, ctx, d.usage, tm::with_type(tm::eat(), type), type);
    case TermKind::Pair:
      return check(sr, ctx, d.usage,
                   tm::with_pair(subuse(sr, d.usage, kids[0]).term,
                                 subuse(sr, d.usage, kids[1]).term),
                   type);
    case TermKind::UnitE:
      return subuse(sr, d.usage, kids[1]);
    case TermKind::PairE: {
      const Derivation& m = kids[0];
      const Derivation& n = kids[1];
      const std::size_t k = ctx.size();
      UsageMatrix psi = vstack(vstack(identity(sr, k), m.usage), m.usage);
      std::vector<Derivation> act;
      for (std::size_t j = 0; j < k; ++j) act.push_back(var_derivation(sr, ctx, j));
      act.push_back(check(sr, ctx, m.usage, tm::proj1(m.term), m.type->left));
      act.push_back(check(sr, ctx, m.usage, tm::proj2(m.term), m.type->right));
      Env<Derivation> env =
          env_build(sr, ctx, d.usage, n.ctx, n.usage, std::move(psi), std::move(act));
      return sub(sr, env, n);
    }
    default: {
      std::vector<TermPtr> terms;
      for (const auto& c : kids) terms.push_back(c.term);
      TermPtr out = terms.empty() ? d.term : tm::with_kids(d.term, std::move(terms));
      if (t.type) out = tm::with_type(out, no_tensors(t.type));
      return check(sr, ctx, d.usage, out, type);
    }
  }
}

}  // namespace

Derivation rewrite_tensors(const Semiring& sr, const Derivation& d) {
  if (!zero_top_and_add_meet(sr))
    fail(ErrorKind::HypothesisFailed,
         std::string(sr.name()) + " does not have 0 as top element with + as meet");
  return rewrite(sr, d);
}

std::vector<ZoneClass> partition_of_box(const UsageCtx& usage) {
  std::vector<ZoneClass> out;
  for (std::size_t i = 0; i < usage.size(); ++i) {
    Usage u = usage[i];
    if (u == Mod01BoxSemiring::kBox) out.push_back(ZoneClass::Intuitionistic);
    else if (u == Mod01BoxSemiring::kOne) out.push_back(ZoneClass::Linear);
    else out.push_back(ZoneClass::Unused);
  }
  return out;
}

namespace {

// Bottom-up mod01box derivation to PD. Zones are inherited: a position is
// valid or true from where it was bound, and box-I empties the true zone.
class FromLr {
 public:
  PdDerivation run(const Derivation& d) {
    PdDerivation out;
    out.seq = sequent(d);
    const Term& t = *d.term;
    switch (t.kind) {
      case TermKind::Var: {
        const std::size_t pos = d.ctx.size() - 1 - t.index;
        const Usage u = d.usage[pos];
        if (u == Mod01BoxSemiring::kBox && valid_[pos]) out.rule = Rule::HypValid;
        else if (u == Mod01BoxSemiring::kOne && true_[pos]) out.rule = Rule::Hyp;
        else fail(ErrorKind::Defect, "variable used outside its zone");
        break;
      }
      case TermKind::Eat: out.rule = Rule::TopI; break;
      case TermKind::Lam: out.rule = Rule::ImpI; break;
      case TermKind::App: out.rule = Rule::ImpE; break;
      case TermKind::Case: out.rule = Rule::OrE; break;
      case TermKind::ExF: out.rule = Rule::BotE; break;
      case TermKind::BangI: out.rule = Rule::BoxI; break;
      case TermKind::BangE: out.rule = Rule::BoxE; break;
      case TermKind::WithI: out.rule = Rule::AndI; break;
      case TermKind::ProjL: out.rule = Rule::AndE1; break;
      case TermKind::ProjR: out.rule = Rule::AndE2; break;
      case TermKind::InjL: out.rule = Rule::OrI1; break;
      case TermKind::InjR: out.rule = Rule::OrI2; break;
      default:
        fail(ErrorKind::Defect, std::string(kind_name(t.kind)) + " survived the tensor rewrite");
    }
    for (std::size_t i = 0; i < d.children.size(); ++i) out.children.push_back(kid(d, i));
    return out;
  }

  void push(std::string name, ZoneClass z) {
    names_.push_back(std::move(name));
    valid_.push_back(z == ZoneClass::Intuitionistic);
    true_.push_back(z == ZoneClass::Linear);
  }

 private:
  PdDerivation kid(const Derivation& d, std::size_t i) {
    const Derivation& c = d.children[i];
    const std::size_t n = names_.size();
    const std::vector<bool> saved = true_;
    if (d.term->kind == TermKind::BangI) true_.assign(n, false);
    for (std::size_t j = n; j < c.ctx.size(); ++j) {
      const std::size_t b = j - n + (d.term->kind == TermKind::Case && i == 2 ? 1 : 0);
      const std::string& hint = b < d.term->binders.size() ? d.term->binders[b] : std::string();
      push(detail::fresh_name(names_, hint), d.term->kind == TermKind::BangE
                                                  ? ZoneClass::Intuitionistic
                                                  : ZoneClass::Linear);
    }
    PdDerivation out = run(c);
    names_.resize(n);
    valid_.resize(n);
    true_ = saved;
    return out;
  }

  PdSequent sequent(const Derivation& d) const {
    PdSequent s;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (valid_[i]) s.gamma.push_back({names_[i], unembed_ty_pd(d.ctx[i].type)});
      if (true_[i]) s.delta.push_back({names_[i], unembed_ty_pd(d.ctx[i].type)});
    }
    s.goal = unembed_ty_pd(d.type);
    return s;
  }

  std::vector<std::string> names_;
  std::vector<bool> valid_;
  std::vector<bool> true_;
};

void forbid_all(const Derivation& d) {
  for (const auto& b : d.ctx) forbid_bangs(b.type);
  forbid_bangs(d.type);
  for (const auto& c : d.children) forbid_all(c);
}

}  // namespace

PdDerivation lr_to_pd(const Derivation& d, const std::vector<ZoneClass>& partition) {
  if (partition.size() != d.ctx.size())
    fail(ErrorKind::DimensionMismatch, "partition length differs from the context");
  if (partition != partition_of_box(d.usage))
    fail(ErrorKind::ZoneSplitError, "partition does not match the conclusion usage " +
                                        print(mod01box(), d.usage));
  forbid_all(d);
  Derivation bu = to_bottom_up(mod01box(), rewrite_tensors(mod01box(), d));
  FromLr tr;
  TyCtx fresh = freshen_names(d.ctx);
  for (std::size_t i = 0; i < fresh.size(); ++i) tr.push(fresh[i].name, partition[i]);
  PdDerivation out = tr.run(bu);
  try {
    pd_validate(out);
  } catch (const Error& e) {
    fail(ErrorKind::Defect, std::string("extracted PD derivation is invalid: ") + e.what());
  }
  return out;
}

PdDerivation lr_to_pd(const Derivation& d) { return lr_to_pd(d, partition_of_box(d.usage)); }

PdFile parse_pd_file(std::string_view text) {
  ProofFile pf = parse_proof_file(text);
  if (pf.logic != "pd")
    fail(ErrorKind::ParseError, "expected 'logic pd', found 'logic " + pf.logic + "'");
  PdFile out;
  out.bases = pf.bases;
  for (const auto& st : pf.stanzas) {
    PdSequent s;
    try {
      s = parse_pd_sequent(st.sequent, pf.bases);
    } catch (const Error& e) {
      fail(e.kind(), "line " + std::to_string(st.line) + ": " + e.detail());
    }
    out.proofs.push_back(pd_check(s, parse_script(st.script, st.line + 1)));
  }
  return out;
}

std::string print(const PdFile& file) {
  std::string out = "logic pd\n";
  if (!file.bases.empty()) {
    out += "base ";
    for (std::size_t i = 0; i < file.bases.size(); ++i) out += (i ? ", " : "") + file.bases[i];
    out += "\n";
  }
  for (const auto& d : file.proofs)
    out += "\n" + print_pd(d.seq) + "\n" + print_script(to_script(d));
  return out;
}

}  // namespace lr
