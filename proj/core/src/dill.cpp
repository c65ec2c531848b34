#include "lr/dill.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "logic_internal.hpp"
#include "lr/error.hpp"
#include "lr/parse.hpp"

namespace lr {

namespace dill {

const FormulaSyntax& formula_syntax() {
  static const FormulaSyntax syn{
      {{"I", One}, {"0", Zero}, {"Top", Top}},
      {{"!", Bang}},
      {{"-o", Lolli}, {"+", Plus}, {"&", With}, {"*", Tensor}},
  };
  return syn;
}

const SequentSyntax& sequent_syntax() {
  static const SequentSyntax syn{&formula_syntax(), "|", ""};
  return syn;
}

namespace {
struct RuleInfo {
  Rule rule;
  const char* name;
  std::size_t arity;
};

constexpr RuleInfo kRules[] = {
    {Rule::IntAx, "int-ax", 0},     {Rule::LinAx, "lin-ax", 0},     {Rule::OneI, "I-I", 0},
    {Rule::OneE, "I-E", 2},         {Rule::TensorI, "tensor-I", 2}, {Rule::TensorE, "tensor-E", 2},
    {Rule::LolliI, "lolli-I", 1},   {Rule::LolliE, "lolli-E", 2},   {Rule::BangI, "bang-I", 1},
    {Rule::BangE, "bang-E", 2},     {Rule::TopI, "top-I", 0},       {Rule::WithI, "with-I", 2},
    {Rule::WithE1, "with-E1", 1},   {Rule::WithE2, "with-E2", 1},   {Rule::ZeroE, "zero-E", 1},
    {Rule::PlusI1, "plus-I1", 1},   {Rule::PlusI2, "plus-I2", 1},   {Rule::PlusE, "plus-E", 3},
};

const RuleInfo& info(Rule r) {
  for (const auto& i : kRules)
    if (i.rule == r) return i;
  fail(ErrorKind::Defect, "unknown DILL rule");
}
}  // namespace

std::string_view rule_name(Rule r) { return info(r).name; }

}  // namespace dill

using namespace dill;
using detail::script_error;

DillTy parse_dill_type(std::string_view text, const std::vector<std::string>& bases) {
  return parse_formula(formula_syntax(), text, bases);
}

std::string print_dill_type(const DillTy& t) { return print_formula(formula_syntax(), t); }

DillSequent parse_dill_sequent(std::string_view text, const std::vector<std::string>& bases) {
  return parse_sequent(sequent_syntax(), text, bases);
}

std::string print(const DillSequent& s) { return print_sequent(sequent_syntax(), s); }

namespace {

bool is_splitting(Rule r) {
  switch (r) {
    case Rule::OneE:
    case Rule::TensorI:
    case Rule::TensorE:
    case Rule::LolliE:
    case Rule::BangE:
    case Rule::ZeroE:
    case Rule::PlusE:
      return true;
    default:
      return false;
  }
}

bool takes_type(Rule r) {
  switch (r) {
    case Rule::TensorE:
    case Rule::LolliE:
    case Rule::BangE:
    case Rule::WithE1:
    case Rule::WithE2:
    case Rule::PlusE:
      return true;
    default:
      return false;
  }
}

std::size_t binder_count(Rule r) {
  switch (r) {
    case Rule::TensorE:
    case Rule::PlusE:
      return 2;
    case Rule::LolliI:
    case Rule::BangE:
      return 1;
    default:
      return 0;
  }
}

Rule rule_from(const ScriptNode& n) {
  for (const auto& i : kRules)
    if (n.rule == i.name) return i.rule;
  script_error(ErrorKind::RuleMismatch, n, "unknown DILL rule");
}

void check_params(const ScriptNode& n, Rule r) {
  for (const auto& [k, v] : n.params) {
    bool ok = (k == "left" && is_splitting(r)) || (k == "ty" && takes_type(r)) ||
              (k == "as" && binder_count(r) > 0) || (k == "var" && r == Rule::IntAx);
    if (!ok) script_error(ErrorKind::RuleMismatch, n, "unexpected parameter '" + k + "'");
  }
}

FormulaPtr expect_goal(const ScriptNode& n, const FormulaPtr& goal, int op) {
  if (goal->op != op)
    script_error(ErrorKind::RuleMismatch, n,
                 "cannot conclude the goal " + print_dill_type(goal));
  return goal;
}

FormulaPtr type_param(const ScriptNode& n, int op) {
  auto it = n.params.find("ty");
  if (it == n.params.end()) script_error(ErrorKind::RuleMismatch, n, "needs a ty= parameter");
  FormulaPtr t = parse_dill_type(it->second);
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

void require_empty_delta(const ScriptNode& n, const Zone& delta, const char* why) {
  if (!delta.empty())
    script_error(ErrorKind::ZoneSplitError, n,
                 std::string(why) + "; linear hypotheses " + detail::join_names(delta) +
                     " are left over");
}

std::pair<Zone, Zone> split_delta(const ScriptNode& n, const Zone& delta) {
  std::set<std::string> left;
  for (const auto& x : param_list(n, "left")) {
    if (!detail::find_hyp(delta, x))
      script_error(ErrorKind::ZoneSplitError, n, "'" + x + "' is not in the linear zone");
    if (!left.insert(x).second)
      script_error(ErrorKind::ZoneSplitError, n, "'" + x + "' is sent to a premise twice");
  }
  std::pair<Zone, Zone> out;
  for (const Hyp& h : delta) (left.count(h.name) ? out.first : out.second).push_back(h);
  return out;
}

Zone extended(Zone z, const std::vector<Hyp>& more) {
  z.insert(z.end(), more.begin(), more.end());
  return z;
}

DillDerivation build(const DillSequent& s, const ScriptNode& n) {
  const Rule r = rule_from(n);
  check_params(n, r);
  if (n.kids.size() != info(r).arity)
    script_error(ErrorKind::RuleMismatch, n,
                 "has " + std::to_string(info(r).arity) + " premise(s) but the script gives " +
                     std::to_string(n.kids.size()));
  const Zone& g = s.gamma;
  const Zone& d = s.delta;
  const FormulaPtr& goal = s.goal;
  std::vector<DillSequent> premises;
  switch (r) {
    case Rule::IntAx: {
      require_empty_delta(n, d, "int-ax needs an empty linear zone");
      auto it = n.params.find("var");
      const Hyp* h = nullptr;
      if (it != n.params.end()) {
        h = detail::find_hyp(g, it->second);
        if (!h)
          script_error(ErrorKind::RuleMismatch, n,
                       "'" + it->second + "' is not an intuitionistic hypothesis");
      } else {
        for (const Hyp& c : g)
          if (same_formula(c.type, goal)) {
            h = &c;
            break;
          }
        if (!h) script_error(ErrorKind::RuleMismatch, n, "no intuitionistic hypothesis matches");
      }
      if (!same_formula(h->type, goal))
        script_error(ErrorKind::RuleMismatch, n, "hypothesis '" + h->name + "' has type " +
                                                     print_dill_type(h->type));
      break;
    }
    case Rule::LinAx:
      if (d.empty()) script_error(ErrorKind::RuleMismatch, n, "no linear hypothesis");
      if (d.size() > 1)
        script_error(ErrorKind::ZoneSplitError, n,
                     "linear hypotheses " + detail::join_names(d, 1) + " are unused");
      if (!same_formula(d[0].type, goal))
        script_error(ErrorKind::RuleMismatch, n, "hypothesis '" + d[0].name + "' has type " +
                                                     print_dill_type(d[0].type));
      break;
    case Rule::OneI:
      expect_goal(n, goal, One);
      require_empty_delta(n, d, "I-I needs an empty linear zone");
      break;
    case Rule::OneE: {
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, formula(One)}, {g, d2, goal}};
      break;
    }
    case Rule::TensorI: {
      expect_goal(n, goal, Tensor);
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, goal->left}, {g, d2, goal->right}};
      break;
    }
    case Rule::TensorE: {
      FormulaPtr t = type_param(n, Tensor);
      auto as = binders(n, 2);
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, t}, {g, extended(d2, {{as[0], t->left}, {as[1], t->right}}), goal}};
      break;
    }
    case Rule::LolliI: {
      expect_goal(n, goal, Lolli);
      auto as = binders(n, 1);
      premises = {{g, extended(d, {{as[0], goal->left}}), goal->right}};
      break;
    }
    case Rule::LolliE: {
      FormulaPtr a = type_param(n, kAtom);
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, formula(Lolli, a, goal)}, {g, d2, a}};
      break;
    }
    case Rule::BangI:
      expect_goal(n, goal, Bang);
      require_empty_delta(n, d, "bang-I needs an empty linear zone");
      premises = {{g, {}, goal->left}};
      break;
    case Rule::BangE: {
      FormulaPtr t = type_param(n, Bang);
      auto as = binders(n, 1);
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, t}, {extended(g, {{as[0], t->left}}), d2, goal}};
      break;
    }
    case Rule::TopI:
      expect_goal(n, goal, Top);
      break;
    case Rule::WithI:
      expect_goal(n, goal, With);
      premises = {{g, d, goal->left}, {g, d, goal->right}};
      break;
    case Rule::WithE1:
      premises = {{g, d, formula(With, goal, type_param(n, kAtom))}};
      break;
    case Rule::WithE2:
      premises = {{g, d, formula(With, type_param(n, kAtom), goal)}};
      break;
    case Rule::ZeroE: {
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, formula(Zero)}};
      break;
    }
    case Rule::PlusI1:
    case Rule::PlusI2:
      expect_goal(n, goal, Plus);
      premises = {{g, d, r == Rule::PlusI1 ? goal->left : goal->right}};
      break;
    case Rule::PlusE: {
      FormulaPtr t = type_param(n, Plus);
      auto as = binders(n, 2);
      auto [d1, d2] = split_delta(n, d);
      premises = {{g, d1, t},
                  {g, extended(d2, {{as[0], t->left}}), goal},
                  {g, extended(d2, {{as[1], t->right}}), goal}};
      break;
    }
  }
  DillDerivation out{r, s, {}};
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

std::optional<std::vector<std::size_t>> first_difference(const DillDerivation& a,
                                                         const DillDerivation& b) {
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

DillDerivation dill_check(const DillSequent& s, const ScriptNode& script) {
  require_distinct_names(s);
  return build(s, script);
}

ScriptNode to_script(const DillDerivation& d) {
  ScriptNode n;
  n.rule = std::string(rule_name(d.rule));
  if (d.children.size() != info(d.rule).arity)
    script_error(ErrorKind::RuleMismatch, n, "has the wrong number of premises");
  const auto& k = d.children;
  if (is_splitting(d.rule) && !k[0].seq.delta.empty())
    n.params["left"] = detail::join_names(k[0].seq.delta);
  switch (d.rule) {
    case Rule::TensorE:
    case Rule::BangE:
    case Rule::PlusE:
      n.params["ty"] = print_dill_type(k[0].seq.goal);
      break;
    case Rule::LolliE:
      n.params["ty"] = print_dill_type(k[1].seq.goal);
      break;
    case Rule::WithE1:
    case Rule::WithE2: {
      const FormulaPtr& w = k[0].seq.goal;
      if (w->op != With) script_error(ErrorKind::RuleMismatch, n, "premise is not a & goal");
      n.params["ty"] = print_dill_type(d.rule == Rule::WithE1 ? w->right : w->left);
      break;
    }
    default:
      break;
  }
  auto last = [&](const Zone& z, std::size_t count) {
    if (z.size() < count) script_error(ErrorKind::RuleMismatch, n, "premise lacks its binders");
    return detail::join_names(z, z.size() - count);
  };
  switch (d.rule) {
    case Rule::TensorE:
      n.params["as"] = last(k[1].seq.delta, 2);
      break;
    case Rule::LolliI:
      n.params["as"] = last(k[0].seq.delta, 1);
      break;
    case Rule::BangE:
      n.params["as"] = last(k[1].seq.gamma, 1);
      break;
    case Rule::PlusE:
      n.params["as"] = last(k[1].seq.delta, 1) + "," + last(k[2].seq.delta, 1);
      break;
    default:
      break;
  }
  for (const auto& c : d.children) n.kids.push_back(to_script(c));
  return n;
}

void dill_validate(const DillDerivation& d) {
  DillDerivation rebuilt = dill_check(d.seq, to_script(d));
  if (auto path = first_difference(d, rebuilt)) {
    std::string p;
    for (auto i : *path) p += "/" + std::to_string(i);
    Error e(ErrorKind::RuleMismatch,
            "DILL derivation disagrees with its rule at node " + (p.empty() ? "/" : p));
    e.path = *path;
    throw e;
  }
}

std::size_t derivation_size(const DillDerivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += derivation_size(c);
  return n;
}

TyPtr embed_ty_dill(const DillTy& t) {
  switch (t->op) {
    case kAtom: return ty::base(t->name);
    case One: return ty::one();
    case Tensor: return ty::tensor(embed_ty_dill(t->left), embed_ty_dill(t->right));
    case Lolli: return ty::fun(embed_ty_dill(t->left), embed_ty_dill(t->right));
    case Bang: return ty::bang(Lin01wSemiring::kOmega, embed_ty_dill(t->left));
    case Zero: return ty::zero();
    case Plus: return ty::sum(embed_ty_dill(t->left), embed_ty_dill(t->right));
    case Top: return ty::top();
    case With: return ty::with(embed_ty_dill(t->left), embed_ty_dill(t->right));
  }
  fail(ErrorKind::Defect, "unknown DILL connective");
}

DillTy unembed_ty_dill(const TyPtr& t) {
  switch (t->kind) {
    case TyKind::Base: return atom(t->name);
    case TyKind::One: return formula(One);
    case TyKind::Tensor: return formula(Tensor, unembed_ty_dill(t->left), unembed_ty_dill(t->right));
    case TyKind::Fun: return formula(Lolli, unembed_ty_dill(t->left), unembed_ty_dill(t->right));
    case TyKind::Bang:
      if (t->grade != Lin01wSemiring::kOmega)
        fail(ErrorKind::NonDillType, "![" + lin01w().print(t->grade) +
                                         "] has no DILL counterpart; only ![w] does");
      return formula(Bang, unembed_ty_dill(t->left));
    case TyKind::Zero: return formula(Zero);
    case TyKind::Sum: return formula(Plus, unembed_ty_dill(t->left), unembed_ty_dill(t->right));
    case TyKind::Top: return formula(Top);
    case TyKind::With: return formula(With, unembed_ty_dill(t->left), unembed_ty_dill(t->right));
  }
  fail(ErrorKind::Defect, "unknown type kind");
}

namespace {

// DILL to lin01w. The lambda-R context only ever grows along a branch;
// hypotheses a DILL premise drops stay in it at usage 0.
class ToLr {
 public:
  TermPtr run(const DillDerivation& d) {
    const std::size_t n = names_.size();
    const auto& k = d.children;
    auto goal = [&] { return embed_ty_dill(d.seq.goal); };
    // The right premise's usage is read while its binders are in scope.
    UsageCtx q;
    auto split = [&](TermPtr t, const DillDerivation& a, const DillDerivation& b) {
      return tm::with_split(t, usage(a.seq, n), q.size() == n ? q : usage(b.seq, n));
    };
    switch (d.rule) {
      case Rule::IntAx: {
        for (const Hyp& h : d.seq.gamma)
          if (same_formula(h.type, d.seq.goal)) return var(h.name);
        fail(ErrorKind::Defect, "int-ax without a matching hypothesis");
      }
      case Rule::LinAx: return var(d.seq.delta.at(0).name);
      case Rule::OneI: return tm::unit();
      case Rule::TopI: return tm::with_type(tm::eat(), ty::top());
      case Rule::OneE: return split(tm::unit_elim(run(k[0]), run(k[1]), goal()), k[0], k[1]);
      case Rule::TensorI: return split(tm::pair(run(k[0]), run(k[1])), k[0], k[1]);
      case Rule::LolliE: return split(tm::app(run(k[0]), run(k[1])), k[0], k[1]);
      case Rule::TensorE: {
        const Zone& body = k[1].seq.delta;
        const Hyp& x = body[body.size() - 2];
        const Hyp& y = body.back();
        TermPtr s = run(k[0]);
        TermPtr b = under({x, y}, k[1], &q);
        return split(tm::pair_elim(s, x.name, y.name, b, goal()), k[0], k[1]);
      }
      case Rule::LolliI: {
        const Hyp& x = k[0].seq.delta.back();
        return tm::lam(x.name, embed_ty_dill(x.type), under({x}, k[0]));
      }
      case Rule::BangI:
        return tm::with_split(tm::bang(Lin01wSemiring::kOmega, run(k[0])), usage(k[0].seq, n),
                              std::nullopt);
      case Rule::BangE: {
        const Hyp& x = k[1].seq.gamma.back();
        TermPtr s = run(k[0]);
        TermPtr b = under({x}, k[1], &q);
        return split(tm::bang_elim(s, x.name, b, goal()), k[0], k[1]);
      }
      case Rule::WithI: return tm::with_pair(run(k[0]), run(k[1]));
      case Rule::WithE1: return tm::proj1(run(k[0]));
      case Rule::WithE2: return tm::proj2(run(k[0]));
      case Rule::ZeroE: {
        // The unused linear hypotheses go to the (absent) right premise.
        UsageCtx q = usage(d.seq, n);
        for (const Hyp& h : k[0].seq.delta) q[detail::last_position(names_, h.name)] = Usage{0};
        return tm::with_split(tm::absurd(run(k[0]), goal()), usage(k[0].seq, n), q);
      }
      case Rule::PlusI1: return tm::with_type(tm::inl(run(k[0])), goal());
      case Rule::PlusI2: return tm::with_type(tm::inr(run(k[0])), goal());
      case Rule::PlusE: {
        const Hyp& x = k[1].seq.delta.back();
        const Hyp& y = k[2].seq.delta.back();
        TermPtr s = run(k[0]);
        TermPtr l = under({x}, k[1], &q);
        TermPtr r = under({y}, k[2]);
        return split(tm::case_of(s, x.name, l, y.name, r, goal()), k[0], k[1]);
      }
    }
    fail(ErrorKind::Defect, "unknown DILL rule");
  }

  void push(const Hyp& h) { names_.push_back(h.name); }

  /// w on the intuitionistic zone, 1 on the linear zone, 0 elsewhere;
  /// truncated to the first n positions.
  UsageCtx usage(const DillSequent& s, std::size_t n) const {
    std::vector<Usage> u(names_.size(), Lin01wSemiring::kZero);
    for (const Hyp& h : s.gamma) u[detail::last_position(names_, h.name)] = Lin01wSemiring::kOmega;
    for (const Hyp& h : s.delta) u[detail::last_position(names_, h.name)] = Lin01wSemiring::kOne;
    u.resize(n);
    return UsageCtx(std::move(u));
  }

 private:
  TermPtr var(const std::string& name) const {
    return tm::var(names_.size() - 1 - detail::last_position(names_, name));
  }

  // Pushes the binders of `premise` for the duration of its translation.
  TermPtr under(const std::vector<Hyp>& bound, const DillDerivation& premise,
                UsageCtx* outer = nullptr) {
    const std::size_t n = names_.size();
    for (const Hyp& h : bound) push(h);
    if (outer) *outer = usage(premise.seq, n);
    TermPtr t = run(premise);
    names_.resize(names_.size() - bound.size());
    return t;
  }

  std::vector<std::string> names_;
};

}  // namespace

Derivation dill_to_lr(const DillDerivation& d) {
  ToLr tr;
  TyCtx ctx;
  for (const Zone* z : {&d.seq.gamma, &d.seq.delta})
    for (const Hyp& h : *z) {
      tr.push(h);
      ctx.push_back({h.name, embed_ty_dill(h.type)});
    }
  UsageCtx r = tr.usage(d.seq, ctx.size());
  TermPtr t = tr.run(d);
  try {
    return check(lin01w(), ctx, r, t, embed_ty_dill(d.seq.goal));
  } catch (const Error& e) {
    fail(ErrorKind::Defect, std::string("DILL translation does not re-check: ") + e.what());
  }
}

std::vector<ZoneClass> partition_of(const UsageCtx& usage) {
  std::vector<ZoneClass> out;
  for (std::size_t i = 0; i < usage.size(); ++i) {
    Usage u = usage[i];
    if (u == Lin01wSemiring::kOmega) out.push_back(ZoneClass::Intuitionistic);
    else if (u == Lin01wSemiring::kOne) out.push_back(ZoneClass::Linear);
    else out.push_back(ZoneClass::Unused);
  }
  return out;
}

namespace {

// Bottom-up lin01w derivation to DILL. `gamma_` marks the positions that
// belong to the intuitionistic zone; the linear zone of a node is the set
// of positions at usage 1.
class FromLr {
 public:
  DillDerivation run(const Derivation& d) {
    DillDerivation out;
    out.seq = sequent(d);
    const Term& t = *d.term;
    const auto& k = d.children;
    auto kid = [&](std::size_t i) {
      const std::size_t extra = k[i].ctx.size() - names_.size();
      if (extra == 0) return run(k[i]);
      const std::size_t n = names_.size();
      for (std::size_t j = 0; j < extra; ++j) {
        const std::size_t b = j + (t.kind == TermKind::Case && i == 2 ? 1 : 0);
        const std::string& hint = b < t.binders.size() ? t.binders[b] : std::string();
        names_.push_back(detail::fresh_name(names_, hint));
        gamma_.push_back(k[i].usage[n + j] == Lin01wSemiring::kOmega);
      }
      DillDerivation c = run(k[i]);
      names_.resize(n);
      gamma_.resize(n);
      return c;
    };
    switch (t.kind) {
      case TermKind::Var: {
        const std::size_t pos = d.ctx.size() - 1 - t.index;
        out.rule = gamma_[pos] ? Rule::IntAx : Rule::LinAx;
        break;
      }
      case TermKind::UnitI: out.rule = Rule::OneI; break;
      case TermKind::Eat: out.rule = Rule::TopI; break;
      case TermKind::Lam: out.rule = Rule::LolliI; break;
      case TermKind::App: out.rule = Rule::LolliE; break;
      case TermKind::Pair: out.rule = Rule::TensorI; break;
      case TermKind::UnitE: out.rule = Rule::OneE; break;
      case TermKind::PairE: out.rule = Rule::TensorE; break;
      case TermKind::Case: out.rule = Rule::PlusE; break;
      case TermKind::ExF: out.rule = Rule::ZeroE; break;
      case TermKind::BangI: out.rule = Rule::BangI; break;
      case TermKind::BangE: out.rule = Rule::BangE; break;
      case TermKind::WithI: out.rule = Rule::WithI; break;
      case TermKind::ProjL: out.rule = Rule::WithE1; break;
      case TermKind::ProjR: out.rule = Rule::WithE2; break;
      case TermKind::InjL: out.rule = Rule::PlusI1; break;
      case TermKind::InjR: out.rule = Rule::PlusI2; break;
    }
    for (std::size_t i = 0; i < k.size(); ++i) out.children.push_back(kid(i));
    return out;
  }

  void push(std::string name, bool intuitionistic) {
    names_.push_back(std::move(name));
    gamma_.push_back(intuitionistic);
  }

 private:
  DillSequent sequent(const Derivation& d) const {
    DillSequent s;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const Usage u = d.usage[i];
      if (gamma_[i]) {
        if (u == Lin01wSemiring::kOne)
          fail(ErrorKind::Defect, "intuitionistic hypothesis used linearly");
        s.gamma.push_back({names_[i], unembed_ty_dill(d.ctx[i].type)});
      } else if (u == Lin01wSemiring::kOmega) {
        fail(ErrorKind::Defect, "linear hypothesis used at w");
      } else if (u == Lin01wSemiring::kOne) {
        s.delta.push_back({names_[i], unembed_ty_dill(d.ctx[i].type)});
      }
    }
    s.goal = unembed_ty_dill(d.type);
    return s;
  }

  std::vector<std::string> names_;
  std::vector<bool> gamma_;
};

void require_dill_types(const Derivation& d) {
  for (const auto& b : d.ctx) unembed_ty_dill(b.type);
  unembed_ty_dill(d.type);
  for (const auto& c : d.children) require_dill_types(c);
}

}  // namespace

DillDerivation lr_to_dill(const Derivation& d, const std::vector<ZoneClass>& partition) {
  if (partition.size() != d.ctx.size())
    fail(ErrorKind::DimensionMismatch, "partition length differs from the context");
  if (partition != partition_of(d.usage))
    fail(ErrorKind::ZoneSplitError, "partition does not match the conclusion usage " +
                                        print(lin01w(), d.usage));
  require_dill_types(d);
  Derivation bu = to_bottom_up(lin01w(), d);
  FromLr tr;
  TyCtx fresh = freshen_names(d.ctx);
  for (std::size_t i = 0; i < fresh.size(); ++i)
    tr.push(fresh[i].name, partition[i] == ZoneClass::Intuitionistic);
  DillDerivation out = tr.run(bu);
  try {
    dill_validate(out);
  } catch (const Error& e) {
    fail(ErrorKind::Defect, std::string("extracted DILL derivation is invalid: ") + e.what());
  }
  return out;
}

DillDerivation lr_to_dill(const Derivation& d) { return lr_to_dill(d, partition_of(d.usage)); }

DillFile parse_dill_file(std::string_view text) {
  ProofFile pf = parse_proof_file(text);
  if (pf.logic != "dill")
    fail(ErrorKind::ParseError, "expected 'logic dill', found 'logic " + pf.logic + "'");
  DillFile out;
  out.bases = pf.bases;
  for (const auto& st : pf.stanzas) {
    DillSequent s;
    try {
      s = parse_dill_sequent(st.sequent, pf.bases);
    } catch (const Error& e) {
      fail(e.kind(), "line " + std::to_string(st.line) + ": " + e.detail());
    }
    out.proofs.push_back(dill_check(s, parse_script(st.script, st.line + 1)));
  }
  return out;
}

std::string print(const DillFile& file) {
  std::string out = "logic dill\n";
  if (!file.bases.empty()) {
    out += "base ";
    for (std::size_t i = 0; i < file.bases.size(); ++i) out += (i ? ", " : "") + file.bases[i];
    out += "\n";
  }
  for (const auto& d : file.proofs) out += "\n" + print(d.seq) + "\n" + print_script(to_script(d));
  return out;
}

}  // namespace lr
