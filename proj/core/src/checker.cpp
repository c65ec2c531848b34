#include "lr/checker.hpp"

#include "checker_internal.hpp"

#include "lr/error.hpp"
#include "lr/parse.hpp"

namespace lr {

namespace {

std::string show(const Semiring& sr, const TyPtr& t) { return t ? print(sr, *t) : "?"; }

// Simple typing. Produces a derivation skeleton: rule, ctx, elaborated term,
// type and children, with no usages yet.
class Elaborator {
 public:
  explicit Elaborator(const Semiring& sr) : sr_(sr) {}

  Derivation synth(const TyCtx& ctx, const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var: {
        Derivation d = node(ctx, t);
        std::size_t pos = t->index < ctx.size() ? ctx.size() - 1 - t->index : ctx.size();
        if (pos >= ctx.size())
          raise(ErrorKind::ScopeError, "variable #" + std::to_string(t->index) +
                                           " is not bound in a context of length " +
                                           std::to_string(ctx.size()));
        d.type = ctx[pos].type;
        return d;
      }
      case TermKind::Lam: {
        if (!t->type) raise(ErrorKind::MissingAnnotation, "lambda without an argument type");
        Derivation body = child(0, [&] { return synth(extend(ctx, t, {t->type}), t->kids[0]); });
        TyPtr a = ty::fun(t->type, body.type);
        return finish(ctx, t, a, std::move(body));
      }
      case TermKind::App: {
        Derivation f = child(0, [&] { return synth(ctx, t->kids[0]); });
        if (f.type->kind != TyKind::Fun)
          raise(ErrorKind::TypeMismatch,
                "applying a term of non-function type " + show(sr_, f.type));
        Derivation a = child(1, [&] { return check(ctx, t->kids[1], f.type->left); });
        TyPtr result = f.type->right;
        return finish(ctx, t, result, std::move(f), std::move(a));
      }
      case TermKind::UnitI: return finish(ctx, t, ty::one());
      case TermKind::Pair:
      case TermKind::WithI: {
        Derivation l = child(0, [&] { return synth(ctx, t->kids[0]); });
        Derivation r = child(1, [&] { return synth(ctx, t->kids[1]); });
        TyPtr a = t->kind == TermKind::Pair ? ty::tensor(l.type, r.type) : ty::with(l.type, r.type);
        return finish(ctx, t, a, std::move(l), std::move(r));
      }
      case TermKind::ProjL:
      case TermKind::ProjR: {
        Derivation s = child(0, [&] { return synth(ctx, t->kids[0]); });
        if (s.type->kind != TyKind::With)
          raise(ErrorKind::TypeMismatch, "projecting from non-& type " + show(sr_, s.type));
        TyPtr a = t->kind == TermKind::ProjL ? s.type->left : s.type->right;
        return finish(ctx, t, a, std::move(s));
      }
      case TermKind::BangI: {
        Derivation s = child(0, [&] { return synth(ctx, t->kids[0]); });
        TyPtr a = ty::bang(t->grade, s.type);
        return finish(ctx, t, a, std::move(s));
      }
      case TermKind::InjL:
      case TermKind::InjR:
      case TermKind::Eat:
        if (t->type) return check(ctx, t, t->type);
        raise(ErrorKind::MissingAnnotation,
              std::string(kind_name(t->kind)) +
                  " needs its type from context; use it where a type is expected");
      default: return elim(ctx, t, t->type);
    }
  }

  Derivation check(const TyCtx& ctx, const TermPtr& t, const TyPtr& goal) {
    switch (t->kind) {
      case TermKind::Lam: {
        if (goal->kind != TyKind::Fun) mismatch(goal, "a function");
        if (t->type && !same_type(t->type, goal->left))
          raise(ErrorKind::TypeMismatch, "lambda argument has type " + show(sr_, t->type) +
                                             " but " + show(sr_, goal->left) + " is expected");
        TermPtr lt = t->type ? t : tm::with_type(t, goal->left);
        Derivation body =
            child(0, [&] { return check(extend(ctx, lt, {goal->left}), t->kids[0], goal->right); });
        return finish(ctx, lt, goal, std::move(body));
      }
      case TermKind::InjL:
      case TermKind::InjR: {
        ascribed(t, goal);
        if (goal->kind != TyKind::Sum) mismatch(goal, "a sum");
        TyPtr a = t->kind == TermKind::InjL ? goal->left : goal->right;
        Derivation s = child(0, [&] { return check(ctx, t->kids[0], a); });
        return finish(ctx, t, goal, std::move(s));
      }
      case TermKind::Eat:
        ascribed(t, goal);
        if (goal->kind != TyKind::Top) mismatch(goal, "Top");
        return finish(ctx, t, goal);
      case TermKind::UnitI:
        if (goal->kind != TyKind::One) mismatch(goal, "I");
        return finish(ctx, t, goal);
      case TermKind::Pair:
      case TermKind::WithI: {
        TyKind want = t->kind == TermKind::Pair ? TyKind::Tensor : TyKind::With;
        if (goal->kind != want) mismatch(goal, want == TyKind::Tensor ? "a tensor" : "a with");
        Derivation l = child(0, [&] { return check(ctx, t->kids[0], goal->left); });
        Derivation r = child(1, [&] { return check(ctx, t->kids[1], goal->right); });
        return finish(ctx, t, goal, std::move(l), std::move(r));
      }
      case TermKind::BangI: {
        if (goal->kind != TyKind::Bang || goal->grade != t->grade)
          mismatch(goal, "![" + sr_.print(t->grade) + "] _");
        Derivation s = child(0, [&] { return check(ctx, t->kids[0], goal->left); });
        return finish(ctx, t, goal, std::move(s));
      }
      default:
        if (has_result_ascription(t->kind)) {
          ascribed(t, goal);
          return elim(ctx, t, goal);
        }
        Derivation d = synth(ctx, t);
        if (!same_type(d.type, goal))
          raise(ErrorKind::TypeMismatch,
                "expected " + show(sr_, goal) + " but the term has type " + show(sr_, d.type));
        return d;
    }
  }

  std::vector<std::size_t> path;

 private:
  [[noreturn]] void raise(ErrorKind kind, const std::string& msg) const {
    Error e(kind, msg);
    e.path = path;
    throw e;
  }

  void ascribed(const TermPtr& t, const TyPtr& goal) const {
    if (t->type && !same_type(t->type, goal))
      raise(ErrorKind::TypeMismatch, "ascription " + show(sr_, t->type) +
                                         " disagrees with expected type " + show(sr_, goal));
  }

  [[noreturn]] void mismatch(const TyPtr& goal, const std::string& shape) const {
    raise(ErrorKind::TypeMismatch,
          "expected " + show(sr_, goal) + " but the term is " + shape);
  }

  template <class F>
  Derivation child(std::size_t i, F&& f) {
    path.push_back(i);
    Derivation d = f();
    path.pop_back();
    return d;
  }

  static TyCtx extend(const TyCtx& ctx, const TermPtr& t, std::vector<TyPtr> types) {
    TyCtx out = ctx;
    for (std::size_t i = 0; i < types.size(); ++i) {
      std::string n = i < t->binders.size() ? t->binders[i] : "x";
      out.push_back({n, types[i]});
    }
    return out;
  }

  static Derivation node(const TyCtx& ctx, const TermPtr& t) {
    Derivation d;
    d.rule = std::string(kind_name(t->kind));
    d.ctx = ctx;
    d.term = t;
    return d;
  }

  // Premises are moved in; a braced list would copy every subtree.
  template <class... Premise>
  static Derivation finish(const TyCtx& ctx, const TermPtr& t, TyPtr type, Premise&&... premise) {
    std::vector<Derivation> kids;
    kids.reserve(sizeof...(premise));
    (kids.push_back(std::forward<Premise>(premise)), ...);
    std::vector<TermPtr> terms;
    for (const auto& k : kids) terms.push_back(k.term);
    TermPtr nt = t;
    if (!terms.empty()) nt = tm::with_kids(t, std::move(terms));
    if (has_result_ascription(t->kind)) nt = tm::with_type(nt, type);
    Derivation d = node(ctx, nt);
    d.type = std::move(type);
    d.children = std::move(kids);
    return d;
  }

  // Eliminators; `goal` null means synthesize the result from the body.
  Derivation elim(const TyCtx& ctx, const TermPtr& t, const TyPtr& goal) {
    auto body = [&](std::size_t i, const TyCtx& c) {
      return child(i, [&] { return goal ? check(c, t->kids[i], goal) : synth(c, t->kids[i]); });
    };
    Derivation s = child(0, [&] { return synth(ctx, t->kids[0]); });
    const TyPtr& st = s.type;
    switch (t->kind) {
      case TermKind::UnitE: {
        if (st->kind != TyKind::One) raise(ErrorKind::TypeMismatch, "let () on " + show(sr_, st));
        Derivation b = body(1, ctx);
        TyPtr result = b.type;
        return finish(ctx, t, result, std::move(s), std::move(b));
      }
      case TermKind::PairE: {
        if (st->kind != TyKind::Tensor)
          raise(ErrorKind::TypeMismatch, "let (x, y) on " + show(sr_, st));
        Derivation b = body(1, extend(ctx, t, {st->left, st->right}));
        TyPtr result = b.type;
        return finish(ctx, t, result, std::move(s), std::move(b));
      }
      case TermKind::BangE: {
        if (st->kind != TyKind::Bang) raise(ErrorKind::TypeMismatch, "let !x on " + show(sr_, st));
        Derivation b = body(1, extend(ctx, t, {st->left}));
        TyPtr result = b.type;
        return finish(ctx, t, result, std::move(s), std::move(b));
      }
      case TermKind::ExF: {
        if (st->kind != TyKind::Zero) raise(ErrorKind::TypeMismatch, "absurd on " + show(sr_, st));
        if (!goal)
          raise(ErrorKind::MissingAnnotation, "absurd needs a result type: write (absurd t : C)");
        return finish(ctx, t, goal, std::move(s));
      }
      case TermKind::Case: {
        if (st->kind != TyKind::Sum) raise(ErrorKind::TypeMismatch, "case on " + show(sr_, st));
        Derivation l = body(1, extend(ctx, t, {st->left}));
        TyPtr result = l.type;
        Derivation r =
            child(2, [&] { return check(extend_right(ctx, t, st->right), t->kids[2], result); });
        return finish(ctx, t, result, std::move(s), std::move(l), std::move(r));
      }
      default: raise(ErrorKind::Defect, "not an eliminator");
    }
  }

  static TyCtx extend_right(const TyCtx& ctx, const TermPtr& t, const TyPtr& b) {
    TyCtx out = ctx;
    out.push_back({t->binders.size() > 1 ? t->binders[1] : "y", b});
    return out;
  }

  const Semiring& sr_;
};

// Usage pass over a skeleton, reading splits from the term.
class Assigner {
 public:
  explicit Assigner(const Semiring& sr) : sr_(sr) {}

  Derivation run(const Derivation& skel, const UsageCtx& r) {
    Derivation d;
    d.rule = skel.rule;
    d.ctx = skel.ctx;
    d.term = skel.term;
    d.type = skel.type;
    d.facts = skel.facts;
    d.usage = r;
    const Term& t = *skel.term;
    const std::size_t n = skel.ctx.size();
    if (r.size() != n) raise(ErrorKind::DimensionMismatch, d, "usage context has length " +
                                                                  std::to_string(r.size()) +
                                                                  ", context has " +
                                                                  std::to_string(n));
    std::vector<UsageCtx> kid_usage;
    switch (t.kind) {
      case TermKind::Var: {
        std::size_t pos = n - 1 - t.index;
        leq_fact(d, r, basis(sr_, n, pos), "variable");
        break;
      }
      case TermKind::UnitI: leq_fact(d, r, zeros(sr_, n), "zero vector"); break;
      case TermKind::Eat: break;
      case TermKind::Lam: kid_usage = {r.concat({sr_.one()})}; break;
      case TermKind::WithI: kid_usage = {r, r}; break;
      case TermKind::ProjL:
      case TermKind::ProjR:
      case TermKind::InjL:
      case TermKind::InjR: kid_usage = {r}; break;
      case TermKind::BangI: {
        UsageCtx p = split(d, t.split_p, n, "P");
        UsageCtx rp = scale(sr_, t.grade, p);
        d.facts.push_back({Fact::Kind::Scale, p, {}, t.grade, rp});
        leq_fact(d, r, rp, "r * P");
        kid_usage = {p};
        break;
      }
      default: {
        UsageCtx p = split(d, t.split_p, n, "P");
        UsageCtx q = split(d, t.split_q, n, "Q");
        UsageCtx s = add(sr_, p, q);
        d.facts.push_back({Fact::Kind::Add, p, q, {}, s});
        leq_fact(d, r, s, "P + Q");
        const Usage one = sr_.one();
        switch (t.kind) {
          case TermKind::App:
          case TermKind::Pair:
          case TermKind::UnitE: kid_usage = {p, q}; break;
          case TermKind::PairE: kid_usage = {p, q.concat({one, one})}; break;
          case TermKind::ExF: kid_usage = {p}; break;
          case TermKind::Case: kid_usage = {p, q.concat({one}), q.concat({one})}; break;
          case TermKind::BangE:
            kid_usage = {p, q.concat({skel.children[0].type->grade})};
            break;
          default: raise(ErrorKind::Defect, d, "unexpected term kind");
        }
      }
    }
    for (std::size_t i = 0; i < kid_usage.size(); ++i) {
      path_.push_back(i);
      d.children.push_back(run(skel.children[i], kid_usage[i]));
      path_.pop_back();
    }
    return d;
  }

 private:
  [[noreturn]] void raise(ErrorKind kind, const Derivation& d, const std::string& msg) const {
    Error e(kind, msg);
    e.rule = d.rule;
    e.path = path_;
    throw e;
  }

  UsageCtx split(const Derivation& d, const std::optional<UsageCtx>& v, std::size_t n,
                 const char* which) const {
    if (!v)
      raise(ErrorKind::MissingAnnotation, d,
            std::string(which) + " split missing; annotate with @{...} or use --infer");
    if (v->size() != n)
      raise(ErrorKind::DimensionMismatch, d,
            std::string(which) + " split " + print(sr_, *v) + " has length " +
                std::to_string(v->size()) + ", context has " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
      if (!sr_.contains((*v)[i]))
        raise(ErrorKind::UsageMismatch, d, "split entry out of the carrier");
    return *v;
  }

  void leq_fact(Derivation& d, const UsageCtx& lhs, const UsageCtx& rhs, const char* what) {
    d.facts.push_back({Fact::Kind::Leq, lhs, rhs, {}, {}});
    if (auto bad = first_leq_failure(sr_, lhs, rhs)) {
      Error e(ErrorKind::UsageMismatch,
              "R " + print(sr_, lhs) + " is not <| " + what + " " + print(sr_, rhs) + ": " +
                  sr_.print(lhs[*bad]) + " is not <| " + sr_.print(rhs[*bad]) +
                  " at coordinate " + std::to_string(*bad));
      e.rule = d.rule;
      e.path = path_;
      e.lhs = print(sr_, lhs);
      e.rhs = print(sr_, rhs);
      e.coordinate = *bad;
      throw e;
    }
  }

  const Semiring& sr_;
  std::vector<std::size_t> path_;
};

}  // namespace

Derivation elaborate_skeleton(const Semiring& sr, const TyCtx& ctx, const TermPtr& term,
                              const TyPtr& type) {
  Elaborator el(sr);
  if (type) return el.check(ctx, term, type);
  return el.synth(ctx, term);
}

Derivation assign_usages(const Semiring& sr, const Derivation& skel, const UsageCtx& usage) {
  return Assigner(sr).run(skel, usage);
}

TermPtr elaborate(const Semiring& sr, const TyCtx& ctx, const TermPtr& term, const TyPtr& type) {
  return elaborate_skeleton(sr, ctx, term, type).term;
}

Derivation check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage, const TermPtr& term,
                 const TyPtr& type) {
  return assign_usages(sr, elaborate_skeleton(sr, ctx, term, type), usage);
}

namespace {

bool same_ctx(const TyCtx& a, const TyCtx& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_type(a[i].type, b[i].type)) return false;
  return true;
}

bool same_node(const Derivation& a, const Derivation& b) {
  return a.rule == b.rule && same_ctx(a.ctx, b.ctx) && a.usage == b.usage &&
         same_type(a.type, b.type) && a.facts == b.facts &&
         a.children.size() == b.children.size() && same_term(*a.term, *b.term, true);
}

bool diff(const Derivation& a, const Derivation& b, std::vector<std::size_t>& path) {
  if (!same_node(a, b)) return true;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    path.push_back(i);
    if (diff(a.children[i], b.children[i], path)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<std::size_t>> first_difference(const Derivation& a,
                                                         const Derivation& b) {
  std::vector<std::size_t> path;
  if (diff(a, b, path)) return path;
  return std::nullopt;
}

bool same_derivation(const Derivation& a, const Derivation& b) {
  return !first_difference(a, b).has_value();
}

std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const auto& c : d.children) n += derivation_size(c);
  return n;
}

void validate(const Semiring& sr, const Derivation& d) {
  Derivation again = check(sr, d.ctx, d.usage, d.term, d.type);
  if (auto p = first_difference(again, d)) {
    const Derivation* node = &d;
    for (std::size_t i : *p) node = &node->children[i];
    Error e(ErrorKind::RuleMismatch,
            "node does not follow its rule: " + node->rule + " at " +
                print(sr, *node->term, names_of(freshen_names(node->ctx))));
    e.rule = node->rule;
    e.path = *p;
    throw e;
  }
}

std::string print(const Semiring& sr, const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::Leq: return print(sr, f.left) + " <| " + print(sr, f.right);
    case Fact::Kind::Add:
      return print(sr, f.left) + " + " + print(sr, f.right) + " = " + print(sr, f.result);
    case Fact::Kind::Scale:
      return sr.print(f.scalar) + " * " + print(sr, f.left) + " = " + print(sr, f.result);
  }
  return "";
}

namespace {

void render_into(const Semiring& sr, const Derivation& d, std::size_t depth, std::string& out) {
  TyCtx ctx = freshen_names(d.ctx);
  out += std::string(depth * 2, ' ') + "[" + d.rule + "] " + print_context(sr, ctx, d.usage);
  out += (ctx.empty() ? "|- " : " |- ") + print(sr, *d.term, names_of(ctx)) + " : " +
         print(sr, *d.type);
  for (std::size_t i = 0; i < d.facts.size(); ++i)
    out += (i ? ", " : "    {") + print(sr, d.facts[i]);
  if (!d.facts.empty()) out += "}";
  out += "\n";
  for (const auto& c : d.children) render_into(sr, c, depth + 1, out);
}

}  // namespace

std::string render(const Semiring& sr, const Derivation& d) {
  std::string out;
  render_into(sr, d, 0, out);
  return out;
}

}  // namespace lr
