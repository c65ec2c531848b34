#include "lr/traversal.hpp"

namespace lr {

namespace detail {

void env_error(ErrorKind kind, const std::string& msg) { fail(kind, msg); }

bool same_types(const TyCtx& a, const TyCtx& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_type(a[i].type, b[i].type)) return false;
  return true;
}

}  // namespace detail

Derivation var_derivation(const Semiring& sr, const TyCtx& ctx, std::size_t pos) {
  return check(sr, ctx, basis(sr, ctx.size(), pos), tm::var(ctx.size() - 1 - pos),
               ctx[pos].type);
}

Kit<UVar> lvar_kit(const Semiring& sr) {
  Kit<UVar> kit;
  kit.psh = [&sr](const UsageCtx& p, const UVar& v) {
    return uvar_check(sr, v.ctx, p, v.index);
  };
  kit.vr = [](const UVar& v) { return v; };
  kit.tm = [&sr](const UVar& v) {
    return check(sr, v.ctx, v.usage, tm::var(v.ctx.size() - 1 - v.index), v.type);
  };
  kit.wk = [&sr](const UVar& v, const TyCtx& theta) {
    return UVar{concat(v.ctx, theta), v.usage.concat(zeros(sr, theta.size())), v.index, v.type};
  };
  return kit;
}

Kit<Derivation> tm_kit(const Semiring& sr) {
  Kit<Derivation> kit;
  kit.psh = [&sr](const UsageCtx& p, const Derivation& d) { return subuse(sr, p, d); };
  kit.vr = [&sr](const UVar& v) {
    return check(sr, v.ctx, v.usage, tm::var(v.ctx.size() - 1 - v.index), v.type);
  };
  kit.tm = [](const Derivation& d) { return d; };
  kit.wk = [&sr](const Derivation& d, const TyCtx& theta) { return weaken(sr, d, theta); };
  return kit;
}

Derivation ren(const Semiring& sr, const TyCtx& gamma, const UsageCtx& p, const IndexMap& f,
               const Derivation& d) {
  const std::size_t n = d.ctx.size(), m = gamma.size();
  if (p.size() != m) fail(ErrorKind::DimensionMismatch, "ren: |P| differs from the new context");
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t fj = f(j);
    if (fj >= m) fail(ErrorKind::IndexOutOfRange, "ren: map sends a variable out of range");
    if (!same_type(gamma[fj].type, d.ctx[j].type))
      fail(ErrorKind::TypeMismatch, "ren: map is not type-preserving at position " +
                                        std::to_string(j));
  }
  UsageMatrix psi = reindex(identity(sr, m), n, m, f, [](std::size_t k) { return k; });
  UsageCtx qpsi = vec_mat_mul(sr, d.usage, psi);
  if (auto bad = first_leq_failure(sr, p, qpsi)) {
    Error e(ErrorKind::RenUsageError, "P " + print(sr, p) + " is not <| Q I_f " +
                                          print(sr, qpsi) + " at coordinate " +
                                          std::to_string(*bad));
    e.lhs = print(sr, p);
    e.rhs = print(sr, qpsi);
    e.coordinate = *bad;
    throw e;
  }
  std::vector<UVar> act;
  for (std::size_t j = 0; j < n; ++j) act.push_back(UVar{gamma, psi.row(j), f(j), gamma[f(j)].type});
  Env<UVar> env = env_build(sr, gamma, p, d.ctx, d.usage, psi, std::move(act));
  return trav(sr, lvar_kit(sr), env, d);
}

Derivation subuse(const Semiring& sr, const UsageCtx& p, const Derivation& d) {
  return ren(sr, d.ctx, p, [](std::size_t j) { return j; }, d);
}

Derivation weaken(const Semiring& sr, const Derivation& d, const TyCtx& theta) {
  return ren(sr, concat(d.ctx, theta), d.usage.concat(zeros(sr, theta.size())),
             [](std::size_t j) { return j; }, d);
}

Derivation sub(const Semiring& sr, const Env<Derivation>& env, const Derivation& d) {
  return trav(sr, tm_kit(sr), env, d);
}

Env<UVar> identity_env(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage) {
  std::vector<UVar> act;
  for (std::size_t j = 0; j < ctx.size(); ++j)
    act.push_back(UVar{ctx, basis(sr, ctx.size(), j), j, ctx[j].type});
  return env_build(sr, ctx, usage, ctx, usage, identity(sr, ctx.size()), std::move(act));
}

Env<Derivation> identity_sub_env(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage) {
  std::vector<Derivation> act;
  for (std::size_t j = 0; j < ctx.size(); ++j) act.push_back(var_derivation(sr, ctx, j));
  return env_build(sr, ctx, usage, ctx, usage, identity(sr, ctx.size()), std::move(act));
}

Derivation single_subst(const Semiring& sr, const Derivation& m, const Derivation& n,
                        const UsageCtx& r) {
  const std::size_t k = m.ctx.size();
  if (n.ctx.size() != k + 1 || !detail::same_types(TyCtx(n.ctx.begin(), n.ctx.end() - 1), m.ctx) ||
      !same_type(n.ctx.back().type, m.type))
    fail(ErrorKind::TypeMismatch,
         "single_subst: the body's context must be the term's context plus one variable of its "
         "type");
  if (r.size() != k) fail(ErrorKind::DimensionMismatch, "single_subst: |R| differs from |G|");
  UsageCtx q = n.usage.slice(0, k);
  Usage rr = n.usage[k];
  UsageCtx bound = add(sr, scale(sr, rr, m.usage), q);
  if (auto bad = first_leq_failure(sr, r, bound)) {
    Error e(ErrorKind::SingleSubstUsageError,
            "R " + print(sr, r) + " is not <| rP + Q " + print(sr, bound) + " at coordinate " +
                std::to_string(*bad));
    e.lhs = print(sr, r);
    e.rhs = print(sr, bound);
    e.coordinate = *bad;
    throw e;
  }
  UsageMatrix psi = vstack(identity(sr, k), m.usage);
  std::vector<Derivation> act;
  for (std::size_t j = 0; j < k; ++j) act.push_back(var_derivation(sr, m.ctx, j));
  act.push_back(m);
  Env<Derivation> env = env_build(sr, m.ctx, r, n.ctx, n.usage, psi, std::move(act));
  return sub(sr, env, n);
}

Derivation cut1(const Semiring& sr, const Derivation& d1, const Derivation& d2) {
  if (d1.ctx.size() != 1 || d1.usage != UsageCtx{sr.one()} || !same_type(d1.ctx[0].type, d2.type))
    fail(ErrorKind::TypeMismatch, "cut1: the first derivation must be x:A^1 |- B with A the "
                                  "second derivation's type");
  const std::size_t k = d2.ctx.size();
  TyCtx ctx = concat(d2.ctx, d1.ctx);
  UsageCtx usage = zeros(sr, k).concat({sr.one()});
  Derivation weak = ren(sr, ctx, usage, [k](std::size_t) { return k; }, d1);
  return single_subst(sr, d2, weak, d2.usage);
}

}  // namespace lr
