#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lr/checker.hpp"
#include "lr/error.hpp"
#include "lr/linalg.hpp"
#include "lr/syntax.hpp"

namespace lr {

/// Operations over a family of "stuff" indexed by (context, usage, type).
template <class Stuff>
struct Kit {
  /// Stuff at Q to stuff at P, given P <| Q.
  std::function<Stuff(const UsageCtx& p, const Stuff&)> psh;
  std::function<Stuff(const UVar&)> vr;
  std::function<Derivation(const Stuff&)> tm;
  /// Stuff over (ctx, P) to stuff over (ctx ++ theta, P ++ 0).
  std::function<Stuff(const Stuff&, const TyCtx& theta)> wk;
};

inline const TyCtx& stuff_ctx(const UVar& v) { return v.ctx; }
inline const UsageCtx& stuff_usage(const UVar& v) { return v.usage; }
inline const TyPtr& stuff_type(const UVar& v) { return v.type; }
inline const TyCtx& stuff_ctx(const Derivation& d) { return d.ctx; }
inline const UsageCtx& stuff_usage(const Derivation& d) { return d.usage; }
inline const TyPtr& stuff_type(const Derivation& d) { return d.type; }

/// From source (src, P) to target (tgt, Q): psi has one row per target entry
/// and one column per source entry; act[j] is stuff over src at row j of psi.
template <class Stuff>
struct Env {
  TyCtx src;
  UsageCtx p;
  TyCtx tgt;
  UsageCtx q;
  UsageMatrix psi;
  std::vector<Stuff> act;
};

Kit<UVar> lvar_kit(const Semiring& sr);
Kit<Derivation> tm_kit(const Semiring& sr);

namespace detail {

[[noreturn]] void env_error(ErrorKind kind, const std::string& msg);
bool same_types(const TyCtx& a, const TyCtx& b);

}  // namespace detail

/// Validates dimensions, P <| Q psi (EnvUsageError) and every act entry's
/// context, usage row and type (EnvActMismatch).
template <class Stuff>
Env<Stuff> env_build(const Semiring& sr, TyCtx src, UsageCtx p, TyCtx tgt, UsageCtx q,
                     UsageMatrix psi, std::vector<Stuff> act) {
  if (psi.rows() != tgt.size() || psi.cols() != src.size() || p.size() != src.size() ||
      q.size() != tgt.size() || act.size() != tgt.size())
    detail::env_error(ErrorKind::DimensionMismatch, "environment dimensions disagree");
  UsageCtx qpsi = vec_mat_mul(sr, q, psi);
  if (auto bad = first_leq_failure(sr, p, qpsi)) {
    Error e(ErrorKind::EnvUsageError,
            "P " + print(sr, p) + " is not <| Q psi " + print(sr, qpsi));
    e.lhs = print(sr, p);
    e.rhs = print(sr, qpsi);
    e.coordinate = *bad;
    throw e;
  }
  for (std::size_t j = 0; j < act.size(); ++j) {
    const Stuff& s = act[j];
    if (!detail::same_types(stuff_ctx(s), src) || stuff_usage(s) != psi.row(j) ||
        !same_type(stuff_type(s), tgt[j].type))
      detail::env_error(ErrorKind::EnvActMismatch,
                        "act entry " + std::to_string(j) + " has usage " +
                            print(sr, stuff_usage(s)) + " but row " + std::to_string(j) +
                            " of psi is " + print(sr, psi.row(j)));
  }
  return Env<Stuff>{std::move(src), std::move(p), std::move(tgt), std::move(q), std::move(psi),
                    std::move(act)};
}

/// Extends env from (src, P) -> (tgt, Q) to (src ++ theta, P ++ r) ->
/// (tgt ++ theta, Q ++ r) with psi' = block_diag(psi, I).
template <class Stuff>
Env<Stuff> bind(const Semiring& sr, const Kit<Stuff>& kit, const Env<Stuff>& env,
                const TyCtx& theta, const UsageCtx& r) {
  if (r.size() != theta.size())
    detail::env_error(ErrorKind::DimensionMismatch, "bind: |R| differs from |Theta|");
  Env<Stuff> out;
  out.src = concat(env.src, theta);
  out.tgt = concat(env.tgt, theta);
  out.p = env.p.concat(r);
  out.q = env.q.concat(r);
  out.psi = block_diag(sr, env.psi, identity(sr, theta.size()));
  for (const auto& a : env.act) out.act.push_back(kit.wk(a, theta));
  const std::size_t m = env.src.size();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    UsageCtx row = zeros(sr, m).concat(basis(sr, theta.size(), i));
    out.act.push_back(kit.vr(uvar_check(sr, out.src, row, m + i)));
  }
  return out;
}

namespace detail {

// Rebuilds the term of source node `d` over env.src at target usage `p`.
template <class Stuff>
TermPtr trav_rec(const Semiring& sr, const Kit<Stuff>& kit, const Env<Stuff>& env,
                 const Derivation& d, const UsageCtx& p) {
  const Term& t = *d.term;
  if (t.kind == TermKind::Var) {
    const std::size_t pos = env.tgt.size() - 1 - t.index;
    return kit.tm(kit.psh(p, env.act[pos])).term;
  }
  std::optional<UsageCtx> sp, sq;
  if (t.split_p) sp = vec_mat_mul(sr, *t.split_p, env.psi);
  if (t.split_q) sq = vec_mat_mul(sr, *t.split_q, env.psi);
  std::vector<TermPtr> kids;
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    const Derivation& c = d.children[i];
    const std::size_t k = c.ctx.size() - env.tgt.size();
    // Source usage of the child on the outer context, and its target image.
    // Rules without a split hand their own usage to every premise.
    UsageCtx outer = c.usage.slice(0, env.tgt.size());
    UsageCtx image = sp ? vec_mat_mul(sr, outer, env.psi) : p;
    if (k == 0) {
      kids.push_back(trav_rec(sr, kit, env, c, image));
      continue;
    }
    TyCtx theta(c.ctx.end() - k, c.ctx.end());
    UsageCtx bound = c.usage.slice(env.tgt.size(), k);
    Env<Stuff> inner = env;
    inner.p = image;
    inner.q = outer;
    Env<Stuff> bound_env = lr::bind(sr, kit, inner, theta, bound);
    kids.push_back(trav_rec(sr, kit, bound_env, c, image.concat(bound)));
  }
  TermPtr out = kids.empty() ? d.term : tm::with_kids(d.term, std::move(kids));
  if (sp) out = tm::with_split(out, sp, sq);
  return out;
}

}  // namespace detail

/// The traversal theorem: d over (env.tgt, env.q) becomes a derivation over
/// (env.src, env.p) of the same type.
template <class Stuff>
Derivation trav(const Semiring& sr, const Kit<Stuff>& kit, const Env<Stuff>& env,
                const Derivation& d) {
  if (!detail::same_types(d.ctx, env.tgt) || d.usage != env.q)
    detail::env_error(ErrorKind::EnvActMismatch,
                      "derivation conclusion does not match the environment's target");
  TermPtr t = detail::trav_rec(sr, kit, env, d, env.p);
  try {
    return check(sr, env.src, env.p, t, d.type);
  } catch (const Error& e) {
    fail(ErrorKind::Defect,
         std::string("traversal produced an ill-formed derivation: ") + e.what());
  }
}

/// Renaming along f: positions of d.ctx to positions of gamma. Requires
/// P <| Q I_{f x id} (RenUsageError) and matching types (TypeMismatch).
Derivation ren(const Semiring& sr, const TyCtx& gamma, const UsageCtx& p, const IndexMap& f,
               const Derivation& d);
/// P <| d.usage, then ren along the identity.
Derivation subuse(const Semiring& sr, const UsageCtx& p, const Derivation& d);
/// Weakening: appends theta at usage zero (ren along the inclusion).
Derivation weaken(const Semiring& sr, const Derivation& d, const TyCtx& theta);
Derivation sub(const Semiring& sr, const Env<Derivation>& env, const Derivation& d);
/// The identity renaming environment over (ctx, usage).
Env<UVar> identity_env(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage);
/// The identity substitution environment: act[j] is the variable j.
Env<Derivation> identity_sub_env(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage);
/// Derivation of ctx <j| |- x_j for the position j.
Derivation var_derivation(const Semiring& sr, const TyCtx& ctx, std::size_t pos);

/// m over (G, P) |- A; n over (G, x:A) (Q, r) |- B; R <| rP + Q
/// (SingleSubstUsageError otherwise). Gives G R |- B.
Derivation single_subst(const Semiring& sr, const Derivation& m, const Derivation& n,
                        const UsageCtx& r);
/// d1: x:A^1 |- B and d2: G R |- A give G R |- B.
Derivation cut1(const Semiring& sr, const Derivation& d1, const Derivation& d2);

}  // namespace lr
