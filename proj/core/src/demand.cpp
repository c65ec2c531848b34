#include <algorithm>

#include "checker_internal.hpp"
#include "lr/error.hpp"

namespace lr {

bool Demand::admits(const Semiring& sr, const UsageCtx& r) const {
  return std::any_of(maximal.begin(), maximal.end(),
                     [&](const UsageCtx& d) { return leq(sr, r, d); });
}

namespace {

using VecSet = std::vector<UsageCtx>;

VecSet prune(const Semiring& sr, VecSet in) {
  std::sort(in.begin(), in.end());
  in.erase(std::unique(in.begin(), in.end()), in.end());
  VecSet out;
  for (const auto& v : in) {
    bool dominated = std::any_of(in.begin(), in.end(), [&](const UsageCtx& w) {
      return w != v && leq(sr, v, w);
    });
    if (!dominated) out.push_back(v);
  }
  return out;
}

// The demand of a node, plus the operand sets its splits are drawn from.
struct DemandNode {
  VecSet set;
  VecSet left;            // admissible P (or the scaled premise for !-I)
  VecSet right;           // admissible Q
  bool q_any = false;     // Q unconstrained (0-E over a finite carrier)
  std::vector<DemandNode> kids;
};

class Synth {
 public:
  explicit Synth(const Semiring& sr) : sr_(sr) {}

  DemandNode run(const Derivation& s) {
    DemandNode out;
    path_.push_back(0);
    for (std::size_t i = 0; i < s.children.size(); ++i) {
      path_.back() = i;
      out.kids.push_back(run(s.children[i]));
    }
    path_.pop_back();
    const Term& t = *s.term;
    const std::size_t n = s.ctx.size();
    auto kid = [&](std::size_t i) -> const VecSet& { return out.kids[i].set; };
    const Usage one = sr_.one();
    switch (t.kind) {
      case TermKind::Var: out.set = {basis(sr_, n, n - 1 - t.index)}; break;
      case TermKind::UnitI: out.set = {zeros(sr_, n)}; break;
      case TermKind::Eat: out.set = anything(s, n); break;
      case TermKind::Lam: out.set = project(s, kid(0), {one}, n); break;
      case TermKind::WithI: out.set = meet(s, kid(0), kid(1)); break;
      case TermKind::ProjL:
      case TermKind::ProjR:
      case TermKind::InjL:
      case TermKind::InjR: out.set = kid(0); break;
      case TermKind::BangI: {
        out.left = kid(0);
        for (const auto& d : kid(0)) out.set.push_back(scale(sr_, t.grade, d));
        out.set = prune(sr_, out.set);
        break;
      }
      case TermKind::ExF: {
        out.left = kid(0);
        if (sr_.enumerable()) {
          out.q_any = true;
          out.right = anything(s, n);
        } else {
          out.right = {zeros(sr_, n)};
        }
        out.set = sum(out.left, out.right);
        break;
      }
      default: {
        out.left = kid(0);
        switch (t.kind) {
          case TermKind::App:
          case TermKind::Pair:
          case TermKind::UnitE: out.right = kid(1); break;
          case TermKind::PairE: out.right = project(s, kid(1), {one, one}, n); break;
          case TermKind::BangE:
            out.right = project(s, kid(1), {s.children[0].type->grade}, n);
            break;
          case TermKind::Case: {
            VecSet l = project(s, kid(1), {one}, n);
            VecSet r = project(s, kid(2), {one}, n);
            out.right = meet(s, l, r);
            break;
          }
          default: raise(ErrorKind::Defect, s, "unexpected term kind");
        }
        out.set = sum(out.left, out.right);
      }
    }
    return out;
  }

 private:
  [[noreturn]] void raise(ErrorKind kind, const Derivation& s, const std::string& msg) const {
    Error e(kind, msg);
    e.rule = s.rule;
    e.path = path_;
    throw e;
  }

  VecSet sum(const VecSet& a, const VecSet& b) const {
    VecSet out;
    for (const auto& x : a)
      for (const auto& y : b) out.push_back(add(sr_, x, y));
    return prune(sr_, out);
  }

  // Every usage context of length n, as its maximal elements.
  VecSet anything(const Derivation& s, std::size_t n) const {
    if (auto t = sr_.top()) return {UsageCtx::filled(n, *t)};
    if (!sr_.enumerable())
      raise(ErrorKind::NoMeet, s, std::string(sr_.name()) +
                                      " has no top element, so this node has no finite demand; "
                                      "annotate it and use checking mode");
    std::vector<Usage> maxes = sr_.maximal_elements();
    VecSet out = {UsageCtx{}};
    for (std::size_t i = 0; i < n; ++i) {
      VecSet next;
      for (const auto& v : out)
        for (Usage m : maxes) next.push_back(v.concat({m}));
      out = std::move(next);
    }
    return out;
  }

  // Keeps the demands under which `bound` fits the trailing binder slots,
  // restricted to the outer context.
  VecSet project(const Derivation& s, const VecSet& in, const std::vector<Usage>& bound,
                 std::size_t n) const {
    VecSet out;
    UsageCtx b(bound);
    for (const auto& d : in)
      if (leq(sr_, b, d.slice(n, bound.size()))) out.push_back(d.slice(0, n));
    if (out.empty()) {
      Error e(ErrorKind::BoundUsageError,
              "bound variable annotated " + print(sr_, b) +
                  " is used in a way no demand of the body allows");
      e.rule = s.rule;
      e.path = path_;
      e.lhs = print(sr_, b);
      if (!in.empty()) e.rhs = print(sr_, in.front().slice(n, bound.size()));
      throw e;
    }
    return prune(sr_, out);
  }

  VecSet meet(const Derivation& s, const VecSet& a, const VecSet& b) const {
    VecSet out;
    bool missing = false;
    for (const auto& x : a)
      for (const auto& y : b) {
        UsageCtx m;
        bool ok = true;
        for (std::size_t i = 0; i < x.size() && ok; ++i) {
          if (auto u = sr_.meet(x[i], y[i])) m.push_back(*u);
          else ok = false;
        }
        if (ok) out.push_back(m);
        else missing = true;
      }
    if (out.empty()) {
      if (missing && !sr_.enumerable())
        raise(ErrorKind::NoMeet, s,
              "the branches demand " + print(sr_, a.front()) + " and " + print(sr_, b.front()) +
                  ", which have no meet in " + std::string(sr_.name()) +
                  "; annotate this node explicitly");
      raise(ErrorKind::NoMeet, s, "the branches have no common usage context");
    }
    return prune(sr_, out);
  }

  const Semiring& sr_;
  std::vector<std::size_t> path_;
};

// Chooses canonical splits top-down. Over finite carriers each coordinate
// first tries an exact fact from the bottom-up tables.
class Annotator {
 public:
  explicit Annotator(const Semiring& sr) : sr_(sr) {
    if (auto e = sr.elements()) elems_ = *e;
  }

  TermPtr run(const Derivation& s, const DemandNode& dn, const UsageCtx& r) {
    const Term& t = *s.term;
    const Usage one = sr_.one();
    std::vector<UsageCtx> kid_usage;
    std::optional<UsageCtx> p, q;
    switch (t.kind) {
      case TermKind::Var:
      case TermKind::UnitI:
      case TermKind::Eat: return s.term;
      case TermKind::Lam: kid_usage = {r.concat({one})}; break;
      case TermKind::WithI: kid_usage = {r, r}; break;
      case TermKind::ProjL:
      case TermKind::ProjR:
      case TermKind::InjL:
      case TermKind::InjR: kid_usage = {r}; break;
      case TermKind::BangI:
        p = choose_scale(t.grade, dn.left, r);
        kid_usage = {*p};
        break;
      default: {
        auto [pp, qq] = choose_split(dn.left, dn.right, dn.q_any, r);
        p = pp;
        q = qq;
        switch (t.kind) {
          case TermKind::App:
          case TermKind::Pair:
          case TermKind::UnitE: kid_usage = {pp, qq}; break;
          case TermKind::PairE: kid_usage = {pp, qq.concat({one, one})}; break;
          case TermKind::ExF: kid_usage = {pp}; break;
          case TermKind::Case: kid_usage = {pp, qq.concat({one}), qq.concat({one})}; break;
          case TermKind::BangE:
            kid_usage = {pp, qq.concat({s.children[0].type->grade})};
            break;
          default: break;
        }
      }
    }
    std::vector<TermPtr> kids;
    for (std::size_t i = 0; i < kid_usage.size(); ++i)
      kids.push_back(run(s.children[i], dn.kids[i], kid_usage[i]));
    TermPtr out = tm::with_kids(s.term, std::move(kids));
    if (p) out = tm::with_split(out, p, q);
    return out;
  }

 private:
  std::pair<UsageCtx, UsageCtx> choose_split(const VecSet& ps, const VecSet& qs, bool q_any,
                                             const UsageCtx& r) const {
    const std::size_t n = r.size();
    if (!elems_.empty()) {
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& d1 : ps) {
          for (std::size_t j = 0; j < (q_any ? 1 : qs.size()); ++j) {
            UsageCtx p, q;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
              auto fits_q = [&](Usage u) { return q_any || sr_.leq(u, qs[j][i]); };
              ok = false;
              for (Usage a : elems_) {
                if (!sr_.leq(a, d1[i])) continue;
                for (Usage b : elems_) {
                  if (!fits_q(b)) continue;
                  Usage s = sr_.add(a, b);
                  bool good = pass == 0 ? sr_.bottom_up_add(a, b) && s == r[i] : sr_.leq(r[i], s);
                  if (good) {
                    p.push_back(a);
                    q.push_back(b);
                    ok = true;
                    break;
                  }
                }
                if (ok) break;
              }
            }
            if (ok) return {p, q};
          }
        }
      }
    } else {
      for (const auto& d1 : ps)
        for (const auto& d2 : qs)
          if (leq(sr_, r, add(sr_, d1, d2))) return {d1, d2};
    }
    fail(ErrorKind::Defect, "no split found for an admissible usage context");
  }

  UsageCtx choose_scale(Usage rr, const VecSet& ps, const UsageCtx& r) const {
    const std::size_t n = r.size();
    if (!elems_.empty()) {
      for (const auto& d : ps) {
        UsageCtx p;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
          std::optional<Usage> pick;
          // Exact table entry, then a table entry discarding to zero, then anything.
          for (int pass = 0; pass < 3 && !pick; ++pass) {
            for (Usage a : elems_) {
              if (!sr_.leq(a, d[i])) continue;
              Usage m = sr_.mul(rr, a);
              bool good = pass == 0   ? sr_.bottom_up_mul(rr, a) && m == r[i]
                          : pass == 1 ? sr_.bottom_up_mul(rr, a) && m == sr_.zero() &&
                                            sr_.leq(r[i], m)
                                      : sr_.leq(r[i], m);
              if (good) {
                pick = a;
                break;
              }
            }
          }
          if (pick) p.push_back(*pick);
          else ok = false;
        }
        if (ok) return p;
      }
    } else {
      for (const auto& d : ps)
        if (leq(sr_, r, scale(sr_, rr, d))) return d;
    }
    fail(ErrorKind::Defect, "no premise usage found for an admissible !-I conclusion");
  }

  const Semiring& sr_;
  std::vector<Usage> elems_;
};

}  // namespace

Demand synthesize_demand(const Semiring& sr, const TyCtx& ctx, const TermPtr& term,
                         const TyPtr& type) {
  Derivation skel = elaborate_skeleton(sr, ctx, erase(term), type);
  return Demand{Synth(sr).run(skel).set};
}

Derivation infer_check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage,
                       const TermPtr& term, const TyPtr& type) {
  if (usage.size() != ctx.size())
    fail(ErrorKind::DimensionMismatch, "usage context has length " + std::to_string(usage.size()) +
                                           ", context has " + std::to_string(ctx.size()));
  Derivation skel = elaborate_skeleton(sr, ctx, erase(term), type);
  DemandNode dn = Synth(sr).run(skel);
  Demand demand{dn.set};
  if (!demand.admits(sr, usage)) {
    // Report against the demand that fails at the latest coordinate.
    const UsageCtx* best = &dn.set.front();
    std::size_t best_at = 0;
    for (const auto& d : dn.set) {
      std::size_t at = *first_leq_failure(sr, usage, d);
      if (at >= best_at) {
        best_at = at;
        best = &d;
      }
    }
    Error e(ErrorKind::UsageMismatch,
            "R " + print(sr, usage) + " is not <| demand " + print(sr, *best) + ": " +
                sr.print(usage[best_at]) + " is not <| " + sr.print((*best)[best_at]) +
                " at coordinate " + std::to_string(best_at));
    e.rule = skel.rule;
    e.lhs = print(sr, usage);
    e.rhs = print(sr, *best);
    e.coordinate = best_at;
    throw e;
  }
  TermPtr annotated = Annotator(sr).run(skel, dn, usage);
  return check(sr, ctx, usage, annotated, type);
}

Derivation to_bottom_up(const Semiring& sr, const Derivation& d) {
  return infer_check(sr, d.ctx, d.usage, erase(d.term), d.type);
}

namespace {

bool bottom_up_at(const Semiring& sr, const Derivation& d, bool allow_discard,
                  std::vector<std::size_t>& path, std::string* why) {
  auto report = [&](const Fact& f, const std::string& what) {
    if (why) {
      std::string p;
      for (std::size_t i : path) p += "/" + std::to_string(i);
      *why = what + " at [" + d.rule + "] path " + (p.empty() ? "/" : p) + ": " + print(sr, f);
    }
    return false;
  };
  const bool leaf = d.children.empty();
  const Fact* scale_fact = nullptr;
  for (const auto& f : d.facts)
    if (f.kind == Fact::Kind::Scale) scale_fact = &f;
  for (const auto& f : d.facts) {
    switch (f.kind) {
      case Fact::Kind::Add:
        for (std::size_t i = 0; i < f.left.size(); ++i)
          if (!sr.bottom_up_add(f.left[i], f.right[i]))
            return report(f, "addition outside the bottom-up table");
        break;
      case Fact::Kind::Scale:
        for (std::size_t i = 0; i < f.left.size(); ++i)
          if (!sr.bottom_up_mul(f.scalar, f.left[i]))
            return report(f, "multiplication outside the bottom-up table");
        break;
      case Fact::Kind::Leq:
        if (leaf) break;
        for (std::size_t i = 0; i < f.left.size(); ++i) {
          if (f.left[i] == f.right[i]) continue;
          bool discard = allow_discard && scale_fact && f.right[i] == sr.zero();
          if (!discard) return report(f, "non-reflexive inequality at an interior node");
        }
        break;
    }
  }
  for (std::size_t i = 0; i < d.children.size(); ++i) {
    path.push_back(i);
    if (!bottom_up_at(sr, d.children[i], allow_discard, path, why)) return false;
    path.pop_back();
  }
  return true;
}

}  // namespace

bool is_bottom_up(const Semiring& sr, const Derivation& d, bool allow_discard, std::string* why) {
  std::vector<std::size_t> path;
  return bottom_up_at(sr, d, allow_discard, path, why);
}

}  // namespace lr
