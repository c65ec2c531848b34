#include "gen.hpp"

#include <algorithm>
#include <stdexcept>

#include "lr/error.hpp"

namespace lrtest {

using lr::TermPtr;
using lr::TyKind;
using lr::TyPtr;
namespace ty = lr::ty;
namespace tm = lr::tm;

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

lr::Usage random_below(const lr::Semiring& sr, Rng& rng, lr::Usage u) {
  auto elems = sr.elements();
  if (!elems) return u;
  std::vector<lr::Usage> below;
  for (lr::Usage v : *elems)
    if (sr.leq(v, u)) below.push_back(v);
  return below[pick(rng, below.size())];
}

lr::UsageCtx random_below(const lr::Semiring& sr, Rng& rng, const lr::UsageCtx& u) {
  lr::UsageCtx out = u;
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = random_below(sr, rng, u[i]);
  return out;
}

lr::Usage random_usage(const lr::Semiring& sr, Rng& rng) {
  if (auto elems = sr.elements()) return (*elems)[pick(rng, elems->size())];
  return lr::Usage{pick(rng, 4)};
}

TyPtr random_type(const lr::Semiring& sr, Rng& rng, std::size_t depth,
                  const std::vector<lr::Usage>* grades) {
  if (depth == 0 || coin(rng, 0.35)) {
    switch (pick(rng, 8)) {
      case 0: return ty::one();
      case 1: return ty::top();
      case 2: return ty::zero();
      case 3:
      case 4:
      case 5: return ty::base("A");
      default: return ty::base("B");
    }
  }
  auto sub = [&] { return random_type(sr, rng, depth - 1, grades); };
  switch (pick(rng, 5)) {
    case 0: return ty::fun(sub(), sub());
    case 1: return ty::tensor(sub(), sub());
    case 2: return ty::sum(sub(), sub());
    case 3: return ty::with(sub(), sub());
    default: {
      lr::Usage r = grades ? (*grades)[pick(rng, grades->size())] : random_usage(sr, rng);
      return ty::bang(r, sub());
    }
  }
}

namespace {

using Ctx = lr::TyCtx;
using Maybe = std::optional<TermPtr>;

Ctx extend(Ctx c, std::initializer_list<lr::Binding> more) {
  c.insert(c.end(), more);
  return c;
}

std::size_t index_of(const Ctx& c, std::size_t pos) { return c.size() - 1 - pos; }

class TermGen {
 public:
  TermGen(const lr::Semiring& sr, Rng& rng) : sr_(sr), rng_(rng) {}

  Maybe gen(const Ctx& c, const TyPtr& goal, std::size_t depth) {
    if (depth == 0) return std::nullopt;
    std::vector<std::function<Maybe()>> opts;
    std::vector<std::function<Maybe()>> leaves;
    for (std::size_t p = 0; p < c.size(); ++p)
      if (lr::same_type(c[p].type, goal)) leaves.push_back([=] { return tm::var(index_of(c, p)); });
    if (goal->kind == TyKind::One) leaves.push_back([] { return tm::unit(); });
    if (goal->kind == TyKind::Top) leaves.push_back([] { return tm::with_type(tm::eat(), ty::top()); });
    if (depth >= 2) {
      add_intro(opts, c, goal, depth - 1);
      for (std::size_t p = 0; p < c.size(); ++p) add_elim(opts, c, p, goal, depth - 1);
      if (depth >= 3 && coin(rng_, 0.15)) add_redex(opts, c, goal, depth);
    }
    std::shuffle(leaves.begin(), leaves.end(), rng_);
    std::shuffle(opts.begin(), opts.end(), rng_);
    // Prefer structure while there is depth to spend.
    const bool leaves_first = depth <= 1 || coin(rng_, 0.3);
    auto& first = leaves_first ? leaves : opts;
    auto& second = leaves_first ? opts : leaves;
    for (auto* group : {&first, &second})
      for (auto& f : *group)
        if (auto t = f()) return t;
    return std::nullopt;
  }

 private:
  void add_intro(std::vector<std::function<Maybe()>>& opts, const Ctx& c, const TyPtr& goal,
                 std::size_t d) {
    switch (goal->kind) {
      case TyKind::Fun:
        opts.push_back([=, this]() -> Maybe {
          auto b = gen(extend(c, {{"x", goal->left}}), goal->right, d);
          return b ? Maybe(tm::lam("x", goal->left, *b)) : std::nullopt;
        });
        break;
      case TyKind::Tensor:
      case TyKind::With:
        opts.push_back([=, this]() -> Maybe {
          auto l = gen(c, goal->left, d);
          auto r = l ? gen(c, goal->right, d) : std::nullopt;
          if (!r) return std::nullopt;
          return goal->kind == TyKind::Tensor ? tm::pair(*l, *r) : tm::with_pair(*l, *r);
        });
        break;
      case TyKind::Sum:
        opts.push_back([=, this]() -> Maybe {
          bool left = coin(rng_);
          auto t = gen(c, left ? goal->left : goal->right, d);
          if (!t) return std::nullopt;
          return tm::with_type(left ? tm::inl(*t) : tm::inr(*t), goal);
        });
        break;
      case TyKind::Bang:
        opts.push_back([=, this]() -> Maybe {
          auto t = gen(c, goal->left, d);
          return t ? Maybe(tm::bang(goal->grade, *t)) : std::nullopt;
        });
        break;
      default: break;
    }
  }

  void add_elim(std::vector<std::function<Maybe()>>& opts, const Ctx& c, std::size_t p,
                const TyPtr& goal, std::size_t d) {
    const TyPtr s = c[p].type;
    auto x = [=] { return tm::var(index_of(c, p)); };
    switch (s->kind) {
      case TyKind::Fun:
        if (lr::same_type(s->right, goal))
          opts.push_back([=, this]() -> Maybe {
            auto a = gen(c, s->left, d);
            return a ? Maybe(tm::app(x(), *a)) : std::nullopt;
          });
        break;
      case TyKind::With:
        if (lr::same_type(s->left, goal)) opts.push_back([=] { return tm::proj1(x()); });
        if (lr::same_type(s->right, goal)) opts.push_back([=] { return tm::proj2(x()); });
        break;
      case TyKind::Tensor:
        opts.push_back([=, this]() -> Maybe {
          auto b = gen(extend(c, {{"a", s->left}, {"b", s->right}}), goal, d);
          return b ? Maybe(tm::pair_elim(x(), "a", "b", *b, goal)) : std::nullopt;
        });
        break;
      case TyKind::Sum:
        opts.push_back([=, this]() -> Maybe {
          auto l = gen(extend(c, {{"l", s->left}}), goal, d);
          auto r = l ? gen(extend(c, {{"r", s->right}}), goal, d) : std::nullopt;
          if (!r) return std::nullopt;
          return tm::case_of(x(), "l", *l, "r", *r, goal);
        });
        break;
      case TyKind::Bang:
        opts.push_back([=, this]() -> Maybe {
          auto b = gen(extend(c, {{"u", s->left}}), goal, d);
          return b ? Maybe(tm::bang_elim(x(), "u", *b, goal)) : std::nullopt;
        });
        break;
      case TyKind::One:
        opts.push_back([=, this]() -> Maybe {
          auto b = gen(c, goal, d);
          return b ? Maybe(tm::unit_elim(x(), *b, goal)) : std::nullopt;
        });
        break;
      case TyKind::Zero: opts.push_back([=] { return tm::absurd(x(), goal); }); break;
      default: break;
    }
  }

  // (\x:X. body) arg
  void add_redex(std::vector<std::function<Maybe()>>& opts, const Ctx& c, const TyPtr& goal,
                 std::size_t depth) {
    opts.push_back([=, this]() -> Maybe {
      TyPtr arg_ty = random_type(sr_, rng_, 1);
      auto body = gen(extend(c, {{"v", arg_ty}}), goal, depth - 2);
      auto arg = body ? gen(c, arg_ty, depth - 1) : std::nullopt;
      if (!arg) return std::nullopt;
      return tm::app(tm::lam("v", arg_ty, *body), *arg);
    });
  }

  const lr::Semiring& sr_;
  Rng& rng_;
};

Ctx random_ctx(const lr::Semiring& sr, Rng& rng, std::size_t n, std::size_t type_depth,
               const std::vector<lr::Usage>* grades) {
  Ctx c;
  for (std::size_t i = 0; i < n; ++i)
    c.push_back({"x" + std::to_string(i), random_type(sr, rng, type_depth, grades)});
  return c;
}

}  // namespace

std::optional<TermPtr> random_term(const lr::Semiring& sr, Rng& rng, const lr::TyCtx& ctx,
                                   const TyPtr& goal, std::size_t depth) {
  return TermGen(sr, rng).gen(ctx, goal, depth);
}

std::optional<lr::Derivation> random_derivation_in(const lr::Semiring& sr, Rng& rng,
                                                   const lr::TyCtx& ctx, const TyPtr& goal,
                                                   std::size_t depth) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto t = random_term(sr, rng, ctx, goal, depth);
    if (!t) return std::nullopt;
    lr::Demand dem;
    try {
      dem = lr::synthesize_demand(sr, ctx, *t, goal);
    } catch (const lr::Error&) {
      continue;  // a binder annotation the body cannot meet
    }
    if (dem.maximal.empty()) continue;
    lr::UsageCtx r = random_below(sr, rng, dem.maximal[pick(rng, dem.maximal.size())]);
    return lr::infer_check(sr, ctx, r, *t, goal);
  }
  return std::nullopt;
}

lr::Derivation random_derivation(const lr::Semiring& sr, Rng& rng, const GenConfig& cfg) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Ctx c = random_ctx(sr, rng, pick(rng, cfg.max_ctx + 1), cfg.type_depth, cfg.grades);
    TyPtr goal = !c.empty() && coin(rng, 0.4) ? c[pick(rng, c.size())].type
                                               : random_type(sr, rng, cfg.type_depth, cfg.grades);
    auto d = random_derivation_in(sr, rng, c, goal, cfg.depth);
    if (d && lr::derivation_size(*d) >= cfg.min_size) return *d;
  }
  throw std::runtime_error("random_derivation: no admissible term found");
}

namespace {

class Enumerator {
 public:
  Enumerator(const std::vector<TyPtr>& side) : side_(side) {}

  std::vector<TermPtr> all(const Ctx& c, const TyPtr& goal, std::size_t depth) {
    std::vector<TermPtr> out;
    if (depth == 0) return out;
    for (std::size_t p = 0; p < c.size(); ++p)
      if (lr::same_type(c[p].type, goal)) out.push_back(tm::var(index_of(c, p)));
    if (goal->kind == TyKind::One) out.push_back(tm::unit());
    if (goal->kind == TyKind::Top) out.push_back(tm::with_type(tm::eat(), ty::top()));
    if (depth == 1) return out;
    const std::size_t d = depth - 1;
    switch (goal->kind) {
      case TyKind::Fun:
        for (auto& b : all(extend(c, {{"x", goal->left}}), goal->right, d))
          out.push_back(tm::lam("x", goal->left, b));
        break;
      case TyKind::Tensor:
      case TyKind::With: {
        auto ls = all(c, goal->left, d);
        auto rs = all(c, goal->right, d);
        for (auto& l : ls)
          for (auto& r : rs)
            out.push_back(goal->kind == TyKind::Tensor ? tm::pair(l, r) : tm::with_pair(l, r));
        break;
      }
      case TyKind::Sum:
        for (auto& t : all(c, goal->left, d)) out.push_back(tm::with_type(tm::inl(t), goal));
        for (auto& t : all(c, goal->right, d)) out.push_back(tm::with_type(tm::inr(t), goal));
        break;
      case TyKind::Bang:
        for (auto& t : all(c, goal->left, d)) out.push_back(tm::bang(goal->grade, t));
        break;
      default: break;
    }
    for (const TyPtr& x : side_) {
      auto fs = all(c, ty::fun(x, goal), d);
      if (fs.empty()) continue;
      auto as = all(c, x, d);
      for (auto& f : fs)
        for (auto& a : as) out.push_back(tm::app(f, a));
    }
    for (const TyPtr& y : side_) {
      for (auto& s : all(c, ty::with(goal, y), d)) out.push_back(tm::proj1(s));
      for (auto& s : all(c, ty::with(y, goal), d)) out.push_back(tm::proj2(s));
    }
    for (const TyPtr& s : scrutinee_types(c)) {
      auto ss = all(c, s, d);
      if (ss.empty()) continue;
      switch (s->kind) {
        case TyKind::Tensor: {
          auto bs = all(extend(c, {{"a", s->left}, {"b", s->right}}), goal, d);
          for (auto& m : ss)
            for (auto& b : bs) out.push_back(tm::pair_elim(m, "a", "b", b, goal));
          break;
        }
        case TyKind::Sum: {
          auto ls = all(extend(c, {{"l", s->left}}), goal, d);
          auto rs = all(extend(c, {{"r", s->right}}), goal, d);
          for (auto& m : ss)
            for (auto& l : ls)
              for (auto& r : rs) out.push_back(tm::case_of(m, "l", l, "r", r, goal));
          break;
        }
        case TyKind::Bang: {
          auto bs = all(extend(c, {{"u", s->left}}), goal, d);
          for (auto& m : ss)
            for (auto& b : bs) out.push_back(tm::bang_elim(m, "u", b, goal));
          break;
        }
        case TyKind::One: {
          auto bs = all(c, goal, d);
          for (auto& m : ss)
            for (auto& b : bs) out.push_back(tm::unit_elim(m, b, goal));
          break;
        }
        case TyKind::Zero:
          for (auto& m : ss) out.push_back(tm::absurd(m, goal));
          break;
        default: break;
      }
    }
    return out;
  }

 private:
  // Types an eliminator may take apart: those of the context and the side
  // types, without repeats.
  std::vector<TyPtr> scrutinee_types(const Ctx& c) const {
    std::vector<TyPtr> out;
    auto add = [&](const TyPtr& t) {
      for (const auto& o : out)
        if (lr::same_type(o, t)) return;
      out.push_back(t);
    };
    for (const auto& b : c) add(b.type);
    for (const auto& t : side_) add(t);
    return out;
  }

  const std::vector<TyPtr>& side_;
};

}  // namespace

void enumerate_terms(const lr::Semiring&, const lr::TyCtx& ctx, const TyPtr& goal,
                     std::size_t depth, const std::vector<TyPtr>& side_types,
                     const std::function<void(const TermPtr&)>& visit) {
  for (const auto& t : Enumerator(side_types).all(ctx, goal, depth)) visit(t);
}

}  // namespace lrtest
