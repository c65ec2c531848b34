#include "logic_gen.hpp"

#include <algorithm>

namespace lrtest {

using lr::formula;
using lr::FormulaPtr;
using lr::Hyp;
using lr::Zone;

namespace {

Zone plus(Zone z, Hyp h) {
  z.push_back(std::move(h));
  return z;
}

Zone without(const Zone& z, std::size_t i) {
  Zone out = z;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

// A random order-preserving split of z into two complementary parts.
std::pair<Zone, Zone> split(Rng& rng, const Zone& z) {
  std::pair<Zone, Zone> out;
  for (const Hyp& h : z) (coin(rng) ? out.first : out.second).push_back(h);
  return out;
}

class DillGen {
 public:
  using D = lr::DillDerivation;
  using R = lr::dill::Rule;

  explicit DillGen(Rng& rng) : rng_(rng) {}

  FormulaPtr type(std::size_t depth) {
    using namespace lr::dill;
    if (depth == 0 || coin(rng_, 0.4)) {
      switch (pick(rng_, 7)) {
        case 0: return formula(One);
        case 1: return formula(Top);
        case 2: return formula(Zero);
        case 3:
        case 4: return lr::atom("B");
        default: return lr::atom("A");
      }
    }
    switch (pick(rng_, 5)) {
      case 0: return formula(Tensor, type(depth - 1), type(depth - 1));
      case 1: return formula(Lolli, type(depth - 1), type(depth - 1));
      case 2: return formula(Bang, type(depth - 1));
      case 3: return formula(Plus, type(depth - 1), type(depth - 1));
      default: return formula(With, type(depth - 1), type(depth - 1));
    }
  }

  Hyp fresh(FormulaPtr t) { return {"h" + std::to_string(counter_++), std::move(t)}; }

  D gen(const Zone& g, const Zone& d, std::size_t depth) {
    using namespace lr::dill;
    if (depth == 0) return leaf(g, d);
    std::vector<std::function<std::optional<D>()>> opts;
    const std::size_t k = depth - 1;
    opts.push_back([&]() -> std::optional<D> {
      auto [d1, d2] = split(rng_, d);
      D l = gen(g, d1, k), r = gen(g, d2, k);
      return node(R::TensorI, g, d, formula(Tensor, l.seq.goal, r.seq.goal), {l, r});
    });
    opts.push_back([&]() -> std::optional<D> {
      Hyp x = fresh(type(1));
      D b = gen(g, plus(d, x), k);
      return node(R::LolliI, g, d, formula(Lolli, x.type, b.seq.goal), {b});
    });
    opts.push_back([&]() -> std::optional<D> {
      auto [d1, d2] = split(rng_, d);
      D arg = gen(g, d2, k);
      Hyp y = fresh(arg.seq.goal);
      D body = gen(g, plus(d1, y), k);
      D fn = node(R::LolliI, g, d1, formula(Lolli, y.type, body.seq.goal), {body});
      return node(R::LolliE, g, d, body.seq.goal, {fn, arg});
    });
    opts.push_back([&]() -> std::optional<D> {
      D l = gen(g, d, k), r = gen(g, d, k);
      return node(R::WithI, g, d, formula(With, l.seq.goal, r.seq.goal), {l, r});
    });
    opts.push_back([&]() -> std::optional<D> {
      D s = gen(g, d, k);
      bool left = coin(rng_);
      FormulaPtr other = type(1);
      FormulaPtr goal = left ? formula(Plus, s.seq.goal, other) : formula(Plus, other, s.seq.goal);
      return node(left ? R::PlusI1 : R::PlusI2, g, d, goal, {s});
    });
    if (d.empty())
      opts.push_back([&]() -> std::optional<D> {
        D s = gen(g, {}, k);
        return node(R::BangI, g, d, formula(Bang, s.seq.goal), {s});
      });
    opts.push_back([&]() -> std::optional<D> {
      return node(R::TopI, g, d, formula(Top), {});
    });
    // Eliminations of linear hypotheses by their connective.
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Hyp h = d[i];
      const Zone rest = without(d, i);
      const FormulaPtr t = h.type;
      D ax = node(R::LinAx, g, {h}, t, {});
      switch (t->op) {
        case Tensor:
          opts.push_back([=, this]() -> std::optional<D> {
            D b = gen(g, plus(plus(rest, fresh(t->left)), fresh(t->right)), k);
            return node(R::TensorE, g, d, b.seq.goal, {ax, b});
          });
          break;
        case Lolli:
          opts.push_back([=, this]() -> std::optional<D> {
            auto arg = prove(g, rest, t->left, k);
            if (!arg) return std::nullopt;
            return node(R::LolliE, g, d, t->right, {ax, *arg});
          });
          break;
        case Bang:
          opts.push_back([=, this]() -> std::optional<D> {
            D b = gen(plus(g, fresh(t->left)), rest, k);
            return node(R::BangE, g, d, b.seq.goal, {ax, b});
          });
          break;
        case With:
          opts.push_back([=, this]() -> std::optional<D> {
            bool left = coin(rng_);
            D s = node(R::LinAx, g, d, t, {});
            if (d.size() != 1) return std::nullopt;
            return node(left ? R::WithE1 : R::WithE2, g, d, left ? t->left : t->right, {s});
          });
          break;
        case Plus:
          opts.push_back([=, this]() -> std::optional<D> {
            Hyp a = fresh(t->left), b = fresh(t->right);
            D l = gen(g, plus(rest, a), k);
            auto r = prove(g, plus(rest, b), l.seq.goal, k);
            if (!r) return std::nullopt;
            return node(R::PlusE, g, d, l.seq.goal, {ax, l, *r});
          });
          break;
        case One:
          opts.push_back([=, this]() -> std::optional<D> {
            D b = gen(g, rest, k);
            return node(R::OneE, g, d, b.seq.goal, {ax, b});
          });
          break;
        case Zero:
          opts.push_back([=, this]() -> std::optional<D> {
            return node(R::ZeroE, g, d, type(1), {ax});
          });
          break;
        default: break;
      }
    }
    std::shuffle(opts.begin(), opts.end(), rng_);
    if (coin(rng_, 0.2)) return leaf(g, d);
    for (auto& f : opts)
      if (auto r = f()) return *r;
    return leaf(g, d);
  }

 private:
  static D node(R r, const Zone& g, const Zone& d, FormulaPtr goal, std::vector<D> kids) {
    return D{r, {g, d, std::move(goal)}, std::move(kids)};
  }

  D leaf(const Zone& g, const Zone& d) {
    using namespace lr::dill;
    if (d.size() == 1) return node(R::LinAx, g, d, d[0].type, {});
    if (d.empty()) {
      switch (pick(rng_, 3)) {
        case 0:
          if (!g.empty()) return node(R::IntAx, g, d, g[pick(rng_, g.size())].type, {});
          [[fallthrough]];
        case 1: return node(R::OneI, g, d, formula(One), {});
        default: break;
      }
    }
    return node(R::TopI, g, d, formula(Top), {});
  }

  // Goal-first search; small and incomplete.
  std::optional<D> prove(const Zone& g, const Zone& d, const FormulaPtr& goal,
                         std::size_t depth) {
    using namespace lr::dill;
    if (d.empty())
      for (const Hyp& h : g)
        if (lr::same_formula(h.type, goal)) return node(R::IntAx, g, d, goal, {});
    if (d.size() == 1 && lr::same_formula(d[0].type, goal)) return node(R::LinAx, g, d, goal, {});
    if (goal->op == Top) return node(R::TopI, g, d, goal, {});
    if (goal->op == One && d.empty()) return node(R::OneI, g, d, goal, {});
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i].type->op == Zero)
        return node(R::ZeroE, g, d, goal, {node(R::LinAx, g, {d[i]}, d[i].type, {})});
    if (depth == 0) return std::nullopt;
    const std::size_t k = depth - 1;
    switch (goal->op) {
      case Lolli: {
        Hyp x = fresh(goal->left);
        auto b = prove(g, plus(d, x), goal->right, k);
        if (b) return node(R::LolliI, g, d, goal, {*b});
        break;
      }
      case With: {
        auto l = prove(g, d, goal->left, k);
        auto r = l ? prove(g, d, goal->right, k) : std::nullopt;
        if (r) return node(R::WithI, g, d, goal, {*l, *r});
        break;
      }
      case Tensor:
        for (int attempt = 0; attempt < 3; ++attempt) {
          auto [d1, d2] = split(rng_, d);
          auto l = prove(g, d1, goal->left, k);
          auto r = l ? prove(g, d2, goal->right, k) : std::nullopt;
          if (r) return node(R::TensorI, g, d, goal, {*l, *r});
        }
        break;
      case Plus:
        if (auto l = prove(g, d, goal->left, k)) return node(R::PlusI1, g, d, goal, {*l});
        if (auto r = prove(g, d, goal->right, k)) return node(R::PlusI2, g, d, goal, {*r});
        break;
      case Bang:
        if (d.empty())
          if (auto s = prove(g, d, goal->left, k)) return node(R::BangI, g, d, goal, {*s});
        break;
      default: break;
    }
    return std::nullopt;
  }

  Rng& rng_;
  std::size_t counter_ = 0;
};

class PdGen {
 public:
  using D = lr::PdDerivation;
  using R = lr::pd::Rule;

  explicit PdGen(Rng& rng) : rng_(rng) {}

  FormulaPtr type(std::size_t depth) {
    using namespace lr::pd;
    if (depth == 0 || coin(rng_, 0.4)) {
      switch (pick(rng_, 6)) {
        case 0: return formula(Truth);
        case 1: return formula(Falsity);
        case 2:
        case 3: return lr::atom("B");
        default: return lr::atom("A");
      }
    }
    switch (pick(rng_, 4)) {
      case 0: return formula(And, type(depth - 1), type(depth - 1));
      case 1: return formula(Imp, type(depth - 1), type(depth - 1));
      case 2: return formula(Box, type(depth - 1));
      default: return formula(Or, type(depth - 1), type(depth - 1));
    }
  }

  Hyp fresh(FormulaPtr t) { return {"h" + std::to_string(counter_++), std::move(t)}; }

  D gen(const Zone& g, const Zone& d, std::size_t depth) {
    using namespace lr::pd;
    if (depth == 0 || coin(rng_, 0.15)) return leaf(g, d);
    const std::size_t k = depth - 1;
    std::vector<std::function<std::optional<D>()>> opts;
    opts.push_back([&]() -> std::optional<D> {
      Hyp x = fresh(type(1));
      D b = gen(g, plus(d, x), k);
      return node(R::ImpI, g, d, formula(Imp, x.type, b.seq.goal), {b});
    });
    opts.push_back([&]() -> std::optional<D> {
      D arg = gen(g, d, k);
      Hyp y = fresh(arg.seq.goal);
      D body = gen(g, plus(d, y), k);
      D fn = node(R::ImpI, g, d, formula(Imp, y.type, body.seq.goal), {body});
      return node(R::ImpE, g, d, body.seq.goal, {fn, arg});
    });
    opts.push_back([&]() -> std::optional<D> {
      D s = gen(g, {}, k);
      return node(R::BoxI, g, d, formula(Box, s.seq.goal), {s});
    });
    opts.push_back([&]() -> std::optional<D> {
      D l = gen(g, d, k), r = gen(g, d, k);
      return node(R::AndI, g, d, formula(And, l.seq.goal, r.seq.goal), {l, r});
    });
    opts.push_back([&]() -> std::optional<D> {
      D s = gen(g, d, k);
      bool left = coin(rng_);
      FormulaPtr other = type(1);
      FormulaPtr goal = left ? formula(Or, s.seq.goal, other) : formula(Or, other, s.seq.goal);
      return node(left ? R::OrI1 : R::OrI2, g, d, goal, {s});
    });
    auto eliminate = [&](const Hyp& h, bool valid) {
      const FormulaPtr t = h.type;
      D ax = node(valid ? R::HypValid : R::Hyp, g, d, t, {});
      switch (t->op) {
        case Imp:
          opts.push_back([=, this]() -> std::optional<D> {
            auto arg = prove(g, d, t->left, k);
            if (!arg) return std::nullopt;
            return node(R::ImpE, g, d, t->right, {ax, *arg});
          });
          break;
        case Box:
          opts.push_back([=, this]() -> std::optional<D> {
            D b = gen(plus(g, fresh(t->left)), d, k);
            return node(R::BoxE, g, d, b.seq.goal, {ax, b});
          });
          break;
        case And:
          opts.push_back([=, this]() -> std::optional<D> {
            bool left = coin(rng_);
            return node(left ? R::AndE1 : R::AndE2, g, d, left ? t->left : t->right, {ax});
          });
          break;
        case Or:
          opts.push_back([=, this]() -> std::optional<D> {
            D l = gen(g, plus(d, fresh(t->left)), k);
            auto r = prove(g, plus(d, fresh(t->right)), l.seq.goal, k);
            if (!r) return std::nullopt;
            return node(R::OrE, g, d, l.seq.goal, {ax, l, *r});
          });
          break;
        case Falsity:
          opts.push_back([=, this]() -> std::optional<D> {
            return node(R::BotE, g, d, type(1), {ax});
          });
          break;
        default: break;
      }
    };
    for (const Hyp& h : g) eliminate(h, true);
    for (const Hyp& h : d) eliminate(h, false);
    std::shuffle(opts.begin(), opts.end(), rng_);
    for (auto& f : opts)
      if (auto r = f()) return *r;
    return leaf(g, d);
  }

 private:
  static D node(R r, const Zone& g, const Zone& d, FormulaPtr goal, std::vector<D> kids) {
    return D{r, {g, d, std::move(goal)}, std::move(kids)};
  }

  D leaf(const Zone& g, const Zone& d) {
    using namespace lr::pd;
    std::size_t n = g.size() + d.size();
    std::size_t i = pick(rng_, n + 1);
    if (i < g.size()) return node(R::HypValid, g, d, g[i].type, {});
    if (i < n) return node(R::Hyp, g, d, d[i - g.size()].type, {});
    return node(R::TopI, g, d, formula(Truth), {});
  }

  std::optional<D> prove(const Zone& g, const Zone& d, const FormulaPtr& goal,
                         std::size_t depth) {
    using namespace lr::pd;
    for (const Hyp& h : d)
      if (lr::same_formula(h.type, goal)) return node(R::Hyp, g, d, goal, {});
    for (const Hyp& h : g)
      if (lr::same_formula(h.type, goal)) return node(R::HypValid, g, d, goal, {});
    if (goal->op == Truth) return node(R::TopI, g, d, goal, {});
    for (const Hyp& h : d)
      if (h.type->op == Falsity) return node(R::BotE, g, d, goal, {node(R::Hyp, g, d, h.type, {})});
    if (depth == 0) return std::nullopt;
    const std::size_t k = depth - 1;
    switch (goal->op) {
      case Imp:
        if (auto b = prove(g, plus(d, fresh(goal->left)), goal->right, k))
          return node(R::ImpI, g, d, goal, {*b});
        break;
      case And: {
        auto l = prove(g, d, goal->left, k);
        auto r = l ? prove(g, d, goal->right, k) : std::nullopt;
        if (r) return node(R::AndI, g, d, goal, {*l, *r});
        break;
      }
      case Or:
        if (auto l = prove(g, d, goal->left, k)) return node(R::OrI1, g, d, goal, {*l});
        if (auto r = prove(g, d, goal->right, k)) return node(R::OrI2, g, d, goal, {*r});
        break;
      case Box:
        if (auto s = prove(g, {}, goal->left, k)) return node(R::BoxI, g, d, goal, {*s});
        break;
      default: break;
    }
    return std::nullopt;
  }

  Rng& rng_;
  std::size_t counter_ = 0;
};

}  // namespace

lr::DillDerivation random_dill(Rng& rng, std::size_t depth) {
  DillGen gen(rng);
  Zone g, d;
  for (std::size_t i = pick(rng, 3); i-- > 0;) g.push_back(gen.fresh(gen.type(2)));
  for (std::size_t i = pick(rng, 4); i-- > 0;) d.push_back(gen.fresh(gen.type(2)));
  return gen.gen(g, d, depth);
}

lr::PdDerivation random_pd(Rng& rng, std::size_t depth) {
  PdGen gen(rng);
  Zone g, d;
  for (std::size_t i = pick(rng, 3); i-- > 0;) g.push_back(gen.fresh(gen.type(2)));
  for (std::size_t i = pick(rng, 4); i-- > 0;) d.push_back(gen.fresh(gen.type(2)));
  return gen.gen(g, d, depth);
}

}  // namespace lrtest
