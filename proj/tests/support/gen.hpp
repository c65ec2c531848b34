#pragma once

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lr/checker.hpp"
#include "lr/syntax.hpp"

namespace lrtest {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n);
bool coin(Rng& rng, double p = 0.5);

/// Uniform over {v : v <| u}; finite carriers only (otherwise u itself).
lr::Usage random_below(const lr::Semiring& sr, Rng& rng, lr::Usage u);
lr::UsageCtx random_below(const lr::Semiring& sr, Rng& rng, const lr::UsageCtx& u);
lr::Usage random_usage(const lr::Semiring& sr, Rng& rng);

/// Types over bases A and B. Grades of ![r] are drawn from the carrier
/// unless `grades` is given.
lr::TyPtr random_type(const lr::Semiring& sr, Rng& rng, std::size_t depth,
                      const std::vector<lr::Usage>* grades = nullptr);

/// A term of type `goal` in `ctx` with term_depth at most `depth`, built
/// type-directed: variables, introductions, eliminations of context
/// variables and the occasional beta redex.
std::optional<lr::TermPtr> random_term(const lr::Semiring& sr, Rng& rng, const lr::TyCtx& ctx,
                                       const lr::TyPtr& goal, std::size_t depth);

struct GenConfig {
  std::size_t depth = 4;
  std::size_t max_ctx = 3;
  std::size_t type_depth = 2;
  const std::vector<lr::Usage>* grades = nullptr;
  std::size_t min_size = 1;  // fewest derivation nodes accepted
};

/// Random context and goal, a term for them, and R below one of the
/// term's maximal demands; the derivation is infer_check's.
lr::Derivation random_derivation(const lr::Semiring& sr, Rng& rng, const GenConfig& cfg = {});

/// A derivation over exactly `ctx` proving `goal`, or nullopt.
std::optional<lr::Derivation> random_derivation_in(const lr::Semiring& sr, Rng& rng,
                                                   const lr::TyCtx& ctx, const lr::TyPtr& goal,
                                                   std::size_t depth);

/// Every term of type `goal` in `ctx` with term_depth <= depth, where the
/// types an elimination may introduce (function arguments, the other
/// component of a projection) range over `side_types`.
void enumerate_terms(const lr::Semiring& sr, const lr::TyCtx& ctx, const lr::TyPtr& goal,
                     std::size_t depth, const std::vector<lr::TyPtr>& side_types,
                     const std::function<void(const lr::TermPtr&)>& visit);

}  // namespace lrtest
