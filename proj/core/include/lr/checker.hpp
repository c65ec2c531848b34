#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lr/linalg.hpp"
#include "lr/semiring.hpp"
#include "lr/syntax.hpp"

namespace lr {

/// One side condition discharged at a derivation node.
///   Leq:   left <| right
///   Add:   left + right = result
///   Scale: scalar * left = result
struct Fact {
  enum class Kind { Leq, Add, Scale };
  Kind kind = Kind::Leq;
  UsageCtx left;
  UsageCtx right;
  Usage scalar{};
  UsageCtx result;

  friend bool operator==(const Fact&, const Fact&) = default;
};

/// A derivation of ctx R |- term : type. `term` is fully annotated, with
/// every eliminator's result type filled in.
struct Derivation {
  std::string rule;
  TyCtx ctx;
  UsageCtx usage;
  TermPtr term;
  TyPtr type;
  std::vector<Fact> facts;
  std::vector<Derivation> children;
};

/// Path to the first node where the two derivations differ (ignoring
/// display names), or nullopt when they agree.
std::optional<std::vector<std::size_t>> first_difference(const Derivation& a,
                                                         const Derivation& b);
bool same_derivation(const Derivation& a, const Derivation& b);
std::size_t derivation_size(const Derivation& d);

/// Checks a fully split-annotated term.
Derivation check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage, const TermPtr& term,
                 const TyPtr& type);

/// Simple typing only; usages are ignored. Returns the elaborated term with
/// every eliminator's result type filled in.
TermPtr elaborate(const Semiring& sr, const TyCtx& ctx, const TermPtr& term, const TyPtr& type);

/// The maximal usage contexts under which the term checks for some choice
/// of annotations: R is admissible iff R <| d for some d in `maximal`.
struct Demand {
  std::vector<UsageCtx> maximal;

  bool admits(const Semiring& sr, const UsageCtx& r) const;
};

Demand synthesize_demand(const Semiring& sr, const TyCtx& ctx, const TermPtr& term,
                         const TyPtr& type);

/// Ignores any annotations on `term`, chooses canonical splits and checks.
Derivation infer_check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage,
                       const TermPtr& term, const TyPtr& type);

/// Same conclusion, with interior inequalities reflexive and split facts
/// drawn from the instance's bottom-up tables.
Derivation to_bottom_up(const Semiring& sr, const Derivation& d);

/// Whether every interior add/scale fact is in the bottom-up tables and every
/// interior leq fact is reflexive. With `allow_discard`, a !-I node may also
/// use R_i <| 0 at coordinates where r * P_i = 0: no table entry can produce
/// a nonzero usage there. On failure `why` receives the node path and fact.
bool is_bottom_up(const Semiring& sr, const Derivation& d, bool allow_discard = false,
                  std::string* why = nullptr);

/// Re-derives the conclusion from scratch and compares. Throws RuleMismatch
/// with the path of the first disagreeing node.
void validate(const Semiring& sr, const Derivation& d);

/// Multi-line tree rendering, one node per line.
std::string render(const Semiring& sr, const Derivation& d);
std::string print(const Semiring& sr, const Fact& f);

}  // namespace lr
