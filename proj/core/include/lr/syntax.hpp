#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lr/linalg.hpp"
#include "lr/semiring.hpp"

namespace lr {

enum class TyKind { Base, Fun, One, Tensor, Zero, Sum, Top, With, Bang };

struct Ty;
using TyPtr = std::shared_ptr<const Ty>;

struct Ty {
  TyKind kind = TyKind::One;
  std::string name;  // Base
  Usage grade{};     // Bang
  TyPtr left;        // Fun/Tensor/Sum/With, and the body of Bang
  TyPtr right;
};

namespace ty {
TyPtr base(std::string name);
TyPtr fun(TyPtr a, TyPtr b);
TyPtr one();
TyPtr tensor(TyPtr a, TyPtr b);
TyPtr zero();
TyPtr sum(TyPtr a, TyPtr b);
TyPtr top();
TyPtr with(TyPtr a, TyPtr b);
TyPtr bang(Usage r, TyPtr a);
}  // namespace ty

bool same_type(const Ty& a, const Ty& b);
bool same_type(const TyPtr& a, const TyPtr& b);
std::string print(const Semiring& sr, const Ty& t);
/// Every usage appearing in a ![r] anywhere inside t.
void collect_grades(const Ty& t, std::vector<Usage>& out);

struct Binding {
  std::string name;
  TyPtr type;
};

/// Ordered typing context; de Bruijn index 0 is the last entry.
using TyCtx = std::vector<Binding>;

TyCtx concat(const TyCtx& a, const TyCtx& b);
/// Position of de Bruijn index `index` in a context of length n.
std::size_t position_of(std::size_t n, std::size_t index);
/// Renames clashing display names apart ("x", "x" -> "x", "x1").
TyCtx freshen_names(const TyCtx& ctx);

enum class TermKind {
  Var,
  Lam,
  App,
  UnitI,
  UnitE,
  Pair,
  PairE,
  ExF,
  InjL,
  InjR,
  Case,
  Eat,
  ProjL,
  ProjR,
  WithI,
  BangI,
  BangE,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// de Bruijn term. Children by kind:
///   Lam [body]  App [fun, arg]  UnitE [scrut, body]  Pair [l, r]
///   PairE [scrut, body]  ExF [scrut]  InjL/InjR/ProjL/ProjR/BangI [t]
///   Case [scrut, left, right]  WithI [l, r]  BangE [scrut, body]
/// `type` holds the Lam argument type, or the ascribed type of an
/// eliminator, injection or <>.
/// Binary-context rules store their split as (split_p, split_q); BangI stores
/// its scaled premise usage in split_p.
struct Term {
  TermKind kind = TermKind::UnitI;
  std::size_t index = 0;  // Var
  Usage grade{};          // BangI
  TyPtr type;
  std::vector<TermPtr> kids;
  std::optional<UsageCtx> split_p;
  std::optional<UsageCtx> split_q;
  std::vector<std::string> binders;  // display names only
};

namespace tm {
TermPtr var(std::size_t index);
TermPtr lam(std::string name, TyPtr arg, TermPtr body);
TermPtr app(TermPtr f, TermPtr a);
TermPtr unit();
TermPtr unit_elim(TermPtr scrut, TermPtr body, TyPtr result = nullptr);
TermPtr pair(TermPtr l, TermPtr r);
TermPtr pair_elim(TermPtr scrut, std::string x, std::string y, TermPtr body,
                  TyPtr result = nullptr);
TermPtr absurd(TermPtr scrut, TyPtr result = nullptr);
TermPtr inl(TermPtr t);
TermPtr inr(TermPtr t);
TermPtr case_of(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right,
                TyPtr result = nullptr);
TermPtr eat();
TermPtr proj1(TermPtr t);
TermPtr proj2(TermPtr t);
TermPtr with_pair(TermPtr l, TermPtr r);
TermPtr bang(Usage r, TermPtr t);
TermPtr bang_elim(TermPtr scrut, std::string x, TermPtr body, TyPtr result = nullptr);

/// Copy of t with its own (top-level) split replaced.
TermPtr with_split(const TermPtr& t, std::optional<UsageCtx> p, std::optional<UsageCtx> q);
TermPtr with_kids(const TermPtr& t, std::vector<TermPtr> kids);
TermPtr with_type(const TermPtr& t, TyPtr type);
}  // namespace tm

std::string_view kind_name(TermKind kind);
/// Rules whose side condition is R <| P + Q.
bool has_two_split(TermKind kind);
/// Number of variables bound around child `child` of a node of this kind.
std::size_t binder_count(TermKind kind, std::size_t child);
/// Whether `type` is an ascription: eliminators, injections and <>.
bool has_result_ascription(TermKind kind);

/// Strips every split annotation (types and ascriptions stay).
TermPtr erase(const TermPtr& t);
/// Strips splits and eliminator result ascriptions.
TermPtr erase_all(const TermPtr& t);
/// Structural equality on de Bruijn form; display names never matter.
bool same_term(const Term& a, const Term& b, bool compare_annotations = false);
std::size_t term_depth(const Term& t);
std::size_t term_size(const Term& t);

/// de Bruijn indices free in `t`. With a scope length, a dangling index
/// raises ScopeError.
std::set<std::size_t> free_var_demanded(const Term& t,
                                        std::optional<std::size_t> scope = std::nullopt);

/// Surface syntax. `names` are the display names of the enclosing context.
std::string print(const Semiring& sr, const Term& t, const std::vector<std::string>& names);
std::vector<std::string> names_of(const TyCtx& ctx);

/// A usage-checked variable: position `index` in a context whose usage
/// vector `usage` satisfies usage <| basis(index).
struct UVar {
  TyCtx ctx;
  UsageCtx usage;
  std::size_t index = 0;
  TyPtr type;
};

/// Throws UsageMismatch carrying the first failing coordinate.
UVar uvar_check(const Semiring& sr, const TyCtx& ctx, const UsageCtx& usage, std::size_t index);
/// Context-free form: only checks usage <| basis(|usage|, index).
void uvar_check(const Semiring& sr, const UsageCtx& usage, std::size_t index);

}  // namespace lr
