#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lr/checker.hpp"
#include "lr/logic.hpp"
#include "lr/syntax.hpp"

namespace lr {

/// Dual intuitionistic linear logic: `G | D |- A`, G intuitionistic and D
/// linear. Types: base, I, A * B, A -o B, !A, 0, A + B, Top, A & B.
namespace dill {

enum Op : int { Atom = kAtom, One, Tensor, Lolli, Bang, Zero, Plus, Top, With };

const FormulaSyntax& formula_syntax();
const SequentSyntax& sequent_syntax();

enum class Rule {
  IntAx,
  LinAx,
  OneI,
  OneE,
  TensorI,
  TensorE,
  LolliI,
  LolliE,
  BangI,
  BangE,
  TopI,
  WithI,
  WithE1,
  WithE2,
  ZeroE,
  PlusI1,
  PlusI2,
  PlusE,
};

/// Script spelling: int-ax, lin-ax, I-I, I-E, tensor-I, tensor-E, lolli-I,
/// lolli-E, bang-I, bang-E, top-I, with-I, with-E1, with-E2, zero-E,
/// plus-I1, plus-I2, plus-E.
std::string_view rule_name(Rule r);

}  // namespace dill

using DillTy = FormulaPtr;
using DillSequent = Sequent;

/// A node's premises carry the zone split: at binary rules the linear zones
/// of the premises (binders removed) are complementary subsequences of the
/// conclusion's.
struct DillDerivation {
  dill::Rule rule = dill::Rule::LinAx;
  DillSequent seq;
  std::vector<DillDerivation> children;
};

DillTy parse_dill_type(std::string_view text, const std::vector<std::string>& bases = {});
std::string print_dill_type(const DillTy& t);
DillSequent parse_dill_sequent(std::string_view text, const std::vector<std::string>& bases = {});
std::string print(const DillSequent& s);

/// Builds and validates the derivation a script describes. Parameters:
///   left=x,y  linear hypotheses sent to the first premise of a binary rule
///   ty={A}    the first premise's goal at eliminators; for lolli-E the
///             argument type, for with-E1/with-E2 the discarded component
///   as=a,b    names of the hypotheses a rule binds
///   var=x     the hypothesis used by int-ax (defaults to the first match)
/// Errors: RuleMismatch, ZoneSplitError, ScopeError, ParseError.
DillDerivation dill_check(const DillSequent& s, const ScriptNode& script);
/// The script that dill_check turns back into `d`.
ScriptNode to_script(const DillDerivation& d);
/// Re-checks every node of `d` against the rules.
void dill_validate(const DillDerivation& d);
std::size_t derivation_size(const DillDerivation& d);

/// The structural embedding with !A as ![w]A.
TyPtr embed_ty_dill(const DillTy& t);
/// Inverse of embed_ty_dill; NonDillType outside its image.
DillTy unembed_ty_dill(const TyPtr& t);

/// Over lin01w, with context G at w followed by D at 1.
Derivation dill_to_lr(const DillDerivation& d);

enum class ZoneClass { Intuitionistic, Linear, Unused };

/// Classification of a lin01w usage vector: w, 1 and 0 respectively.
std::vector<ZoneClass> partition_of(const UsageCtx& usage);

/// Normalizes `d` to bottom-up form and reads off a DILL derivation whose
/// intuitionistic and linear zones are the w- and 1-classified entries.
/// `partition` must match d.usage exactly (ZoneSplitError otherwise).
DillDerivation lr_to_dill(const Derivation& d, const std::vector<ZoneClass>& partition);
DillDerivation lr_to_dill(const Derivation& d);

/// A `logic dill` proof file with every stanza checked.
struct DillFile {
  std::vector<std::string> bases;
  std::vector<DillDerivation> proofs;
};

DillFile parse_dill_file(std::string_view text);
std::string print(const DillFile& file);

}  // namespace lr
