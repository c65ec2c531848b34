#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lr/checker.hpp"
#include "lr/dill.hpp"
#include "lr/logic.hpp"
#include "lr/syntax.hpp"

namespace lr {

/// The judgmental modal calculus: `G |v D |- A true`, G valid and D true.
/// Types: base, T, A /\ B, A => B, []A, F, A \/ B.
namespace pd {

enum Op : int { Atom = kAtom, Truth, And, Imp, Box, Falsity, Or };

const FormulaSyntax& formula_syntax();
const SequentSyntax& sequent_syntax();

enum class Rule {
  Hyp,
  HypValid,
  ImpI,
  ImpE,
  BoxI,
  BoxE,
  TopI,
  AndI,
  AndE1,
  AndE2,
  BotE,
  OrI1,
  OrI2,
  OrE,
};

/// Script spelling: hyp, hyp*, imp-I, imp-E, box-I, box-E, top-I, and-I,
/// and-E1, and-E2, bot-E, or-I1, or-I2, or-E.
std::string_view rule_name(Rule r);

}  // namespace pd

using PdTy = FormulaPtr;
using PdSequent = Sequent;

/// Premises share the conclusion's zones, extended by any bound hypotheses;
/// the premise of box-I has an empty true zone.
struct PdDerivation {
  pd::Rule rule = pd::Rule::Hyp;
  PdSequent seq;
  std::vector<PdDerivation> children;
};

PdTy parse_pd_type(std::string_view text, const std::vector<std::string>& bases = {});
std::string print_pd_type(const PdTy& t);
PdSequent parse_pd_sequent(std::string_view text, const std::vector<std::string>& bases = {});
std::string print_pd(const PdSequent& s);

/// Scripts use the parameters of dill_check except `left`; hyp and hyp*
/// accept var=x.
PdDerivation pd_check(const PdSequent& s, const ScriptNode& script);
ScriptNode to_script(const PdDerivation& d);
void pd_validate(const PdDerivation& d);
std::size_t derivation_size(const PdDerivation& d);

/// T as I, /\ as &, => as -o, [] as ![#], F as 0, \/ as +.
TyPtr embed_ty_pd(const PdTy& t);
/// Inverse on types free of I and *, which raise TypeMismatch.
/// ForbiddenBang for ![0] and ![1].
PdTy unembed_ty_pd(const TyPtr& t);

/// Over mod01box, with context G at # followed by D at 1.
Derivation pd_to_lr(const PdDerivation& d);

/// x:I^1 |- <> : Top,  x:Top^1 |- () : I,
/// x:(A * B)^1 |- let (y, z) = x in <y, z> : A & B,
/// x:(A & B)^1 |- (x.1, x.2) : A * B.
struct TopMeetIso {
  Derivation unit_to_top;
  Derivation top_to_unit;
  Derivation tensor_to_with;
  Derivation with_to_tensor;
};

/// HypothesisFailed unless 0 is top and + is meet in `sr`.
TopMeetIso top_meet_iso(const Semiring& sr, const TyPtr& a, const TyPtr& b);

/// Replaces * by & and I by Top throughout, keeping the conclusion usage.
/// Needs the same hypotheses as top_meet_iso.
Derivation rewrite_tensors(const Semiring& sr, const Derivation& d);

/// # as Intuitionistic (valid), 1 as Linear (true), 0 as Unused.
std::vector<ZoneClass> partition_of_box(const UsageCtx& usage);

/// Rewrites tensors away, normalizes to bottom-up form and reads off a PD
/// derivation. ForbiddenBang if any type mentions ![0] or ![1].
PdDerivation lr_to_pd(const Derivation& d, const std::vector<ZoneClass>& partition);
PdDerivation lr_to_pd(const Derivation& d);

struct PdFile {
  std::vector<std::string> bases;
  std::vector<PdDerivation> proofs;
};

PdFile parse_pd_file(std::string_view text);
std::string print(const PdFile& file);

}  // namespace lr
