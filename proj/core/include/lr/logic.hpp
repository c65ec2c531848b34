#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Shared machinery for the two-zone object logics: propositional formulas
// over a configurable set of connectives, sequents, and proof scripts.

namespace lr {

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// `op` is a connective code owned by the logic; atoms use op 0 and `name`.
struct Formula {
  int op = 0;
  std::string name;
  FormulaPtr left;
  FormulaPtr right;
};

inline constexpr int kAtom = 0;

/// Surface spelling of a logic's connectives. Binary operators are listed
/// from loosest to tightest binding; all of them associate to the right.
struct FormulaSyntax {
  std::vector<std::pair<std::string, int>> constants;
  std::vector<std::pair<std::string, int>> prefix;
  std::vector<std::pair<std::string, int>> binary;
};

FormulaPtr formula(int op, FormulaPtr l = nullptr, FormulaPtr r = nullptr);
FormulaPtr atom(std::string name);
bool same_formula(const FormulaPtr& a, const FormulaPtr& b);

/// ParseError on malformed input. A nonempty `atoms` restricts base names.
FormulaPtr parse_formula(const FormulaSyntax& syn, std::string_view text,
                         const std::vector<std::string>& atoms = {});
std::string print_formula(const FormulaSyntax& syn, const FormulaPtr& f);

struct Hyp {
  std::string name;
  FormulaPtr type;
};
using Zone = std::vector<Hyp>;

/// gamma ; delta |- goal. The first zone is the unrestricted one.
struct Sequent {
  Zone gamma;
  Zone delta;
  FormulaPtr goal;
};

bool same_zone(const Zone& a, const Zone& b);
bool same_sequent(const Sequent& a, const Sequent& b);

/// How a logic spells its sequents: `G <sep> D |- A <suffix>`.
struct SequentSyntax {
  const FormulaSyntax* formulas;
  std::string separator;
  std::string suffix;
};

/// Rejects duplicate hypothesis names (ScopeError).
Sequent parse_sequent(const SequentSyntax& syn, std::string_view text,
                      const std::vector<std::string>& atoms = {});
std::string print_sequent(const SequentSyntax& syn, const Sequent& s);
/// ScopeError when a name occurs twice across both zones.
void require_distinct_names(const Sequent& s);

/// One line of a proof script: `rule key=value ...`, children indented
/// deeper on the following lines. Values containing spaces use braces.
struct ScriptNode {
  std::string rule;
  std::map<std::string, std::string> params;
  std::vector<ScriptNode> kids;
  std::size_t line = 0;
};

/// Lines keep their indentation; `first_line` numbers the first one.
ScriptNode parse_script(const std::vector<std::string>& lines, std::size_t first_line);
std::string print_script(const ScriptNode& node, std::size_t indent = 2);
/// Comma separated names of a parameter, or empty when absent.
std::vector<std::string> param_list(const ScriptNode& node, const std::string& key);

/// A proof file: `logic NAME`, optional `base A, B`, then stanzas made of a
/// sequent line followed by its script.
struct ProofStanza {
  std::string sequent;
  std::vector<std::string> script;
  std::size_t line = 0;
};

struct ProofFile {
  std::string logic;
  std::vector<std::string> bases;
  std::vector<ProofStanza> stanzas;
};

ProofFile parse_proof_file(std::string_view text);

}  // namespace lr
