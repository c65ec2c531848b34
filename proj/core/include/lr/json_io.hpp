#pragma once

#include <string>
#include <string_view>

#include "lr/checker.hpp"
#include "lr/semiring.hpp"

namespace lr {

/// Canonical JSON for a derivation, fields in this order:
///   {rule, conclusion: {ctx: [{name, usage, type}], term, type},
///    facts: [{lhs, rhs, kind}], children: [...]}
/// Usages, types and terms are surface-syntax strings. For a leq fact lhs
/// and rhs are the two sides; for add and scale lhs is the expression
/// ("P + Q", "r * P") and rhs its value. Binder names are first made
/// distinct so the output re-ingests to the same bytes.
/// `indent` < 0 gives a single line.
std::string derivation_json(const Semiring& sr, const Derivation& d, int indent = 2);

/// Re-checks the root conclusion of a derivation_json document and requires
/// the regenerated document to agree node for node. ParseError on malformed
/// input, RuleMismatch (with the node path) on disagreement.
Derivation derivation_from_json(const Semiring& sr, std::string_view json);

}  // namespace lr
