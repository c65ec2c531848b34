#pragma once

#include "lr/checker.hpp"

namespace lr {

/// Simple typing pass: a derivation with rules, contexts, elaborated terms
/// and types filled in but no usages or facts. A null type synthesizes.
Derivation elaborate_skeleton(const Semiring& sr, const TyCtx& ctx, const TermPtr& term,
                              const TyPtr& type);
/// Usage pass over a skeleton, reading the splits stored on its terms.
Derivation assign_usages(const Semiring& sr, const Derivation& skel, const UsageCtx& usage);

}  // namespace lr
