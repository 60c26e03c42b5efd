// Copyright 2026 The Modex Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MODEX_PROPAGATION_H
#define MODEX_PROPAGATION_H

#include <string>
#include <vector>

#include "modex/Algebra.h"
#include "modex/Core.h"
#include "modex/Oracle.h"

namespace modex {

//==============================================================================
// Feedback chains
//
// For a module with an operator view whose output symbol is fed back into its
// input symbol, iterating the operator from the currently known part of the
// symbol bounds the symbol in every compatible total:
//  - monotone operator: an increasing lower-bound chain,
//  - anti-monotone operator: an increasing lower chain evaluated at the upper
//    bound alternating with a decreasing upper chain evaluated at the lower.
// Both chains are computed inflationarily (each step keeps what is already
// known), which preserves the limits on well-seeded instances and keeps the
// chains monotone for arbitrary solver-produced seeds. Crossing of the lower
// and upper chain proves the current seed assumptions inconsistent.

struct FeedbackChain {
    enum class Kind { Positive, Negative };

    Kind kind = Kind::Positive;
    std::string moduleId;
    std::string symbol;  // the module-local feedback symbol (the operator input)
    int arity = 0;

    std::vector<uint64_t> lowerSizes;  // |L_0|, |L_1|, ... (distinct steps)
    std::vector<uint64_t> upperSizes;  // |U_0|, ... (negative kind only)
    TupleSet lowerLimit;
    TupleSet upperLimit;  // negative kind only
    bool crossed = false;
};

/// Positive-feedback chain for a monotone operator module. `bLocal` is the
/// current partial structure restricted to the module's vocabulary and must
/// be total on everything except the feedback symbol and the output.
/// Observed monotonicity violations throw NonMonotoneObserved.
FeedbackChain positiveFixpoint(Oracle& module, const OperatorSpec& fb,
                               const PartialStructure& bLocal);

/// Negative-feedback pair of chains for an anti-monotone operator module.
FeedbackChain negativeFixpoint(Oracle& module, const OperatorSpec& fb,
                               const PartialStructure& bLocal);

//==============================================================================
// Turning chains into solver input

struct ChainClauses {
    std::vector<GroundClause> units;      // guarded unit clauses, canonical names
    bool inconsistent = false;            // chain crossed
    GroundClause inconsistencyReason;     // negation of the seed assumptions
};

/// Unit clauses implied by a computed chain, over canonical symbol names:
/// positive tuples in L* not yet known true, and (negative kind) negated
/// tuples outside U* not yet known false. Each unit is guarded by the
/// context that produced it: the current literals of the module's
/// non-instance base symbols and of the feedback symbol itself, so the
/// clauses stay sound across backtracking.
ChainClauses chainClauses(const FeedbackChain& chain, const ModuleBinding& binding,
                          const PartialStructure& canonicalB, const Vocabulary& sigma);

/// True when the module's declarations and the current partial structure make
/// its feedback chain computable: an operator view whose input and output are
/// aliased together, the matching (anti-)monotonicity and totality
/// declarations, and a fully known base part. `anti` reports the sense.
bool feedbackApplicable(const Oracle& module, const ModuleBinding& binding,
                        const PartialStructure& canonicalB, bool& anti);

}  // namespace modex

#endif  // MODEX_PROPAGATION_H
