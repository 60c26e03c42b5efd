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

#ifndef MODEX_REASONS_H
#define MODEX_REASONS_H

#include <string>
#include <vector>

#include "modex/Core.h"

namespace modex {

// The common language modules and the solver exchange: ground clauses over
// the flattened vocabulary. Clauses are monotone (adding one never shrinks
// the consequence set) and support the resolution/deduction step needed to
// fire an implication once its precondition is derived, which is all the
// engine relies on.

/// An implication Pre => Post: `pre` is a conjunction of literals already
/// satisfied by the current partial structure, `post` a clause unknown in it
/// but satisfied by every total structure of the emitting module.
struct Advice {
    std::vector<GroundLiteral> pre;
    GroundClause post;
};

/// A rejection certificate: falsified by the rejected partial structure and
/// satisfied by every total structure of the emitting module.
struct Reason {
    GroundClause clause;
    std::string origin;  // module identifier
};

/// Classically equivalent single clause (~pre1 | ~pre2 | ... | post).
GroundClause adviceToClause(const Advice& advice);

/// Checks the three advice conditions against a partial structure and the
/// (desk-scale) enumeration of the module's total structures:
///   1. b satisfies every literal of pre,
///   2. post is unknown in b,
///   3. every total structure satisfies pre => post.
bool checkAdviceValid(const Advice& advice, const PartialStructure& b,
                      const std::vector<Structure>& totals);

/// Trace-log form: `reason <module> : lit1 lit2 ...`.
std::string reasonLine(const Reason& reason, const Domain& domain);
std::string adviceLine(const std::string& origin, const GroundClause& clause,
                       const Domain& domain);

}  // namespace modex

#endif  // MODEX_REASONS_H
