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

#include "modex/Reasons.h"

namespace modex {

GroundClause adviceToClause(const Advice& advice) {
    std::vector<GroundLiteral> lits;
    lits.reserve(advice.pre.size() + advice.post.size());
    for (const auto& p : advice.pre) lits.push_back(p.negated());
    for (const auto& l : advice.post.literals()) lits.push_back(l);
    return GroundClause(std::move(lits));
}

bool checkAdviceValid(const Advice& advice, const PartialStructure& b,
                      const std::vector<Structure>& totals) {
    for (const auto& p : advice.pre)
        if (b.truth(p) != Truth::True) return false;
    if (evaluate(b, advice.post) != Truth::Unknown) return false;
    for (const auto& total : totals) {
        bool preHolds = true;
        for (const auto& p : advice.pre) {
            if (!satisfies(total, p)) {
                preHolds = false;
                break;
            }
        }
        if (preHolds && !satisfies(total, advice.post)) return false;
    }
    return true;
}

std::string reasonLine(const Reason& reason, const Domain& domain) {
    return "reason " + reason.origin + " : " + toString(reason.clause, domain);
}

std::string adviceLine(const std::string& origin, const GroundClause& clause,
                       const Domain& domain) {
    return "advice " + origin + " : " + toString(clause, domain);
}

}  // namespace modex
