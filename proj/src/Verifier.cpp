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

#include "modex/Verifier.h"

#include <algorithm>
#include <set>

#include "modex/Ground.h"

namespace modex {

Enumeration enumerateSolutions(const Task& task, const ModuleRegistry& registry, uint64_t cap) {
    Enumeration out;
    GroundAtoms atoms(task.epsilon, task.instance.domain());
    if (atoms.count() >= 62 || (1ull << atoms.count()) > cap)
        throw EnumerationTooLarge("total expansion space exceeds the enumeration cap");
    const uint64_t totalCount = 1ull << atoms.count();

    std::set<Structure> seenProjection;
    for (uint64_t mask = 0; mask < totalCount; ++mask) {
        Structure total = buildTotal(task.instance, task.epsilon, atoms, mask);
        if (!acceptsTotal(task.flat, registry, total)) continue;
        Structure projected = total.restrictedTo(task.flat.outputVocab);
        out.totals.push_back(std::move(total));
        if (seenProjection.insert(projected).second)
            out.solutions.push_back(std::move(projected));
    }
    return out;
}

CrossCheckReport crossCheck(const SolveOutcome& outcome, const Enumeration& enumeration) {
    CrossCheckReport report;
    if (outcome.kind == SolveOutcome::Kind::ResourceOut) {
        report.agree = false;
        report.detail = "engine ran out of budget; no verdict to compare";
        return report;
    }
    bool engineSat = outcome.kind == SolveOutcome::Kind::Model;
    bool bruteSat = !enumeration.solutions.empty();
    if (engineSat != bruteSat) {
        report.agree = false;
        report.detail = engineSat ? "engine found a model but enumeration is empty"
                                  : "engine reports unsatisfiable but enumeration is non-empty";
        return report;
    }
    if (engineSat) {
        bool witnessFound = std::find(enumeration.totals.begin(), enumeration.totals.end(),
                                      outcome.witness) != enumeration.totals.end();
        if (!witnessFound) {
            report.agree = false;
            report.detail = "model witness does not appear among the accepted totals";
            return report;
        }
        bool modelFound = std::find(enumeration.solutions.begin(), enumeration.solutions.end(),
                                    outcome.model) != enumeration.solutions.end();
        if (!modelFound) {
            report.agree = false;
            report.detail = "projected model does not appear among the solutions";
            return report;
        }
    }
    return report;
}

}  // namespace modex
