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

#include "modex/Trace.h"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "modex/TextIO.h"

namespace modex {

void EngineTrace::emit(const std::string& kind, const std::string& payload) {
    events_.push_back({kind, payload});
    if (sink_) *sink_ << kind << '\t' << payload << '\n';
}

std::string EngineTrace::text() const {
    std::ostringstream os;
    for (const auto& e : events_) os << e.kind << '\t' << e.payload << '\n';
    return os.str();
}

std::vector<std::set<std::string>> reportedStates(const EngineTrace& trace) {
    std::vector<std::set<std::string>> out;
    for (const auto& e : trace.events()) {
        if (e.kind != kTraceState) continue;
        std::set<std::string> lits;
        for (const auto& tok : splitFields(e.payload)) lits.insert(tok);
        out.push_back(std::move(lits));
    }
    return out;
}

namespace {

bool literalSubset(const std::set<std::string>& small, const std::set<std::string>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::string checkProgressContract(const EngineTrace& trace) {
    std::vector<std::set<std::string>> states = reportedStates(trace);
    for (size_t i = 0; i < states.size(); ++i) {
        bool abandoned = false;
        for (size_t j = i + 1; j < states.size(); ++j) {
            bool ext = literalSubset(states[i], states[j]);
            bool proper = ext && states[j].size() > states[i].size();
            if (!abandoned && proper) continue;
            if (!abandoned) abandoned = true;  // i is abandoned from j onward
            if (ext) {
                return "state " + std::to_string(j) + " extends state " + std::to_string(i) +
                       " after it was abandoned";
            }
        }
    }
    return {};
}

std::vector<LoggedClause> loggedClauses(const EngineTrace& trace, const Domain& domain) {
    std::vector<LoggedClause> out;
    for (const auto& e : trace.events()) {
        if (e.kind != kTraceReason && e.kind != kTraceAdvice && e.kind != kTracePropagated)
            continue;
        size_t colon = e.payload.find(" : ");
        if (colon == std::string::npos) continue;
        LoggedClause lc;
        lc.kind = e.kind;
        lc.origin = e.payload.substr(0, colon);
        std::vector<GroundLiteral> lits;
        for (const auto& tok : splitFields(e.payload.substr(colon + 3)))
            lits.push_back(parseGroundLiteral(tok, domain));
        lc.clause = GroundClause(std::move(lits));
        out.push_back(std::move(lc));
    }
    return out;
}

bool hasDuplicateStates(const EngineTrace& trace) {
    std::vector<std::set<std::string>> states = reportedStates(trace);
    std::set<std::set<std::string>> seen;
    for (const auto& s : states)
        if (!seen.insert(s).second) return true;
    return false;
}

}  // namespace modex
