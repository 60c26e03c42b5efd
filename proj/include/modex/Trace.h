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

#ifndef MODEX_TRACE_H
#define MODEX_TRACE_H

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "modex/Core.h"

namespace modex {

//==============================================================================
// Engine trace
//
// One line per event, `kind<TAB>payload`. Reported states carry the signed
// expansion literals in deterministic order, so traces are byte-identical
// across runs with the same inputs and seed, and offline checks (progress
// contract, reason/advice soundness) work from the trace alone.

struct TraceEvent {
    std::string kind;
    std::string payload;
};

class EngineTrace {
  public:
    void attachSink(std::ostream* sink) { sink_ = sink; }

    void emit(const std::string& kind, const std::string& payload);

    const std::vector<TraceEvent>& events() const { return events_; }
    std::string text() const;

  private:
    std::vector<TraceEvent> events_;
    std::ostream* sink_ = nullptr;
};

// Event kinds.
inline constexpr const char* kTraceState = "state";
inline constexpr const char* kTraceAdvice = "advice";
inline constexpr const char* kTraceAdvices = "advices";
inline constexpr const char* kTraceReason = "reason";
inline constexpr const char* kTraceChain = "chain";
inline constexpr const char* kTracePropagate = "propagate";
inline constexpr const char* kTracePropagated = "propagated";
inline constexpr const char* kTraceModel = "model";
inline constexpr const char* kTraceUnsat = "unsat";
inline constexpr const char* kTraceResourceOut = "resource-out";

//==============================================================================
// Offline checks

/// Reported states as sets of signed literal strings, in report order.
std::vector<std::set<std::string>> reportedStates(const EngineTrace& trace);

/// The online-solver progress contract, decided from the trace alone: for
/// reports i < j, either j properly extends i, or no report from j onward
/// extends i. Returns the first offending (i, j, k) description, empty when
/// the contract holds.
std::string checkProgressContract(const EngineTrace& trace);

/// All reason/advice clauses logged in the trace, parsed back against a
/// domain (payload format: `<origin> : lit1 lit2 ...`).
struct LoggedClause {
    std::string kind;    // reason | advice
    std::string origin;  // module id
    GroundClause clause;
};
std::vector<LoggedClause> loggedClauses(const EngineTrace& trace, const Domain& domain);

/// True when some state payload repeats a total assignment (used by the
/// engine termination test: no total is ever proposed twice).
bool hasDuplicateStates(const EngineTrace& trace);

}  // namespace modex

#endif  // MODEX_TRACE_H
