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

#ifndef MODEX_ENGINE_H
#define MODEX_ENGINE_H

#include <cstdint>
#include <string>

#include "modex/Algebra.h"
#include "modex/Solver.h"
#include "modex/Trace.h"

namespace modex {

//==============================================================================
// The lazy model expansion loop
//
// Starting from the empty expansion of the instance, the online solver
// gradually extends a partial structure while the module oracles steer it:
// each reported state first collects advices from every oracle, then the
// modules are scanned in registration order; the first rejecting module's
// reason clause is added to the solver. An accepted total is the answer,
// projected to the output vocabulary.

struct EngineConfig {
    SolverConfig solver;
    uint64_t maxIterations = 1'000'000;
    int64_t wallClockMs = 0;  // 0 = no wall-clock cap
    int adviceBudget = 64;    // per oracle per reported state
    bool collectAllReasons = false;
    bool propagate = false;   // run feedback-chain propagation
    std::string dumpCnfPath;  // when set, dump universe + clause set at the end
};

struct SolveStats {
    uint64_t iterations = 0;
    uint64_t reasonsAdded = 0;
    uint64_t advicesAdded = 0;
    uint64_t unitsPropagated = 0;
};

struct SolveOutcome {
    enum class Kind { Model, Unsatisfiable, ResourceOut };

    Kind kind = Kind::Unsatisfiable;
    Structure model;    // over the output vocabulary (Kind::Model)
    Structure witness;  // the un-projected total, kept for audit (Kind::Model)
    std::string resourceKind;  // "iterations" | "time" (Kind::ResourceOut)
    SolveStats stats;
};

/// Runs the loop. Oracles must be registered for every module of the task's
/// flat system. Throws MisbehavingOracle when a rejection's reason is not
/// falsified by the rejected state.
SolveOutcome solve(const Task& task, const ModuleRegistry& registry, const EngineConfig& cfg,
                   EngineTrace* trace = nullptr);

/// Restriction of a canonical-space partial structure to one module's local
/// vocabulary (shared with the verifier and tests).
PartialStructure restrictToModule(const PartialStructure& b, const ModuleBinding& binding,
                                  const Vocabulary& sigma);

}  // namespace modex

#endif  // MODEX_ENGINE_H
