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

#ifndef MODEX_VERIFIER_H
#define MODEX_VERIFIER_H

#include <cstdint>
#include <string>
#include <vector>

#include "modex/Algebra.h"
#include "modex/Engine.h"

namespace modex {

// Brute-force ground truth at desk scale: every total expansion is checked
// against the compound system from first principles.

struct Enumeration {
    std::vector<Structure> totals;     // accepted totals over the search vocabulary
    std::vector<Structure> solutions;  // projected to the output vocabulary, deduplicated
};

/// Enumerates all total expansions of the instance (deterministic order),
/// keeps those accepted by every module, and projects them to the output
/// vocabulary. Throws EnumerationTooLarge beyond `cap` totals.
Enumeration enumerateSolutions(const Task& task, const ModuleRegistry& registry,
                               uint64_t cap = 1ull << 22);

struct CrossCheckReport {
    bool agree = true;
    std::string detail;
};

/// Verdict agreement between an engine outcome and an enumeration, including
/// witness membership for models.
CrossCheckReport crossCheck(const SolveOutcome& outcome, const Enumeration& enumeration);

}  // namespace modex

#endif  // MODEX_VERIFIER_H
