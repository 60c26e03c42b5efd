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

#ifndef MODEX_ORACLE_H
#define MODEX_ORACLE_H

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "modex/Core.h"
#include "modex/Reasons.h"

namespace modex {

//==============================================================================
// The oracle contract
//
// Every module is a set of total structures over its vocabulary, exposed to
// the engine through an oracle that must be:
//  - Verifying: a valid acceptance procedure — decides totals exactly, never
//    rejects a partial structure that still extends to a member. Accepting a
//    doomed non-total partial is allowed.
//  - Complete and constructive: each rejection carries a reason clause
//    falsified by the rejected partial and satisfied by every member total.
//  - Advising: emitted advices are valid implications (precondition satisfied,
//    postcondition unknown, satisfied by every member total).

struct Verdict {
    bool accepted = true;
    Reason reason;  // meaningful only when !accepted

    static Verdict acceptance() { return Verdict{}; }
    static Verdict rejection(Reason r) { return Verdict{false, std::move(r)}; }
};

/// Declared structural properties a module may advertise so the engine can
/// run fixpoint propagation on feedback loops.
struct TotalityDecl {
    std::vector<std::string> symbols;  // the module is total on this sub-vocabulary
};

struct MonotonicityDecl {
    std::vector<std::string> over;    // varying part (input of the operator view)
    std::vector<std::string> fixed;   // part held equal
    std::vector<std::string> target;  // responding part (output of the operator view)
    bool antiMonotone = false;
};

struct ModuleProperties {
    std::vector<TotalityDecl> totality;
    std::vector<MonotonicityDecl> monotonicity;
};

/// Operator view of a module: a designated input symbol is mapped
/// deterministically to the interpretation of a designated output symbol.
struct OperatorSpec {
    std::string input;   // S
    std::string output;  // R
};

class Oracle {
  public:
    virtual ~Oracle() = default;

    virtual const Vocabulary& vocabulary() const = 0;

    /// Accept/reject a partial structure over this module's vocabulary.
    /// May keep internal caches; the engine serializes calls.
    virtual Verdict accept(const PartialStructure& b) = 0;

    /// Valid advices wrt b and this module, at most `budget` of them.
    virtual std::vector<Advice> advices(const PartialStructure& b, int budget) = 0;

    /// Ground-truth membership of a total structure, computed independently
    /// of accept(). Certification checks the two against each other.
    virtual bool contains(const Structure& total) const = 0;

    virtual ModuleProperties properties() const { return {}; }

    /// Non-null when the module supports the operator view.
    virtual const OperatorSpec* operatorSpec() const { return nullptr; }

    /// Image of the output symbol for a total input structure over
    /// vocabulary \ {output}. Must be deterministic.
    virtual TupleSet operatorEval(const Structure& input) const {
        (void)input;
        throw ModexError("module has no operator view");
    }
};

//==============================================================================
// Certification
//
// Checks an oracle against the certificate set induced by its own declared
// structure set (contains()), exhaustively on totals and on a random sample
// of partial structures.

struct CertifyViolation {
    enum Kind {
        AcceptedNonMember,   // total accepted but not in the set
        RejectedMember,      // total rejected but in the set
        RejectedGoodPartial, // partial rejected though a member extends it
        ReasonCutsMember,    // reason clause falsified by some member total
        ReasonNotFalsified,  // reason not falsified by the rejected structure
        InvalidAdvice,       // advice violating one of the three conditions
    };
    Kind kind;
    std::string detail;
};

struct CertifyReport {
    uint64_t totalsChecked = 0;
    uint64_t memberCount = 0;
    uint64_t partialsProbed = 0;
    uint64_t rejections = 0;
    uint64_t advicesChecked = 0;
    std::vector<CertifyViolation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

/// `instance` fixes the instance-vocabulary part (its vocabulary must be a
/// subset of the oracle's); the rest of the oracle vocabulary is enumerated.
/// Throws EnumerationTooLarge beyond `maxTotals` total expansions.
CertifyReport certifyOracle(Oracle& oracle, const Structure& instance, int maxProbes,
                            uint64_t seed = 1, uint64_t maxTotals = 1ull << 20);

const char* toString(CertifyViolation::Kind kind);

}  // namespace modex

#endif  // MODEX_ORACLE_H
