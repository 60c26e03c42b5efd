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

#ifndef MODEX_SOLVER_H
#define MODEX_SOLVER_H

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "modex/Core.h"
#include "modex/Ground.h"

namespace modex {

//==============================================================================
// Atom space: the ground universe the solver searches over.

struct AtomSpace {
    Structure instance;    // fixes the instance-vocabulary atoms
    Vocabulary expansion;  // searched three-valued symbols
    GroundAtoms atoms;     // all ground atoms, instance + expansion

    std::vector<bool> isExpansionAtom;  // per atom index
    std::vector<bool> instanceValue;    // per atom index, when not expansion

    static AtomSpace build(const Structure& instance, const Vocabulary& expansion);

    /// Atom index of a literal's ground atom; throws UnknownAtom when the
    /// literal is outside the universe.
    int atomOf(const GroundLiteral& lit) const;
};

//==============================================================================
// Configuration and reported state

struct SolverConfig {
    enum class ReportMode { AfterEachDecision, OnlyTotal };
    enum class Heuristic { LowestIndex, Activity, Random };

    ReportMode reportMode = ReportMode::AfterEachDecision;
    Heuristic heuristic = Heuristic::LowestIndex;
    uint64_t seed = 1;
    // 0 disables restarts. A positive unit runs a Luby-scheduled soft restart:
    // heuristic state is reset but the trail is kept, so the reported-state
    // progress contract stays intact.
    int lubyUnit = 0;
};

struct SolverState {
    bool sat = true;
    PartialStructure partial;  // meaningful when sat
};

//==============================================================================
// GroundSolver
//
// An incremental conflict-driven search engine over ground atoms. Clauses can
// be added at any time; state() advances the search to the next report point
// and returns either UNSAT or a partial structure that falsifies no clause
// added so far.
//
// Reported states obey the online-solver progress contract: for reports
// i < j, either the j-th properly extends the i-th, or no report from j on
// extends the i-th again. This is guaranteed by construction:
//  - propagation assigns at the current decision level only, so the trail
//    below a live literal never changes;
//  - conflicts are resolved down to decision literals and backtracking always
//    flips the deepest decision occurring in the resolved lemma. Every pop
//    that unassigns part of a previously reported trail therefore negates one
//    of that trail's literals, and the negation persists until an even
//    shallower decision (also part of that trail) is flipped in turn.
// The classic first-UIP scheme does not have this property, which is why the
// solver resolves lemmas to decisions.

class GroundSolver {
  public:
    GroundSolver(std::shared_ptr<const AtomSpace> space, SolverConfig cfg);

    /// Add a clause over the universe. May trigger repair on the next state().
    void addClause(const GroundClause& clause);

    /// Advance to the next report point and return the state.
    SolverState state();

    bool knownUnsat() const { return unsat_; }

    /// DIMACS-style dump of the universe, fixed atoms, and externally added
    /// clauses (internal lemmas are derived and excluded).
    void dumpCnf(std::ostream& os) const;

    uint64_t decisions() const { return stats_.decisions; }
    uint64_t conflicts() const { return stats_.conflicts; }
    uint64_t propagations() const { return stats_.propagations; }

  private:
    using Lit = int;  // 2*atom + (1 if negative)
    static int varOf(Lit l) { return l >> 1; }
    static bool signOf(Lit l) { return l & 1; }  // true = negative
    static Lit mkLit(int var, bool negative) { return 2 * var + (negative ? 1 : 0); }
    static Lit negate(Lit l) { return l ^ 1; }

    enum : int { kReasonDecision = -1, kReasonFixed = -2, kReasonNone = -3 };

    Truth value(Lit l) const;
    void enqueue(Lit l, int reasonClause);
    void popToLevel(int level);
    int currentLevel() const { return static_cast<int>(trailLim_.size()); }
    bool allAssigned() const { return static_cast<int>(trail_.size()) == numAtoms_; }

    /// Unit propagation to fixpoint; returns a falsified clause index or -1.
    int propagate();
    /// Resolve conflicts until the trail is stable; false when UNSAT.
    bool repair();
    /// Resolve a falsified clause down to decision literals; returns the
    /// lemma (all-false literals) or empty when the conflict is at level 0.
    std::vector<Lit> analyzeToDecisions(int conflictClause);
    void decide();
    int pickAtom() const;
    void maybeSoftRestart();

    int addClauseInternal(std::vector<Lit> lits, bool external);
    PartialStructure snapshot() const;

    std::shared_ptr<const AtomSpace> space_;
    SolverConfig cfg_;
    int numAtoms_ = 0;

    std::vector<std::vector<Lit>> clauses_;
    std::vector<bool> clauseExternal_;

    std::vector<Truth> assign_;
    std::vector<int> levelOf_;
    std::vector<int> reasonOf_;
    std::vector<Lit> trail_;
    std::vector<int> trailLim_;

    bool unsat_ = false;
    uint64_t epoch_ = 0;              // bumped on every assign/unassign
    uint64_t lastReportEpoch_ = ~0ull;

    std::vector<double> activity_;
    std::vector<int> randomOrder_;
    uint64_t conflictsSinceReset_ = 0;
    int restartCount_ = 0;

    struct Stats {
        uint64_t decisions = 0;
        uint64_t conflicts = 0;
        uint64_t propagations = 0;
    } stats_;
};

}  // namespace modex

#endif  // MODEX_SOLVER_H
