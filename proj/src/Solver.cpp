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

#include "modex/Solver.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

namespace modex {

//==============================================================================
// AtomSpace

AtomSpace AtomSpace::build(const Structure& instance, const Vocabulary& expansion) {
    AtomSpace sp;
    sp.instance = instance;
    sp.expansion = expansion;
    sp.atoms = GroundAtoms(Vocabulary::unionOf(instance.vocabulary(), expansion),
                           instance.domain());
    sp.isExpansionAtom.resize(static_cast<size_t>(sp.atoms.count()));
    sp.instanceValue.resize(static_cast<size_t>(sp.atoms.count()));
    for (int i = 0; i < sp.atoms.count(); ++i) {
        const std::string& sym = sp.atoms.symbolOf(i);
        if (expansion.has(sym)) {
            sp.isExpansionAtom[static_cast<size_t>(i)] = true;
        } else {
            sp.instanceValue[static_cast<size_t>(i)] =
                instance.holds(sym, sp.atoms.tupleOf(i));
        }
    }
    return sp;
}

int AtomSpace::atomOf(const GroundLiteral& lit) const {
    int a = atoms.indexOf(lit.symbol, lit.args);
    if (a < 0) throw UnknownAtom("atom outside the universe: " + lit.symbol);
    return a;
}

//==============================================================================
// GroundSolver

GroundSolver::GroundSolver(std::shared_ptr<const AtomSpace> space, SolverConfig cfg)
    : space_(std::move(space)), cfg_(cfg) {
    numAtoms_ = space_->atoms.count();
    assign_.assign(static_cast<size_t>(numAtoms_), Truth::Unknown);
    levelOf_.assign(static_cast<size_t>(numAtoms_), -1);
    reasonOf_.assign(static_cast<size_t>(numAtoms_), kReasonNone);
    activity_.assign(static_cast<size_t>(numAtoms_), 0.0);

    randomOrder_.resize(static_cast<size_t>(numAtoms_));
    std::iota(randomOrder_.begin(), randomOrder_.end(), 0);
    if (cfg_.heuristic == SolverConfig::Heuristic::Random) {
        std::mt19937_64 rng(cfg_.seed);
        std::shuffle(randomOrder_.begin(), randomOrder_.end(), rng);
    }

    // Instance atoms are pinned at level 0.
    for (int a = 0; a < numAtoms_; ++a) {
        if (!space_->isExpansionAtom[static_cast<size_t>(a)])
            enqueue(mkLit(a, !space_->instanceValue[static_cast<size_t>(a)]), kReasonFixed);
    }
}

Truth GroundSolver::value(Lit l) const {
    Truth t = assign_[static_cast<size_t>(varOf(l))];
    if (t == Truth::Unknown || !signOf(l)) return t;
    return t == Truth::True ? Truth::False : Truth::True;
}

void GroundSolver::enqueue(Lit l, int reasonClause) {
    int v = varOf(l);
    assign_[static_cast<size_t>(v)] = signOf(l) ? Truth::False : Truth::True;
    levelOf_[static_cast<size_t>(v)] = currentLevel();
    reasonOf_[static_cast<size_t>(v)] = reasonClause;
    trail_.push_back(l);
    ++epoch_;
}

void GroundSolver::popToLevel(int level) {
    if (currentLevel() <= level) return;
    int keep = trailLim_[static_cast<size_t>(level)];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= keep; --i) {
        int v = varOf(trail_[static_cast<size_t>(i)]);
        assign_[static_cast<size_t>(v)] = Truth::Unknown;
        levelOf_[static_cast<size_t>(v)] = -1;
        reasonOf_[static_cast<size_t>(v)] = kReasonNone;
    }
    trail_.resize(static_cast<size_t>(keep));
    trailLim_.resize(static_cast<size_t>(level));
    ++epoch_;
}

int GroundSolver::propagate() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t ci = 0; ci < clauses_.size(); ++ci) {
            const auto& c = clauses_[ci];
            Lit unknownLit = -1;
            int unknowns = 0;
            bool satisfied = false;
            for (Lit l : c) {
                Truth t = value(l);
                if (t == Truth::True) {
                    satisfied = true;
                    break;
                }
                if (t == Truth::Unknown) {
                    ++unknowns;
                    unknownLit = l;
                    if (unknowns > 1) break;
                }
            }
            if (satisfied || unknowns > 1) continue;
            if (unknowns == 0) return static_cast<int>(ci);  // falsified
            enqueue(unknownLit, static_cast<int>(ci));
            ++stats_.propagations;
            changed = true;
        }
    }
    return -1;
}

std::vector<GroundSolver::Lit> GroundSolver::analyzeToDecisions(int conflictClause) {
    // Resolve the falsified clause against the reasons of its implied
    // literals until only decision literals remain. Level-0 literals are
    // dropped: they are permanent (fixed atoms or units of permanent
    // clauses), so the resolvent stays sound.
    std::vector<bool> seen(static_cast<size_t>(numAtoms_), false);
    std::vector<Lit> work = clauses_[static_cast<size_t>(conflictClause)];
    std::vector<Lit> lemma;
    while (!work.empty()) {
        Lit l = work.back();
        work.pop_back();
        int v = varOf(l);
        if (seen[static_cast<size_t>(v)]) continue;
        seen[static_cast<size_t>(v)] = true;
        int lvl = levelOf_[static_cast<size_t>(v)];
        int reason = reasonOf_[static_cast<size_t>(v)];
        if (lvl <= 0) continue;
        if (reason == kReasonDecision) {
            lemma.push_back(l);  // l is the negation of the decision literal
            activity_[static_cast<size_t>(v)] += 1.0;
        } else {
            for (Lit rl : clauses_[static_cast<size_t>(reason)]) {
                if (varOf(rl) != v) work.push_back(rl);
            }
        }
    }
    std::sort(lemma.begin(), lemma.end());
    return lemma;
}

bool GroundSolver::repair() {
    int conflict = propagate();
    while (conflict != -1) {
        ++stats_.conflicts;
        ++conflictsSinceReset_;
        std::vector<Lit> lemma = analyzeToDecisions(conflict);
        if (lemma.empty()) {
            unsat_ = true;
            return false;
        }
        // Flip the deepest decision in the lemma: pop to just below its
        // level; the lemma is then unit and asserts the flipped literal.
        int deepest = 0;
        Lit flip = -1;
        for (Lit l : lemma) {
            int lvl = levelOf_[static_cast<size_t>(varOf(l))];
            if (lvl > deepest) {
                deepest = lvl;
                flip = l;
            }
        }
        int lemmaIdx = addClauseInternal(lemma, false);
        popToLevel(deepest - 1);
        enqueue(flip, lemmaIdx);
        maybeSoftRestart();
        conflict = propagate();
    }
    return true;
}

int GroundSolver::pickAtom() const {
    if (cfg_.heuristic == SolverConfig::Heuristic::Activity) {
        int best = -1;
        double bestAct = -1.0;
        for (int a = 0; a < numAtoms_; ++a) {
            if (assign_[static_cast<size_t>(a)] != Truth::Unknown) continue;
            if (activity_[static_cast<size_t>(a)] > bestAct) {
                bestAct = activity_[static_cast<size_t>(a)];
                best = a;
            }
        }
        return best;
    }
    const std::vector<int>& order = randomOrder_;  // identity unless Random
    for (int a : order) {
        if (assign_[static_cast<size_t>(a)] == Truth::Unknown) return a;
    }
    return -1;
}

void GroundSolver::decide() {
    int a = pickAtom();
    if (a < 0) return;
    trailLim_.push_back(static_cast<int>(trail_.size()));
    enqueue(mkLit(a, false), kReasonDecision);  // positive polarity first
    ++stats_.decisions;
}

void GroundSolver::maybeSoftRestart() {
    if (cfg_.lubyUnit <= 0) return;
    // luby(x): 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
    auto luby = [](int x) {
        int size = 1;
        int seq = 0;
        while (size < x + 1) {
            ++seq;
            size = 2 * size + 1;
        }
        while (size - 1 != x) {
            size = (size - 1) >> 1;
            --seq;
            x = x % size;
        }
        return 1 << seq;
    };
    uint64_t bound = static_cast<uint64_t>(cfg_.lubyUnit) *
                     static_cast<uint64_t>(luby(restartCount_));
    if (conflictsSinceReset_ >= bound) {
        std::fill(activity_.begin(), activity_.end(), 0.0);
        conflictsSinceReset_ = 0;
        ++restartCount_;
    }
}

int GroundSolver::addClauseInternal(std::vector<Lit> lits, bool external) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i) {
        if (lits[i + 1] == negate(lits[i]) && varOf(lits[i]) == varOf(lits[i + 1]))
            return -1;  // tautology, never constrains
    }
    if (lits.empty()) {
        unsat_ = true;
        return -1;
    }
    clauses_.push_back(std::move(lits));
    clauseExternal_.push_back(external);
    return static_cast<int>(clauses_.size()) - 1;
}

void GroundSolver::addClause(const GroundClause& clause) {
    std::vector<Lit> lits;
    lits.reserve(clause.size());
    for (const auto& gl : clause.literals())
        lits.push_back(mkLit(space_->atomOf(gl), !gl.positive));
    addClauseInternal(std::move(lits), true);
    // If the clause is falsified by the current trail, the next state() call
    // repairs: propagate() reports it as a conflict.
}

PartialStructure GroundSolver::snapshot() const {
    std::map<std::string, std::pair<TupleSet, TupleSet>> sets;
    for (const auto& s : space_->expansion.symbols()) sets[s.name];
    for (int a = 0; a < numAtoms_; ++a) {
        if (!space_->isExpansionAtom[static_cast<size_t>(a)]) continue;
        Truth t = assign_[static_cast<size_t>(a)];
        if (t == Truth::Unknown) continue;
        auto& pm = sets[space_->atoms.symbolOf(a)];
        (t == Truth::True ? pm.first : pm.second).insert(space_->atoms.tupleOf(a));
    }
    return PartialStructure(space_->instance, space_->expansion, sets);
}

SolverState GroundSolver::state() {
    SolverState st;
    if (unsat_ || !repair()) {
        st.sat = false;
        return st;
    }
    if (cfg_.reportMode == SolverConfig::ReportMode::OnlyTotal) {
        while (!allAssigned()) {
            decide();
            if (!repair()) {
                st.sat = false;
                return st;
            }
        }
    } else if (!allAssigned() && epoch_ == lastReportEpoch_) {
        // Nothing changed since the last report; progress requires a decision.
        decide();
        if (!repair()) {
            st.sat = false;
            return st;
        }
    }
    lastReportEpoch_ = epoch_;
    st.sat = true;
    st.partial = snapshot();
    return st;
}

void GroundSolver::dumpCnf(std::ostream& os) const {
    int external = 0;
    for (size_t i = 0; i < clauses_.size(); ++i)
        if (clauseExternal_[i]) ++external;
    int fixed = 0;
    for (int a = 0; a < numAtoms_; ++a)
        if (!space_->isExpansionAtom[static_cast<size_t>(a)]) ++fixed;

    os << "c ground universe and external clause set\n";
    for (int a = 0; a < numAtoms_; ++a) {
        GroundLiteral lit = space_->atoms.literal(a, true);
        os << "c atom " << (a + 1) << ' ' << toString(lit, space_->instance.domain()) << '\n';
    }
    os << "p cnf " << numAtoms_ << ' ' << (external + fixed) << '\n';
    for (int a = 0; a < numAtoms_; ++a) {
        if (space_->isExpansionAtom[static_cast<size_t>(a)]) continue;
        os << (space_->instanceValue[static_cast<size_t>(a)] ? a + 1 : -(a + 1)) << " 0\n";
    }
    for (size_t i = 0; i < clauses_.size(); ++i) {
        if (!clauseExternal_[i]) continue;
        for (Lit l : clauses_[i]) os << (signOf(l) ? -(varOf(l) + 1) : varOf(l) + 1) << ' ';
        os << "0\n";
    }
}

}  // namespace modex
