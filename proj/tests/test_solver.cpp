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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "modex/Solver.h"
#include "testutil.h"

using namespace modex;
using namespace testutil;

namespace {

// A tiny propositional universe: n arity-0 relations P0..Pn-1.
std::shared_ptr<AtomSpace> propSpace(int n) {
    Domain dom({"e"});
    Vocabulary eps;
    for (int i = 0; i < n; ++i)
        eps.add({"P" + std::to_string(i), SymbolKind::Relation, 0});
    Structure inst(dom, Vocabulary{});
    return std::make_shared<AtomSpace>(AtomSpace::build(inst, eps));
}

GroundLiteral prop(int i, bool positive) {
    return GroundLiteral("P" + std::to_string(i), {}, positive);
}

// Literal-level extension: every assignment of `less` appears in `more`.
bool stateExtends(const PartialStructure& more, const PartialStructure& less) {
    return extendsPartial(more, less);
}

std::vector<GroundClause> randomCnf(int vars, int clauses, std::mt19937_64& rng) {
    std::vector<GroundClause> out;
    for (int i = 0; i < clauses; ++i) {
        std::vector<GroundLiteral> lits;
        int len = 1 + static_cast<int>(rng() % 3);
        for (int j = 0; j < len; ++j)
            lits.push_back(prop(static_cast<int>(rng() % vars), rng() % 2 == 0));
        out.emplace_back(std::move(lits));
    }
    return out;
}

// Brute-force satisfiability of a clause set over n propositions.
bool bruteSat(int n, const std::vector<GroundClause>& clauses) {
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        bool ok = true;
        for (const auto& c : clauses) {
            bool sat = false;
            for (const auto& l : c.literals()) {
                int idx = std::stoi(l.symbol.substr(1));
                bool v = (mask >> idx) & 1;
                if (v == l.positive) sat = true;
            }
            if (!sat) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

bool falsifies(const PartialStructure& b, const GroundClause& c) {
    return evaluate(b, c) == Truth::False;
}

}  // namespace

TEST_CASE("the triangle universe pins edge atoms and leaves nine colour atoms free") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1},
                    {"B", SymbolKind::Relation, 1},
                    {"G", SymbolKind::Relation, 1}});
    auto space = std::make_shared<AtomSpace>(AtomSpace::build(k3, eps));
    int fixed = 0, free_ = 0;
    for (int a = 0; a < space->atoms.count(); ++a)
        (space->isExpansionAtom[a] ? free_ : fixed)++;
    CHECK(fixed == 9);
    CHECK(free_ == 9);

    GroundSolver solver(space, SolverConfig{});
    SolverState st = solver.state();
    REQUIRE(st.sat);
    CHECK(st.partial.totalPart().tuples("E").size() == 6);
}

TEST_CASE("zero free atoms reports a total state immediately") {
    Structure k3 = cliqueInstance(3);
    auto space = std::make_shared<AtomSpace>(AtomSpace::build(k3, Vocabulary{}));
    GroundSolver solver(space, SolverConfig{});
    SolverState st = solver.state();
    REQUIRE(st.sat);
    CHECK(st.partial.isTotal());
}

TEST_CASE("unit clauses persist in every later report") {
    auto space = propSpace(4);
    GroundSolver solver(space, SolverConfig{});
    solver.addClause(GroundClause({prop(2, true)}));
    for (int i = 0; i < 6; ++i) {
        SolverState st = solver.state();
        REQUIRE(st.sat);
        CHECK(st.partial.truthOfAtom("P2", {}) == Truth::True);
        if (st.partial.isTotal()) break;
    }
}

TEST_CASE("contradictory units are unsatisfiable") {
    auto space = propSpace(2);
    GroundSolver solver(space, SolverConfig{});
    solver.addClause(GroundClause({prop(0, true)}));
    solver.addClause(GroundClause({prop(0, false)}));
    CHECK(!solver.state().sat);
    CHECK(solver.knownUnsat());
}

TEST_CASE("clauses over unknown atoms are rejected") {
    auto space = propSpace(2);
    GroundSolver solver(space, SolverConfig{});
    CHECK_THROWS_AS(solver.addClause(GroundClause({GroundLiteral("Q", {}, true)})),
                    UnknownAtom);
}

TEST_CASE("an instance atom conflicting with added clauses yields UNSAT") {
    Structure k3 = cliqueInstance(3);
    auto space = std::make_shared<AtomSpace>(
        AtomSpace::build(k3, Vocabulary({{"X", SymbolKind::Relation, 0}})));
    GroundSolver solver(space, SolverConfig{});
    // E(a,b) holds in the instance; demanding its negation is contradictory.
    solver.addClause(GroundClause({GroundLiteral("E", {0, 1}, false)}));
    CHECK(!solver.state().sat);
}

TEST_CASE("only-total mode reports totals satisfying all clauses") {
    auto space = propSpace(5);
    SolverConfig cfg;
    cfg.reportMode = SolverConfig::ReportMode::OnlyTotal;
    GroundSolver solver(space, cfg);
    std::mt19937_64 rng(3);
    auto clauses = randomCnf(5, 6, rng);
    for (const auto& c : clauses) solver.addClause(c);
    SolverState st = solver.state();
    if (st.sat) {
        CHECK(st.partial.isTotal());
        for (const auto& c : clauses) CHECK(evaluate(st.partial, c) == Truth::True);
    }
    CHECK(st.sat == bruteSat(5, clauses));
}

TEST_CASE("soundness and completeness against brute force on random formulas") {
    for (uint64_t seed = 1; seed <= 120; ++seed) {
        std::mt19937_64 rng(seed);
        int vars = 3 + static_cast<int>(rng() % 6);
        auto clauses = randomCnf(vars, 2 + static_cast<int>(rng() % 12), rng);

        for (auto heuristic : {SolverConfig::Heuristic::LowestIndex,
                               SolverConfig::Heuristic::Activity,
                               SolverConfig::Heuristic::Random}) {
            auto space = propSpace(vars);
            SolverConfig cfg;
            cfg.heuristic = heuristic;
            cfg.seed = seed;
            GroundSolver solver(space, cfg);
            for (const auto& c : clauses) solver.addClause(c);

            bool expected = bruteSat(vars, clauses);
            SolverState st = solver.state();
            int guard = 0;
            while (st.sat && !st.partial.isTotal()) {
                for (const auto& c : clauses) CHECK(!falsifies(st.partial, c));
                st = solver.state();
                REQUIRE(++guard < 1000);
            }
            CHECK(st.sat == expected);
            if (st.sat)
                for (const auto& c : clauses) CHECK(evaluate(st.partial, c) == Truth::True);
        }
    }
}

TEST_CASE("progress contract holds under adversarial mid-run clause additions") {
    // Interleave state() with random clause additions (including clauses that
    // are falsified by the current report, the way engine reasons are) and
    // check the reported-state contract offline. The client follows the loop
    // protocol: a total state is only re-polled after a cutting clause.
    for (uint64_t seed = 1; seed <= 300; ++seed) {
        std::mt19937_64 rng(seed * 977);
        int vars = 3 + static_cast<int>(rng() % 5);
        auto space = propSpace(vars);
        SolverConfig scfg;
        scfg.seed = seed;
        if (seed % 3 == 1) scfg.heuristic = SolverConfig::Heuristic::Activity;
        if (seed % 3 == 2) scfg.heuristic = SolverConfig::Heuristic::Random;
        if (seed % 5 == 0) scfg.lubyUnit = 1;
        GroundSolver solver(space, scfg);

        std::vector<PartialStructure> reports;
        std::vector<GroundClause> added;
        bool lastWasCut = true;
        for (int step = 0; step < 200; ++step) {
            if (!lastWasCut && !reports.empty() && reports.back().isTotal()) break;
            SolverState st = solver.state();
            if (!st.sat) break;
            for (const auto& c : added) CHECK(!falsifies(st.partial, c));
            reports.push_back(st.partial);
            lastWasCut = false;

            if (rng() % 2 == 0) {
                // Sometimes cut the current state like a rejecting oracle:
                // a clause falsified by the report.
                std::vector<GroundLiteral> lits;
                bool cut = rng() % 3 == 0;
                int len = 1 + static_cast<int>(rng() % 3);
                for (int j = 0; j < len; ++j) {
                    int v = static_cast<int>(rng() % vars);
                    Truth t = reports.back().truthOfAtom("P" + std::to_string(v), {});
                    bool positive = rng() % 2 == 0;
                    if (cut && t != Truth::Unknown) positive = t != Truth::True;
                    lits.push_back(prop(v, positive));
                }
                GroundClause c(std::move(lits));
                if (evaluate(reports.back(), c) == Truth::False) lastWasCut = true;
                solver.addClause(c);
                added.push_back(c);
            }
        }

        // The contract, pairwise over all reports.
        for (size_t i = 0; i < reports.size(); ++i) {
            bool abandoned = false;
            for (size_t j = i + 1; j < reports.size(); ++j) {
                bool ext = stateExtends(reports[j], reports[i]);
                bool proper = ext && !(reports[j] == reports[i]);
                if (!abandoned && proper) continue;
                if (!abandoned) abandoned = true;
                CHECK(!ext);
                if (ext) return;  // stop at first failure; output is enough
            }
        }
    }
}

TEST_CASE("a clause falsified by a reported state permanently abandons it") {
    auto space = propSpace(4);
    GroundSolver solver(space, SolverConfig{});
    SolverState st = solver.state();
    // Decide a couple of atoms first.
    st = solver.state();
    st = solver.state();
    REQUIRE(st.sat);
    PartialStructure rejected = st.partial;

    // Build the cutting clause from the state's assigned literals.
    std::vector<GroundLiteral> lits;
    for (int i = 0; i < 4; ++i) {
        Truth t = rejected.truthOfAtom("P" + std::to_string(i), {});
        if (t != Truth::Unknown) lits.push_back(prop(i, t != Truth::True));
    }
    REQUIRE(!lits.empty());
    solver.addClause(GroundClause(std::move(lits)));

    for (int step = 0; step < 30; ++step) {
        SolverState next = solver.state();
        if (!next.sat) break;
        CHECK(!stateExtends(next.partial, rejected));
        if (next.partial.isTotal()) break;
    }
}

TEST_CASE("identical configuration and seed reproduce the identical run") {
    for (auto heuristic : {SolverConfig::Heuristic::LowestIndex,
                           SolverConfig::Heuristic::Random}) {
        auto run = [&] {
            std::mt19937_64 rng(42);
            auto clauses = randomCnf(6, 10, rng);
            auto space = propSpace(6);
            SolverConfig cfg;
            cfg.heuristic = heuristic;
            cfg.seed = 1234;
            GroundSolver solver(space, cfg);
            for (const auto& c : clauses) solver.addClause(c);
            std::vector<PartialStructure> states;
            for (int i = 0; i < 25; ++i) {
                SolverState st = solver.state();
                if (!st.sat) break;
                states.push_back(st.partial);
                if (st.partial.isTotal()) break;
            }
            return states;
        };
        auto a = run();
        auto b = run();
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    }
}

TEST_CASE("luby-scheduled heuristic resets keep the trail and the contract") {
    std::mt19937_64 rng(5);
    auto clauses = randomCnf(6, 14, rng);
    auto space = propSpace(6);
    SolverConfig cfg;
    cfg.heuristic = SolverConfig::Heuristic::Activity;
    cfg.lubyUnit = 1;
    GroundSolver solver(space, cfg);
    for (const auto& c : clauses) solver.addClause(c);

    std::vector<PartialStructure> reports;
    SolverState st = solver.state();
    int guard = 0;
    while (st.sat && !st.partial.isTotal()) {
        reports.push_back(st.partial);
        st = solver.state();
        REQUIRE(++guard < 500);
    }
    CHECK(st.sat == bruteSat(6, clauses));
    for (size_t i = 0; i < reports.size(); ++i) {
        bool abandoned = false;
        for (size_t j = i + 1; j < reports.size(); ++j) {
            bool ext = stateExtends(reports[j], reports[i]);
            bool proper = ext && !(reports[j] == reports[i]);
            if (!abandoned && proper) continue;
            if (!abandoned) abandoned = true;
            CHECK(!ext);
        }
    }
}

TEST_CASE("the clause dump lists the universe, pinned atoms, and external clauses") {
    Structure k3 = cliqueInstance(3);
    auto space = std::make_shared<AtomSpace>(
        AtomSpace::build(k3, Vocabulary({{"R", SymbolKind::Relation, 1}})));
    GroundSolver solver(space, SolverConfig{});
    solver.addClause(GroundClause({GroundLiteral("R", {0}, true),
                                   GroundLiteral("R", {1}, true)}));
    std::ostringstream os;
    solver.dumpCnf(os);
    std::string dump = os.str();
    CHECK(dump.find("p cnf 12 10") != std::string::npos);  // 9 pinned + 1 external
    CHECK(dump.find("c atom 1 ") != std::string::npos);
}
