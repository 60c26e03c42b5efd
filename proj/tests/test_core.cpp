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

#include "modex/Core.h"
#include "modex/Ground.h"
#include "testutil.h"

using namespace modex;
using namespace testutil;

TEST_CASE("domain is ordered, duplicate-free, and enumerates tuples lexicographically") {
    CHECK_THROWS_AS(Domain(std::vector<std::string>{}), ModexError);
    CHECK_THROWS_AS(Domain({"a", "a"}), ModexError);
    Domain dom({"b", "a"});
    CHECK(dom.indexOf("b") == 0);  // declaration order, not sorted
    CHECK(dom.tupleCount(2) == 4);
    auto tuples = dom.allTuples(2);
    REQUIRE(tuples.size() == 4);
    CHECK(tuples[0] == Tuple{0, 0});
    CHECK(tuples[3] == Tuple{1, 1});
    CHECK(dom.allTuples(0).size() == 1);
}

TEST_CASE("vocabulary rejects clashing declarations") {
    Vocabulary v;
    v.add({"R", SymbolKind::Relation, 1});
    v.add({"R", SymbolKind::Relation, 1});  // identical re-add is fine
    CHECK_THROWS_AS(v.add({"R", SymbolKind::Relation, 2}), VocabularyClash);
    v.add({"A", SymbolKind::Relation, 0});
    CHECK(v.symbols()[0].name == "A");  // name order
}

TEST_CASE("empty expansion of the triangle instance") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1},
                    {"B", SymbolKind::Relation, 1},
                    {"G", SymbolKind::Relation, 1}});
    PartialStructure b = emptyExpansion(k3, eps);
    CHECK(b.totalPart().tuples("E").size() == 6);
    for (const char* c : {"R", "B", "G"}) {
        CHECK(b.positive(c).empty());
        CHECK(b.negative(c).empty());
    }
    CHECK(b.unknownCount() == 9);
    CHECK(!b.isTotal());

    SUBCASE("no expansion symbols means the structure is already total") {
        PartialStructure t = emptyExpansion(k3, Vocabulary{});
        CHECK(t.isTotal());
        CHECK(t.toStructure() == k3);
    }
    SUBCASE("a single unary symbol over a one-element domain leaves one unknown") {
        Structure one(Domain({"e"}), Vocabulary{});
        PartialStructure p =
            emptyExpansion(one, Vocabulary({{"P", SymbolKind::Relation, 1}}));
        CHECK(p.unknownCount() == 1);
    }
    SUBCASE("overlapping vocabularies clash") {
        CHECK_THROWS_AS(emptyExpansion(k3, Vocabulary({{"E", SymbolKind::Relation, 2}})),
                        VocabularyClash);
    }
}

TEST_CASE("extend adds knowledge, is idempotent, and refuses contradictions") {
    Structure one(Domain({"e"}), Vocabulary{});
    PartialStructure b = emptyExpansion(one, Vocabulary({{"P", SymbolKind::Relation, 1}}));
    PartialStructure b1 = b.extend(GroundLiteral("P", {0}, true));
    CHECK(b1.positive("P") == TupleSet{{0}});
    CHECK(b1.extend(GroundLiteral("P", {0}, true)) == b1);
    CHECK_THROWS_AS(b1.extend(GroundLiteral("P", {0}, false)), Contradiction);
    CHECK(extendsPartial(b1, b));
    CHECK(!extendsPartial(b, b1));
}

TEST_CASE("a chain of extends reaches a proper colouring accepted by the colouring module") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1},
                    {"B", SymbolKind::Relation, 1},
                    {"G", SymbolKind::Relation, 1}});
    PartialStructure b = emptyExpansion(k3, eps);
    // a->R, b->B, c->G
    const char* colourOf[3] = {"R", "B", "G"};
    for (int v = 0; v < 3; ++v)
        for (const char* c : {"R", "B", "G"})
            b = b.extend(GroundLiteral(c, {v}, std::string(c) == colourOf[v]));
    CHECK(b.isTotal());
    auto module = colouringModule(3);
    CHECK(module->accept(b).accepted);

    // Brute force over all 512 total expansions: exactly 6 proper colourings.
    GroundAtoms atoms(eps, k3.domain());
    REQUIRE(atoms.count() == 9);
    int proper = 0;
    for (uint64_t mask = 0; mask < 512; ++mask)
        if (module->contains(buildTotal(k3, eps, atoms, mask))) ++proper;
    CHECK(proper == 6);
}

TEST_CASE("extends compares information content and rejects incomparable structures") {
    Structure one(Domain({"e"}), Vocabulary{});
    Vocabulary eps({{"P", SymbolKind::Relation, 1}});
    PartialStructure bottom = emptyExpansion(one, eps);
    CHECK(extendsPartial(bottom, bottom));  // reflexive
    PartialStructure pos = bottom.extend(GroundLiteral("P", {0}, true));
    PartialStructure neg = bottom.extend(GroundLiteral("P", {0}, false));
    CHECK(extendsPartial(pos, bottom));
    CHECK(!extendsPartial(pos, neg));
    CHECK(!extendsPartial(neg, pos));

    Structure other(Domain({"x", "y"}), Vocabulary{});
    PartialStructure alien = emptyExpansion(other, eps);
    CHECK_THROWS_AS(extendsPartial(alien, bottom), IncomparableStructures);
}

TEST_CASE("is_total counts covered atoms") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1}});
    PartialStructure b = emptyExpansion(k3, eps);
    CHECK(!b.isTotal());
    for (int v = 0; v < 3; ++v) b = b.extend(GroundLiteral("R", {v}, v == 0));
    CHECK(b.isTotal());
    CHECK(emptyExpansion(k3, Vocabulary{}).isTotal());
}

TEST_CASE("three-valued clause evaluation") {
    Structure one(Domain({"a"}), Vocabulary{});
    Vocabulary eps({{"R", SymbolKind::Relation, 1}, {"B", SymbolKind::Relation, 1}});
    PartialStructure b = emptyExpansion(one, eps);

    GroundClause taut({GroundLiteral("R", {0}, true), GroundLiteral("R", {0}, false)});
    CHECK(taut.tautological());
    CHECK(evaluate(b.extend(GroundLiteral("R", {0}, true)), taut) == Truth::True);
    CHECK(evaluate(b, GroundClause{}) == Truth::False);

    PartialStructure rFalse = b.extend(GroundLiteral("R", {0}, false));
    GroundClause rb({GroundLiteral("R", {0}, true), GroundLiteral("B", {0}, true)});
    CHECK(evaluate(rFalse, rb) == Truth::Unknown);
    CHECK(evaluate(rFalse.extend(GroundLiteral("B", {0}, false)), rb) == Truth::False);
    CHECK(evaluate(rFalse.extend(GroundLiteral("B", {0}, true)), rb) == Truth::True);
}

TEST_CASE("evaluation matches the three-valued disjunction table exhaustively") {
    // Two atoms, all 9 knowledge states, against an independent evaluator.
    Structure one(Domain({"a"}), Vocabulary{});
    Vocabulary eps({{"P", SymbolKind::Relation, 1}, {"Q", SymbolKind::Relation, 1}});
    GroundClause clause({GroundLiteral("P", {0}, true), GroundLiteral("Q", {0}, false)});
    Truth states[] = {Truth::True, Truth::False, Truth::Unknown};
    for (Truth p : states) {
        for (Truth q : states) {
            PartialStructure b = emptyExpansion(one, eps);
            if (p != Truth::Unknown) b = b.extend(GroundLiteral("P", {0}, p == Truth::True));
            if (q != Truth::Unknown) b = b.extend(GroundLiteral("Q", {0}, q == Truth::True));
            // lit1 = P, lit2 = not Q
            auto litTruth = [](Truth atom, bool positive) {
                if (atom == Truth::Unknown) return Truth::Unknown;
                bool val = (atom == Truth::True) == positive;
                return val ? Truth::True : Truth::False;
            };
            Truth l1 = litTruth(p, true), l2 = litTruth(q, false);
            Truth expected;
            if (l1 == Truth::True || l2 == Truth::True) expected = Truth::True;
            else if (l1 == Truth::False && l2 == Truth::False) expected = Truth::False;
            else expected = Truth::Unknown;
            CHECK(evaluate(b, clause) == expected);
        }
    }
}

TEST_CASE("property: extension order and evaluation monotonicity on random partials") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1}, {"B", SymbolKind::Relation, 1}});
    GroundAtoms atoms(eps, k3.domain());
    std::mt19937_64 rng(7);

    for (int round = 0; round < 300; ++round) {
        PartialStructure b = randomPartial(k3, eps, atoms, rng);
        CHECK(extendsPartial(b, b));

        std::vector<int> unknown;
        for (int a = 0; a < atoms.count(); ++a)
            if (b.truthOfAtom(atoms.symbolOf(a), atoms.tupleOf(a)) == Truth::Unknown)
                unknown.push_back(a);
        if (!unknown.empty()) {
            int pick = unknown[rng() % unknown.size()];
            PartialStructure b2 = b.extend(atoms.literal(pick, rng() % 2 == 0));
            CHECK(extendsPartial(b2, b));
            CHECK(!extendsPartial(b, b2));  // proper extension is one-directional

            // A random clause: True/False verdicts persist under extension.
            std::vector<GroundLiteral> lits;
            for (int k = 0; k < 3; ++k)
                lits.push_back(
                    atoms.literal(static_cast<int>(rng() % atoms.count()), rng() % 2 == 0));
            GroundClause clause(std::move(lits));
            Truth before = evaluate(b, clause);
            Truth after = evaluate(b2, clause);
            if (before != Truth::Unknown) CHECK(after == before);
        }

        // Transitivity along a random chain.
        PartialStructure c = b;
        for (int step = 0; step < 2; ++step) {
            std::vector<int> open;
            for (int a = 0; a < atoms.count(); ++a)
                if (c.truthOfAtom(atoms.symbolOf(a), atoms.tupleOf(a)) == Truth::Unknown)
                    open.push_back(a);
            if (open.empty()) break;
            c = c.extend(atoms.literal(open[rng() % open.size()], rng() % 2 == 0));
        }
        CHECK(extendsPartial(c, b));
    }
}

TEST_CASE("a total structure evaluates every clause two-valued") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1}});
    GroundAtoms atoms(eps, k3.domain());
    std::mt19937_64 rng(11);
    for (uint64_t mask = 0; mask < 8; ++mask) {
        PartialStructure b = buildPartial(k3, eps, atoms, mask, ~mask & 7);
        REQUIRE(b.isTotal());
        for (int round = 0; round < 20; ++round) {
            std::vector<GroundLiteral> lits;
            for (int k = 0; k < 2; ++k)
                lits.push_back(
                    atoms.literal(static_cast<int>(rng() % atoms.count()), rng() % 2 == 0));
            CHECK(evaluate(b, GroundClause(std::move(lits))) != Truth::Unknown);
        }
    }
}

TEST_CASE("restriction with renaming reads the source symbols") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1}});
    PartialStructure b = emptyExpansion(k3, eps).extend(GroundLiteral("R", {1}, true));
    Vocabulary local({{"Edge", SymbolKind::Relation, 2}, {"Red", SymbolKind::Relation, 1}});
    PartialStructure r = b.restrictedTo(local, {{"Edge", "E"}, {"Red", "R"}});
    CHECK(r.totalPart().tuples("Edge").size() == 6);
    CHECK(r.positive("Red") == TupleSet{{1}});
    CHECK(r.truth(GroundLiteral("Red", {0}, true)) == Truth::Unknown);
}
