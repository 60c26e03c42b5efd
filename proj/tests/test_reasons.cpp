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

#include "modex/Ground.h"
#include "modex/Reasons.h"
#include "testutil.h"

using namespace modex;
using namespace testutil;

namespace {

// Independent two-valued evaluator over explicit assignments (atom -> bool).
bool holdsUnder(const GroundLiteral& l, bool value) { return value == l.positive; }

}  // namespace

TEST_CASE("advice_to_clause") {
    GroundLiteral p0("P", {0}, true), p1("P", {1}, true);
    GroundLiteral q0("Q", {0}, true), q1("Q", {1}, true);

    SUBCASE("single precondition") {
        Advice a{{p0}, GroundClause({q0})};
        CHECK(adviceToClause(a) == GroundClause({p0.negated(), q0}));
    }
    SUBCASE("empty precondition gives the postcondition itself") {
        Advice a{{}, GroundClause({q0})};
        CHECK(adviceToClause(a) == GroundClause({q0}));
    }
    SUBCASE("two preconditions and a two-literal post give four literals") {
        Advice a{{p0, p1}, GroundClause({q0, q1})};
        GroundClause c = adviceToClause(a);
        CHECK(c.size() == 4);

        // Truth-table equivalence over all 16 assignments to P(0), P(1),
        // Q(0), Q(1), computed independently of the conversion.
        for (int bits = 0; bits < 16; ++bits) {
            bool vp0 = bits & 1, vp1 = bits & 2, vq0 = bits & 4, vq1 = bits & 8;
            bool pre = holdsUnder(p0, vp0) && holdsUnder(p1, vp1);
            bool post = holdsUnder(q0, vq0) || holdsUnder(q1, vq1);
            bool implication = !pre || post;
            bool clauseHolds = false;
            for (const auto& l : c.literals()) {
                bool v = l.symbol == "P" ? (l.args[0] == 0 ? vp0 : vp1)
                                         : (l.args[0] == 0 ? vq0 : vq1);
                if (holdsUnder(l, v)) clauseHolds = true;
            }
            CHECK(clauseHolds == implication);
        }
    }
}

TEST_CASE("advice validity against the triangle colouring module") {
    Structure k3 = cliqueInstance(3);
    Vocabulary eps({{"R", SymbolKind::Relation, 1},
                    {"B", SymbolKind::Relation, 1},
                    {"G", SymbolKind::Relation, 1}});
    auto module = colouringModule(3);

    // The module's totals, enumerated from first principles.
    GroundAtoms atoms(eps, k3.domain());
    std::vector<Structure> totals;
    for (uint64_t mask = 0; mask < 512; ++mask) {
        Structure t = buildTotal(k3, eps, atoms, mask);
        if (module->contains(t)) totals.push_back(t);
    }
    REQUIRE(totals.size() == 6);

    PartialStructure b = emptyExpansion(k3, eps)
                             .extend(GroundLiteral("R", {0}, false))
                             .extend(GroundLiteral("B", {0}, false));

    SUBCASE("unit propagation: vertex a must be green") {
        Advice good{{GroundLiteral("R", {0}, false), GroundLiteral("B", {0}, false)},
                    GroundClause({GroundLiteral("G", {0}, true)})};
        CHECK(checkAdviceValid(good, b, totals));
    }
    SUBCASE("a post already satisfied is not an advice") {
        PartialStructure b2 = b.extend(GroundLiteral("G", {0}, true));
        Advice a{{GroundLiteral("R", {0}, false)}, GroundClause({GroundLiteral("G", {0}, true)})};
        CHECK(!checkAdviceValid(a, b2, totals));
    }
    SUBCASE("an unsatisfied precondition is not an advice") {
        Advice a{{GroundLiteral("R", {1}, false)}, GroundClause({GroundLiteral("G", {0}, true)})};
        CHECK(!checkAdviceValid(a, b, totals));
    }
    SUBCASE("an implication some total violates is not an advice") {
        Advice a{{GroundLiteral("R", {0}, false)}, GroundClause({GroundLiteral("B", {1}, true)})};
        CHECK(!checkAdviceValid(a, b, totals));
    }
}

TEST_CASE("property: the clause language is monotone") {
    // Adding a clause never grows the set of satisfying totals: every total
    // satisfying S u {c} satisfies S.
    Structure one(Domain({"a", "b"}), Vocabulary{});
    Vocabulary eps({{"P", SymbolKind::Relation, 1}, {"Q", SymbolKind::Relation, 1}});
    GroundAtoms atoms(eps, one.domain());
    std::mt19937_64 rng(23);

    for (int round = 0; round < 100; ++round) {
        auto randClause = [&] {
            std::vector<GroundLiteral> lits;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < len; ++i)
                lits.push_back(
                    atoms.literal(static_cast<int>(rng() % atoms.count()), rng() % 2 == 0));
            return GroundClause(std::move(lits));
        };
        std::vector<GroundClause> s;
        for (int i = 0; i < 3; ++i) s.push_back(randClause());
        GroundClause extra = randClause();

        for (uint64_t mask = 0; mask < 16; ++mask) {
            Structure t = buildTotal(one, eps, atoms, mask);
            bool satAll = true;
            for (const auto& c : s) satAll &= satisfies(t, c);
            bool satExtra = satisfies(t, extra);
            if (satAll && satExtra) {
                for (const auto& c : s) CHECK(satisfies(t, c));
            }
            // Equivalent phrasing: models(S u {c}) is a subset of models(S).
            if (!satAll) CHECK(!(satAll && satExtra));
        }
    }
}

TEST_CASE("property: conversion preserves total-structure satisfaction") {
    Structure one(Domain({"a", "b"}), Vocabulary{});
    Vocabulary eps({{"P", SymbolKind::Relation, 1}, {"Q", SymbolKind::Relation, 1}});
    GroundAtoms atoms(eps, one.domain());
    std::mt19937_64 rng(29);

    for (int round = 0; round < 200; ++round) {
        Advice a;
        int preLen = static_cast<int>(rng() % 3);
        for (int i = 0; i < preLen; ++i)
            a.pre.push_back(
                atoms.literal(static_cast<int>(rng() % atoms.count()), rng() % 2 == 0));
        std::vector<GroundLiteral> post;
        int postLen = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < postLen; ++i)
            post.push_back(
                atoms.literal(static_cast<int>(rng() % atoms.count()), rng() % 2 == 0));
        a.post = GroundClause(std::move(post));
        GroundClause converted = adviceToClause(a);

        for (uint64_t mask = 0; mask < 16; ++mask) {
            Structure t = buildTotal(one, eps, atoms, mask);
            bool preHolds = true;
            for (const auto& l : a.pre) preHolds &= satisfies(t, l);
            bool implication = !preHolds || satisfies(t, a.post);
            CHECK(satisfies(t, converted) == implication);
        }
    }
}

TEST_CASE("reason and advice trace lines") {
    Domain dom({"a", "b"});
    Reason r{GroundClause({GroundLiteral("P", {0}, false), GroundLiteral("Q", {1}, true)}),
             "M1"};
    CHECK(reasonLine(r, dom) == "reason M1 : -P(a) Q(b)");
    CHECK(adviceLine("M2", r.clause, dom) == "advice M2 : -P(a) Q(b)");
}
