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

#ifndef MODEX_TESTS_TESTUTIL_H
#define MODEX_TESTS_TESTUTIL_H

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "modex/Builtins.h"
#include "modex/Core.h"
#include "modex/Ground.h"

namespace modex {
// doctest failure-message stringification for the three-valued type.
inline doctest::String toString(Truth t) { return truthToString(t).c_str(); }
}  // namespace modex

namespace testutil {

using namespace modex;

inline Domain abcDomain(int n = 3) {
    std::vector<std::string> names;
    const char* all[] = {"a", "b", "c", "d", "e", "f"};
    for (int i = 0; i < n; ++i) names.push_back(all[i]);
    return Domain(names);
}

inline Vocabulary colourVocab() {
    return Vocabulary({{"E", SymbolKind::Relation, 2},
                       {"R", SymbolKind::Relation, 1},
                       {"B", SymbolKind::Relation, 1},
                       {"G", SymbolKind::Relation, 1}});
}

inline Vocabulary colourVocabExpansion() {
    return Vocabulary({{"R", SymbolKind::Relation, 1},
                       {"B", SymbolKind::Relation, 1},
                       {"G", SymbolKind::Relation, 1}});
}

/// Complete graph on the first n elements (both directions per edge).
inline Structure cliqueInstance(int n) {
    Domain dom = abcDomain(n);
    Structure inst(dom, Vocabulary({{"E", SymbolKind::Relation, 2}}));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v) inst.addTuple("E", {u, v});
    return inst;
}

/// Ground clauses of proper 3-colouring: each vertex gets at least one and at
/// most one colour, adjacent vertices differ.
inline std::vector<GroundClause> colouringClauses(const Domain& dom) {
    std::vector<GroundClause> out;
    const std::vector<std::string> colours = {"B", "G", "R"};
    for (int v = 0; v < dom.size(); ++v) {
        std::vector<GroundLiteral> atLeast;
        for (const auto& c : colours) atLeast.emplace_back(c, Tuple{v}, true);
        out.emplace_back(std::move(atLeast));
        for (size_t i = 0; i < colours.size(); ++i)
            for (size_t j = i + 1; j < colours.size(); ++j)
                out.emplace_back(std::vector<GroundLiteral>{
                    {colours[i], {v}, false}, {colours[j], {v}, false}});
    }
    for (int u = 0; u < dom.size(); ++u) {
        for (int v = 0; v < dom.size(); ++v) {
            if (u == v) continue;
            for (const auto& c : colours)
                out.emplace_back(std::vector<GroundLiteral>{
                    {"E", {u, v}, false}, {c, {u}, false}, {c, {v}, false}});
        }
    }
    return out;
}

inline std::shared_ptr<ClausalModule> colouringModule(int n, const std::string& name = "COL") {
    Domain dom = abcDomain(n);
    return std::make_shared<ClausalModule>(name, dom, colourVocab(), colouringClauses(dom));
}

/// An oracle accepting every partial structure over the given vocabulary.
class AcceptAllOracle : public Oracle {
  public:
    explicit AcceptAllOracle(Vocabulary vocab) : vocab_(std::move(vocab)) {}
    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure&) override { return Verdict::acceptance(); }
    std::vector<Advice> advices(const PartialStructure&, int) override { return {}; }
    bool contains(const Structure&) const override { return true; }

  private:
    Vocabulary vocab_;
};

/// Deterministic random partial structures over an expansion vocabulary.
inline PartialStructure randomPartial(const Structure& instance, const Vocabulary& expansion,
                                      const GroundAtoms& atoms, std::mt19937_64& rng) {
    uint64_t pos = 0, neg = 0;
    for (int a = 0; a < atoms.count(); ++a) {
        switch (rng() % 3) {
            case 0: pos |= 1ull << a; break;
            case 1: neg |= 1ull << a; break;
            default: break;
        }
    }
    return buildPartial(instance, expansion, atoms, pos, neg);
}

}  // namespace testutil

#endif  // MODEX_TESTS_TESTUTIL_H
