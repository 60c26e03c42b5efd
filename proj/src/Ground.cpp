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

#include "modex/Ground.h"

namespace modex {

GroundAtoms::GroundAtoms(const Vocabulary& vocab, const Domain& domain) {
    for (const auto& s : vocab.symbols()) {
        auto& entry = bySymbol_[s.name];
        entry.first = static_cast<int>(atoms_.size());
        for (auto& t : domain.allTuples(s.arity)) {
            entry.second[t] = static_cast<int>(atoms_.size());
            atoms_.emplace_back(s.name, std::move(t));
        }
    }
}

int GroundAtoms::indexOf(const std::string& symbol, const Tuple& t) const {
    auto it = bySymbol_.find(symbol);
    if (it == bySymbol_.end()) return -1;
    auto jt = it->second.second.find(t);
    return jt == it->second.second.end() ? -1 : jt->second;
}

Structure buildTotal(const Structure& instance, const Vocabulary& expansion,
                     const GroundAtoms& atoms, uint64_t mask) {
    Structure out(instance.domain(),
                  Vocabulary::unionOf(instance.vocabulary(), expansion));
    for (const auto& s : instance.vocabulary().symbols())
        out.setTuples(s.name, instance.tuples(s.name));
    for (int i = 0; i < atoms.count(); ++i) {
        if (mask & (1ull << i)) out.addTuple(atoms.symbolOf(i), atoms.tupleOf(i));
    }
    return out;
}

PartialStructure buildPartial(const Structure& instance, const Vocabulary& expansion,
                              const GroundAtoms& atoms, uint64_t posMask, uint64_t negMask) {
    std::map<std::string, std::pair<TupleSet, TupleSet>> sets;
    for (const auto& s : expansion.symbols()) sets[s.name];
    for (int i = 0; i < atoms.count(); ++i) {
        uint64_t bit = 1ull << i;
        if (posMask & bit) sets[atoms.symbolOf(i)].first.insert(atoms.tupleOf(i));
        else if (negMask & bit) sets[atoms.symbolOf(i)].second.insert(atoms.tupleOf(i));
    }
    return PartialStructure(instance, expansion, sets);
}

}  // namespace modex
