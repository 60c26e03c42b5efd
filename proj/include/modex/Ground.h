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

#ifndef MODEX_GROUND_H
#define MODEX_GROUND_H

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "modex/Core.h"

namespace modex {

/// Deterministic indexing of the ground atoms of a vocabulary over a domain:
/// symbols in name order, tuples in lexicographic order. Everything that
/// enumerates or assigns atoms goes through this, so runs are reproducible.
class GroundAtoms {
  public:
    GroundAtoms() = default;
    GroundAtoms(const Vocabulary& vocab, const Domain& domain);

    int count() const { return static_cast<int>(atoms_.size()); }
    const std::string& symbolOf(int atom) const { return atoms_[static_cast<size_t>(atom)].first; }
    const Tuple& tupleOf(int atom) const { return atoms_[static_cast<size_t>(atom)].second; }
    /// Index of a ground atom, or -1 when the symbol/tuple is not indexed.
    int indexOf(const std::string& symbol, const Tuple& t) const;

    GroundLiteral literal(int atom, bool positive) const {
        return GroundLiteral(symbolOf(atom), tupleOf(atom), positive);
    }

  private:
    std::vector<std::pair<std::string, Tuple>> atoms_;
    std::map<std::string, std::pair<int, std::map<Tuple, int>>> bySymbol_;
};

/// Total structure over instance+expansion where expansion atom i is true iff
/// bit i of `mask` is set. `atoms` must index the expansion vocabulary.
Structure buildTotal(const Structure& instance, const Vocabulary& expansion,
                     const GroundAtoms& atoms, uint64_t mask);

/// Partial structure where expansion atom i is true / false / unknown
/// according to the pos/neg masks (which must be disjoint).
PartialStructure buildPartial(const Structure& instance, const Vocabulary& expansion,
                              const GroundAtoms& atoms, uint64_t posMask, uint64_t negMask);

/// True iff total assignment `total` extends the partial assignment
/// (posMask, negMask): all pos bits set, all neg bits clear.
inline bool maskExtends(uint64_t total, uint64_t posMask, uint64_t negMask) {
    return (total & posMask) == posMask && (total & negMask) == 0;
}

}  // namespace modex

#endif  // MODEX_GROUND_H
