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

#ifndef MODEX_CORE_H
#define MODEX_CORE_H

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace modex {

//==============================================================================
// Errors

struct ModexError : std::runtime_error {
    explicit ModexError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VocabularyClash : ModexError {
    using ModexError::ModexError;
};
struct Contradiction : ModexError {
    using ModexError::ModexError;
};
struct IncomparableStructures : ModexError {
    using ModexError::ModexError;
};
struct UnknownAtom : ModexError {
    using ModexError::ModexError;
};
struct EnumerationTooLarge : ModexError {
    using ModexError::ModexError;
};
struct DeclarationError : ModexError {
    using ModexError::ModexError;
};
struct NonMonotoneObserved : DeclarationError {
    using DeclarationError::DeclarationError;
};
struct MisbehavingOracle : ModexError {
    using ModexError::ModexError;
};
struct ParseError : ModexError {
    ParseError(const std::string& msg, int line, int col)
        : ModexError(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};
struct UnboundedVariable : ModexError {
    using ModexError::ModexError;
};

//==============================================================================
// Domain
//
// A finite, ordered universe of named elements. Tuples are stored as element
// indices; all tuple iteration is lexicographic by index, which makes every
// run reproducible.

using Tuple = std::vector<int>;
using TupleSet = std::set<Tuple>;

class Domain {
  public:
    Domain() = default;
    explicit Domain(std::vector<std::string> elements);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int index) const { return names_.at(static_cast<size_t>(index)); }
    const std::vector<std::string>& names() const { return names_; }
    int indexOf(const std::string& name) const;  // throws ModexError if absent
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    /// Number of n-tuples over this domain (size^n), guarded against overflow.
    uint64_t tupleCount(int arity) const;
    /// All n-tuples in lexicographic order.
    std::vector<Tuple> allTuples(int arity) const;

    bool operator==(const Domain& other) const { return names_ == other.names_; }
    bool operator!=(const Domain& other) const { return !(*this == other); }

  private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

//==============================================================================
// Vocabulary

enum class SymbolKind { Relation, Function };

struct Symbol {
    std::string name;
    SymbolKind kind = SymbolKind::Relation;
    // For a function symbol the arity is the arity of its graph relation
    // (arguments + 1); everything downstream works on graph relations.
    int arity = 0;

    bool operator==(const Symbol& o) const {
        return name == o.name && kind == o.kind && arity == o.arity;
    }
};

/// A set of relation/function symbols with unique names. Iteration order is
/// lexicographic by name.
class Vocabulary {
  public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<Symbol> symbols);

    void add(const Symbol& s);  // throws VocabularyClash on duplicate name with different shape
    bool has(const std::string& name) const { return byName_.count(name) != 0; }
    const Symbol& symbol(const std::string& name) const;
    int arity(const std::string& name) const { return symbol(name).arity; }
    const std::vector<Symbol>& symbols() const { return ordered_; }
    size_t size() const { return ordered_.size(); }
    bool empty() const { return ordered_.empty(); }

    bool isSubsetOf(const Vocabulary& other) const;
    bool disjointWith(const Vocabulary& other) const;
    static Vocabulary unionOf(const Vocabulary& a, const Vocabulary& b);

    bool operator==(const Vocabulary& o) const { return ordered_ == o.ordered_; }

  private:
    void reindex();
    std::vector<Symbol> ordered_;  // sorted by name
    std::map<std::string, size_t> byName_;
};

//==============================================================================
// Structure: a total interpretation of a vocabulary over a domain.

class Structure {
  public:
    Structure() = default;
    Structure(Domain domain, Vocabulary vocab);

    const Domain& domain() const { return domain_; }
    const Vocabulary& vocabulary() const { return vocab_; }

    const TupleSet& tuples(const std::string& symbol) const;
    bool holds(const std::string& symbol, const Tuple& t) const;
    void setTuples(const std::string& symbol, TupleSet tuples);
    void addTuple(const std::string& symbol, const Tuple& t);

    /// Restriction to a sub-vocabulary (every requested symbol must exist),
    /// with symbols optionally renamed via `rename` (local -> source name).
    Structure restrictedTo(const Vocabulary& vocab,
                           const std::map<std::string, std::string>& rename = {}) const;

    bool operator==(const Structure& o) const;
    bool operator!=(const Structure& o) const { return !(*this == o); }
    bool operator<(const Structure& o) const { return interp_ < o.interp_; }

  private:
    void checkTuple(const std::string& symbol, const Tuple& t) const;
    Domain domain_;
    Vocabulary vocab_;
    std::map<std::string, TupleSet> interp_;
};

//==============================================================================
// Ground literals and clauses

struct GroundLiteral {
    std::string symbol;
    Tuple args;
    bool positive = true;

    GroundLiteral() = default;
    GroundLiteral(std::string symbol, Tuple args, bool positive = true)
        : symbol(std::move(symbol)), args(std::move(args)), positive(positive) {}

    GroundLiteral negated() const { return GroundLiteral(symbol, args, !positive); }

    bool operator==(const GroundLiteral& o) const {
        return symbol == o.symbol && args == o.args && positive == o.positive;
    }
    bool operator<(const GroundLiteral& o) const {
        if (symbol != o.symbol) return symbol < o.symbol;
        if (args != o.args) return args < o.args;
        return positive < o.positive;
    }
};

/// A disjunction of ground literals. Duplicates are removed on construction;
/// literals are kept sorted so equal clauses compare equal.
class GroundClause {
  public:
    GroundClause() = default;
    explicit GroundClause(std::vector<GroundLiteral> literals);

    const std::vector<GroundLiteral>& literals() const { return literals_; }
    bool empty() const { return literals_.empty(); }
    size_t size() const { return literals_.size(); }

    /// True when the clause contains some literal and its negation.
    bool tautological() const;

    bool operator==(const GroundClause& o) const { return literals_ == o.literals_; }
    bool operator<(const GroundClause& o) const { return literals_ < o.literals_; }

  private:
    std::vector<GroundLiteral> literals_;
};

//==============================================================================
// Three-valued truth

enum class Truth { True, False, Unknown };

inline std::string truthToString(Truth t) {
    switch (t) {
        case Truth::True: return "true";
        case Truth::False: return "false";
        default: return "unknown";
    }
}

//==============================================================================
// PartialStructure
//
// Interprets a vocabulary over a domain where a designated subset of the
// relation symbols (the partial vocabulary) is three-valued: each such symbol
// R carries disjoint tuple sets R+ (known true) and R- (known false); tuples
// in neither set are unknown. All other symbols have total interpretations.
//
// Values are immutable after construction: extend() returns a new value.

class PartialStructure {
  public:
    PartialStructure() = default;

    /// A structure with total part `total` and every symbol of `partialVocab`
    /// fully unknown. The two vocabularies must be disjoint.
    PartialStructure(Structure total, Vocabulary partialVocab);

    /// Bulk form: positive/negative sets per partial symbol, validated.
    PartialStructure(Structure total, Vocabulary partialVocab,
                     const std::map<std::string, std::pair<TupleSet, TupleSet>>& sets);

    const Domain& domain() const { return total_.domain(); }
    const Structure& totalPart() const { return total_; }
    const Vocabulary& vocabulary() const { return vocab_; }
    const Vocabulary& partialVocabulary() const { return partialVocab_; }
    bool isPartialSymbol(const std::string& symbol) const { return partialVocab_.has(symbol); }

    const TupleSet& positive(const std::string& symbol) const;
    const TupleSet& negative(const std::string& symbol) const;

    Truth truth(const GroundLiteral& lit) const;
    Truth truthOfAtom(const std::string& symbol, const Tuple& t) const;

    /// New structure with `lit` added to the positive or negative set of its
    /// symbol. Adding an already-known literal is a no-op; adding the opposite
    /// of a known literal throws Contradiction.
    PartialStructure extend(const GroundLiteral& lit) const;

    /// True when every partial symbol has R+ u R- covering all tuples.
    bool isTotal() const;

    /// Number of unknown ground atoms across the partial vocabulary.
    uint64_t unknownCount() const;

    /// Collapse to a total Structure over the full vocabulary.
    /// Requires isTotal().
    Structure toStructure() const;

    /// Restriction to a sub-vocabulary, with symbols optionally renamed via
    /// `rename` (local name -> name used in this structure).
    PartialStructure restrictedTo(const Vocabulary& vocab,
                                  const std::map<std::string, std::string>& rename = {}) const;

    bool operator==(const PartialStructure& o) const;

  private:
    struct ThreeValued {
        TupleSet plus;
        TupleSet minus;
        bool operator==(const ThreeValued&) const = default;
    };
    const ThreeValued& sets(const std::string& symbol) const;
    void checkLiteral(const GroundLiteral& lit) const;

    Structure total_;            // interprets vocab_ \ partialVocab_
    Vocabulary vocab_;           // full vocabulary
    Vocabulary partialVocab_;    // subset of vocab_
    std::map<std::string, ThreeValued> partial_;
};

//==============================================================================
// Core operations

/// The empty expansion of `instance` with expansion vocabulary `expansion`:
/// agrees with the instance on its own vocabulary, all expansion symbols
/// fully unknown. Vocabularies must be disjoint.
PartialStructure emptyExpansion(const Structure& instance, const Vocabulary& expansion);

/// Information order: true iff `more` has at least as much information as
/// `less` (same domain and vocabulary, total parts equal, R+/R- supersets).
/// Throws IncomparableStructures on domain/vocabulary mismatch.
bool extendsPartial(const PartialStructure& more, const PartialStructure& less);

/// Three-valued clause evaluation: True iff some literal holds, False iff all
/// literals are false, Unknown otherwise. The empty clause is False.
Truth evaluate(const PartialStructure& b, const GroundClause& clause);

/// Two-valued evaluation against a total structure.
bool satisfies(const Structure& b, const GroundClause& clause);
bool satisfies(const Structure& b, const GroundLiteral& lit);

//==============================================================================
// Printing (symbolic, used by traces and tests)

std::string toString(const GroundLiteral& lit, const Domain& domain);
std::string toString(const GroundClause& clause, const Domain& domain);

}  // namespace modex

#endif  // MODEX_CORE_H
