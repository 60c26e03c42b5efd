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

#include "modex/Core.h"

#include <algorithm>
#include <sstream>

namespace modex {

//==============================================================================
// Domain

Domain::Domain(std::vector<std::string> elements) : names_(std::move(elements)) {
    if (names_.empty()) throw ModexError("domain must be non-empty");
    for (size_t i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], static_cast<int>(i)).second)
            throw ModexError("duplicate domain element '" + names_[i] + "'");
    }
}

int Domain::indexOf(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ModexError("element '" + name + "' not in domain");
    return it->second;
}

uint64_t Domain::tupleCount(int arity) const {
    uint64_t n = 1;
    for (int i = 0; i < arity; ++i) {
        n *= static_cast<uint64_t>(size());
        if (n > (1ull << 40)) throw EnumerationTooLarge("tuple space too large");
    }
    return n;
}

std::vector<Tuple> Domain::allTuples(int arity) const {
    std::vector<Tuple> out;
    out.reserve(static_cast<size_t>(tupleCount(arity)));
    Tuple t(static_cast<size_t>(arity), 0);
    if (arity == 0) {
        out.push_back(t);
        return out;
    }
    while (true) {
        out.push_back(t);
        int pos = arity - 1;
        while (pos >= 0 && t[static_cast<size_t>(pos)] == size() - 1) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<size_t>(pos)];
    }
    return out;
}

//==============================================================================
// Vocabulary

Vocabulary::Vocabulary(std::vector<Symbol> symbols) {
    for (auto& s : symbols) add(s);
}

void Vocabulary::add(const Symbol& s) {
    if (s.arity < 0) throw ModexError("negative arity for symbol '" + s.name + "'");
    auto it = byName_.find(s.name);
    if (it != byName_.end()) {
        if (!(ordered_[it->second] == s))
            throw VocabularyClash("symbol '" + s.name + "' declared twice with different shape");
        return;
    }
    ordered_.push_back(s);
    std::sort(ordered_.begin(), ordered_.end(),
              [](const Symbol& a, const Symbol& b) { return a.name < b.name; });
    reindex();
}

void Vocabulary::reindex() {
    byName_.clear();
    for (size_t i = 0; i < ordered_.size(); ++i) byName_[ordered_[i].name] = i;
}

const Symbol& Vocabulary::symbol(const std::string& name) const {
    auto it = byName_.find(name);
    if (it == byName_.end()) throw ModexError("unknown symbol '" + name + "'");
    return ordered_[it->second];
}

bool Vocabulary::isSubsetOf(const Vocabulary& other) const {
    for (const auto& s : ordered_) {
        if (!other.has(s.name) || !(other.symbol(s.name) == s)) return false;
    }
    return true;
}

bool Vocabulary::disjointWith(const Vocabulary& other) const {
    for (const auto& s : ordered_)
        if (other.has(s.name)) return false;
    return true;
}

Vocabulary Vocabulary::unionOf(const Vocabulary& a, const Vocabulary& b) {
    Vocabulary out = a;
    for (const auto& s : b.symbols()) out.add(s);
    return out;
}

//==============================================================================
// Structure

Structure::Structure(Domain domain, Vocabulary vocab)
    : domain_(std::move(domain)), vocab_(std::move(vocab)) {
    for (const auto& s : vocab_.symbols()) interp_[s.name];  // every symbol interpreted
}

void Structure::checkTuple(const std::string& symbol, const Tuple& t) const {
    const Symbol& s = vocab_.symbol(symbol);
    if (static_cast<int>(t.size()) != s.arity)
        throw ModexError("tuple arity mismatch for '" + symbol + "'");
    for (int e : t) {
        if (e < 0 || e >= domain_.size())
            throw ModexError("tuple element out of domain for '" + symbol + "'");
    }
}

const TupleSet& Structure::tuples(const std::string& symbol) const {
    auto it = interp_.find(symbol);
    if (it == interp_.end()) throw ModexError("symbol '" + symbol + "' not interpreted");
    return it->second;
}

bool Structure::holds(const std::string& symbol, const Tuple& t) const {
    return tuples(symbol).count(t) != 0;
}

void Structure::setTuples(const std::string& symbol, TupleSet tuples) {
    for (const auto& t : tuples) checkTuple(symbol, t);
    interp_[symbol] = std::move(tuples);
}

void Structure::addTuple(const std::string& symbol, const Tuple& t) {
    checkTuple(symbol, t);
    interp_[symbol].insert(t);
}

Structure Structure::restrictedTo(const Vocabulary& vocab,
                                  const std::map<std::string, std::string>& rename) const {
    Structure out(domain_, vocab);
    for (const auto& s : vocab.symbols()) {
        auto it = rename.find(s.name);
        out.setTuples(s.name, tuples(it == rename.end() ? s.name : it->second));
    }
    return out;
}

bool Structure::operator==(const Structure& o) const {
    return domain_ == o.domain_ && vocab_ == o.vocab_ && interp_ == o.interp_;
}

//==============================================================================
// GroundClause

GroundClause::GroundClause(std::vector<GroundLiteral> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
}

bool GroundClause::tautological() const {
    for (const auto& l : literals_) {
        if (!l.positive) continue;
        GroundLiteral neg = l.negated();
        if (std::binary_search(literals_.begin(), literals_.end(), neg)) return true;
    }
    return false;
}

//==============================================================================
// PartialStructure

PartialStructure::PartialStructure(Structure total, Vocabulary partialVocab)
    : total_(std::move(total)), partialVocab_(std::move(partialVocab)) {
    if (!total_.vocabulary().disjointWith(partialVocab_))
        throw VocabularyClash("instance and expansion vocabularies overlap");
    for (const auto& s : partialVocab_.symbols()) {
        if (s.kind != SymbolKind::Relation)
            throw VocabularyClash("partial vocabulary is restricted to relation symbols ('" +
                                  s.name + "')");
        partial_[s.name];
    }
    vocab_ = Vocabulary::unionOf(total_.vocabulary(), partialVocab_);
}

PartialStructure::PartialStructure(
    Structure total, Vocabulary partialVocab,
    const std::map<std::string, std::pair<TupleSet, TupleSet>>& sets)
    : PartialStructure(std::move(total), std::move(partialVocab)) {
    for (const auto& [name, pm] : sets) {
        if (!partialVocab_.has(name))
            throw ModexError("symbol '" + name + "' is not partial");
        for (const auto& t : pm.first) checkLiteral(GroundLiteral(name, t, true));
        for (const auto& t : pm.second) checkLiteral(GroundLiteral(name, t, false));
        for (const auto& t : pm.first) {
            if (pm.second.count(t))
                throw Contradiction("tuple in both positive and negative set of '" + name + "'");
        }
        partial_[name] = ThreeValued{pm.first, pm.second};
    }
}

const PartialStructure::ThreeValued& PartialStructure::sets(const std::string& symbol) const {
    auto it = partial_.find(symbol);
    if (it == partial_.end()) throw ModexError("symbol '" + symbol + "' is not partial");
    return it->second;
}

const TupleSet& PartialStructure::positive(const std::string& symbol) const {
    return sets(symbol).plus;
}

const TupleSet& PartialStructure::negative(const std::string& symbol) const {
    return sets(symbol).minus;
}

void PartialStructure::checkLiteral(const GroundLiteral& lit) const {
    const Symbol& s = vocab_.symbol(lit.symbol);
    if (static_cast<int>(lit.args.size()) != s.arity)
        throw ModexError("literal arity mismatch for '" + lit.symbol + "'");
    for (int e : lit.args) {
        if (e < 0 || e >= domain().size())
            throw ModexError("literal element out of domain for '" + lit.symbol + "'");
    }
}

Truth PartialStructure::truthOfAtom(const std::string& symbol, const Tuple& t) const {
    if (partialVocab_.has(symbol)) {
        const ThreeValued& tv = sets(symbol);
        if (tv.plus.count(t)) return Truth::True;
        if (tv.minus.count(t)) return Truth::False;
        return Truth::Unknown;
    }
    return total_.holds(symbol, t) ? Truth::True : Truth::False;
}

Truth PartialStructure::truth(const GroundLiteral& lit) const {
    checkLiteral(lit);
    Truth t = truthOfAtom(lit.symbol, lit.args);
    if (t == Truth::Unknown || lit.positive) return t;
    return t == Truth::True ? Truth::False : Truth::True;
}

PartialStructure PartialStructure::extend(const GroundLiteral& lit) const {
    checkLiteral(lit);
    if (!partialVocab_.has(lit.symbol))
        throw ModexError("cannot extend total symbol '" + lit.symbol + "'");
    Truth cur = truthOfAtom(lit.symbol, lit.args);
    Truth want = lit.positive ? Truth::True : Truth::False;
    if (cur == want) return *this;  // idempotent
    if (cur != Truth::Unknown)
        throw Contradiction("literal " + toString(lit, domain()) + " contradicts known value");
    PartialStructure out = *this;
    ThreeValued& tv = out.partial_[lit.symbol];
    (lit.positive ? tv.plus : tv.minus).insert(lit.args);
    return out;
}

bool PartialStructure::isTotal() const {
    for (const auto& s : partialVocab_.symbols()) {
        const ThreeValued& tv = sets(s.name);
        if (tv.plus.size() + tv.minus.size() != domain().tupleCount(s.arity)) return false;
    }
    return true;
}

uint64_t PartialStructure::unknownCount() const {
    uint64_t n = 0;
    for (const auto& s : partialVocab_.symbols()) {
        const ThreeValued& tv = sets(s.name);
        n += domain().tupleCount(s.arity) - tv.plus.size() - tv.minus.size();
    }
    return n;
}

Structure PartialStructure::toStructure() const {
    if (!isTotal()) throw ModexError("structure is not total");
    Structure out(domain(), vocab_);
    for (const auto& s : total_.vocabulary().symbols()) out.setTuples(s.name, total_.tuples(s.name));
    for (const auto& s : partialVocab_.symbols()) out.setTuples(s.name, sets(s.name).plus);
    return out;
}

PartialStructure PartialStructure::restrictedTo(
    const Vocabulary& vocab, const std::map<std::string, std::string>& rename) const {
    auto sourceName = [&](const std::string& local) -> const std::string& {
        auto it = rename.find(local);
        return it == rename.end() ? local : it->second;
    };
    Vocabulary totalVocab;
    Vocabulary partVocab;
    for (const auto& s : vocab.symbols()) {
        const std::string& src = sourceName(s.name);
        if (vocab_.arity(src) != s.arity)
            throw VocabularyClash("arity mismatch restricting '" + src + "' as '" + s.name + "'");
        (partialVocab_.has(src) ? partVocab : totalVocab).add(s);
    }
    Structure total(domain(), totalVocab);
    for (const auto& s : totalVocab.symbols()) total.setTuples(s.name, total_.tuples(sourceName(s.name)));
    PartialStructure out(std::move(total), partVocab);
    for (const auto& s : partVocab.symbols()) {
        const ThreeValued& tv = sets(sourceName(s.name));
        out.partial_[s.name] = tv;
    }
    return out;
}

bool PartialStructure::operator==(const PartialStructure& o) const {
    return total_ == o.total_ && partialVocab_ == o.partialVocab_ && partial_ == o.partial_;
}

//==============================================================================
// Operations

PartialStructure emptyExpansion(const Structure& instance, const Vocabulary& expansion) {
    return PartialStructure(instance, expansion);
}

bool extendsPartial(const PartialStructure& more, const PartialStructure& less) {
    if (more.domain() != less.domain() || !(more.vocabulary() == less.vocabulary()) ||
        !(more.partialVocabulary() == less.partialVocabulary()))
        throw IncomparableStructures("structures over different domains or vocabularies");
    if (!(more.totalPart() == less.totalPart())) return false;
    for (const auto& s : less.partialVocabulary().symbols()) {
        const TupleSet& lp = less.positive(s.name);
        const TupleSet& mp = more.positive(s.name);
        if (!std::includes(mp.begin(), mp.end(), lp.begin(), lp.end())) return false;
        const TupleSet& ln = less.negative(s.name);
        const TupleSet& mn = more.negative(s.name);
        if (!std::includes(mn.begin(), mn.end(), ln.begin(), ln.end())) return false;
    }
    return true;
}

Truth evaluate(const PartialStructure& b, const GroundClause& clause) {
    bool unknown = false;
    for (const auto& lit : clause.literals()) {
        Truth t = b.truth(lit);
        if (t == Truth::True) return Truth::True;
        if (t == Truth::Unknown) unknown = true;
    }
    return unknown ? Truth::Unknown : Truth::False;
}

bool satisfies(const Structure& b, const GroundLiteral& lit) {
    return b.holds(lit.symbol, lit.args) == lit.positive;
}

bool satisfies(const Structure& b, const GroundClause& clause) {
    for (const auto& lit : clause.literals())
        if (satisfies(b, lit)) return true;
    return false;
}

//==============================================================================
// Printing

std::string toString(const GroundLiteral& lit, const Domain& domain) {
    std::ostringstream os;
    if (!lit.positive) os << '-';
    os << lit.symbol;
    if (!lit.args.empty()) {
        os << '(';
        for (size_t i = 0; i < lit.args.size(); ++i) {
            if (i) os << ',';
            os << domain.name(lit.args[i]);
        }
        os << ')';
    }
    return os.str();
}

std::string toString(const GroundClause& clause, const Domain& domain) {
    std::ostringstream os;
    for (size_t i = 0; i < clause.literals().size(); ++i) {
        if (i) os << ' ';
        os << toString(clause.literals()[i], domain);
    }
    return os.str();
}

}  // namespace modex
