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

#include "modex/Propagation.h"

#include <algorithm>

namespace modex {

namespace {

bool subsetOf(const TupleSet& a, const TupleSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TupleSet unionOf(const TupleSet& a, const TupleSet& b) {
    TupleSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

TupleSet intersectOf(const TupleSet& a, const TupleSet& b) {
    TupleSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
}

// Known-positive and known-negative parts of a symbol, regardless of whether
// the restriction carries it as partial or total.
TupleSet plusOf(const PartialStructure& b, const std::string& sym) {
    if (b.isPartialSymbol(sym)) return b.positive(sym);
    return b.totalPart().tuples(sym);
}

TupleSet minusOf(const PartialStructure& b, const std::string& sym, int arity) {
    TupleSet out;
    for (const auto& t : b.domain().allTuples(arity))
        if (b.truthOfAtom(sym, t) == Truth::False) out.insert(t);
    return out;
}

// The operator's input structure: base symbols from the current partial
// structure (must be fully known), the feedback symbol set to `s`.
struct OperatorInput {
    Vocabulary vocab;
    Structure base;

    OperatorInput(const Oracle& module, const OperatorSpec& fb, const PartialStructure& bLocal) {
        for (const auto& sym : module.vocabulary().symbols())
            if (sym.name != fb.output) vocab.add(sym);
        base = Structure(bLocal.domain(), vocab);
        for (const auto& sym : vocab.symbols()) {
            if (sym.name == fb.input) continue;
            TupleSet known;
            for (const auto& t : bLocal.domain().allTuples(sym.arity)) {
                Truth tv = bLocal.truthOfAtom(sym.name, t);
                if (tv == Truth::Unknown)
                    throw ModexError("feedback chain needs the base part of '" + sym.name +
                                     "' fully known");
                if (tv == Truth::True) known.insert(t);
            }
            base.setTuples(sym.name, std::move(known));
        }
    }

    TupleSet eval(Oracle& module, const OperatorSpec& fb, const TupleSet& s) {
        base.setTuples(fb.input, s);
        return module.operatorEval(base);
    }
};

// Watches evaluated (input, output) pairs for violations of the declared
// (anti-)monotonicity.
class MonotonicityWatch {
  public:
    MonotonicityWatch(bool anti, std::string module) : anti_(anti), module_(std::move(module)) {}

    void observe(const TupleSet& in, const TupleSet& out) {
        for (const auto& [pin, pout] : pairs_) {
            check(pin, pout, in, out);
            check(in, out, pin, pout);
        }
        pairs_.emplace_back(in, out);
    }

  private:
    void check(const TupleSet& in1, const TupleSet& out1, const TupleSet& in2,
               const TupleSet& out2) const {
        if (!subsetOf(in1, in2)) return;
        bool ok = anti_ ? subsetOf(out2, out1) : subsetOf(out1, out2);
        if (!ok)
            throw NonMonotoneObserved("module '" + module_ + "' violates its declared " +
                                      (anti_ ? "anti-monotonicity" : "monotonicity"));
    }

    bool anti_;
    std::string module_;
    std::vector<std::pair<TupleSet, TupleSet>> pairs_;
};

}  // namespace

FeedbackChain positiveFixpoint(Oracle& module, const OperatorSpec& fb,
                               const PartialStructure& bLocal) {
    FeedbackChain chain;
    chain.kind = FeedbackChain::Kind::Positive;
    chain.symbol = fb.input;
    chain.arity = module.vocabulary().arity(fb.input);

    OperatorInput input(module, fb, bLocal);
    MonotonicityWatch watch(false, fb.input);

    TupleSet lower = plusOf(bLocal, fb.input);
    chain.lowerSizes.push_back(lower.size());
    const uint64_t cap = bLocal.domain().tupleCount(chain.arity) + 2;
    for (uint64_t i = 0; i < cap; ++i) {
        TupleSet image = input.eval(module, fb, lower);
        watch.observe(lower, image);
        TupleSet next = unionOf(lower, image);
        if (next == lower) break;
        lower = std::move(next);
        chain.lowerSizes.push_back(lower.size());
    }
    chain.lowerLimit = std::move(lower);
    return chain;
}

FeedbackChain negativeFixpoint(Oracle& module, const OperatorSpec& fb,
                               const PartialStructure& bLocal) {
    FeedbackChain chain;
    chain.kind = FeedbackChain::Kind::Negative;
    chain.symbol = fb.input;
    chain.arity = module.vocabulary().arity(fb.input);

    OperatorInput input(module, fb, bLocal);
    MonotonicityWatch watch(true, fb.input);

    TupleSet lower = plusOf(bLocal, fb.input);
    TupleSet upper;
    {
        TupleSet minus = minusOf(bLocal, fb.input, chain.arity);
        for (const auto& t : bLocal.domain().allTuples(chain.arity))
            if (!minus.count(t)) upper.insert(t);
    }
    chain.lowerSizes.push_back(lower.size());
    chain.upperSizes.push_back(upper.size());

    const uint64_t cap = 2 * bLocal.domain().tupleCount(chain.arity) + 4;
    for (uint64_t i = 0; i < cap; ++i) {
        if (!subsetOf(lower, upper)) {
            chain.crossed = true;
            break;
        }
        TupleSet atUpper = input.eval(module, fb, upper);
        watch.observe(upper, atUpper);
        TupleSet atLower = input.eval(module, fb, lower);
        watch.observe(lower, atLower);
        TupleSet nextLower = unionOf(lower, atUpper);
        TupleSet nextUpper = intersectOf(upper, atLower);
        if (nextLower == lower && nextUpper == upper) break;
        if (nextLower != lower) chain.lowerSizes.push_back(nextLower.size());
        if (nextUpper != upper) chain.upperSizes.push_back(nextUpper.size());
        lower = std::move(nextLower);
        upper = std::move(nextUpper);
    }
    if (!subsetOf(lower, upper)) chain.crossed = true;
    chain.lowerLimit = std::move(lower);
    chain.upperLimit = std::move(upper);
    return chain;
}

//==============================================================================
// Clauses

ChainClauses chainClauses(const FeedbackChain& chain, const ModuleBinding& binding,
                          const PartialStructure& canonicalB, const Vocabulary& sigma) {
    ChainClauses out;
    const std::string& canonSym = binding.toCanonical.at(chain.symbol);
    const Domain& dom = canonicalB.domain();

    // Guard context: current literals of the module's non-instance base
    // symbols plus the seed literals of the feedback symbol itself. Instance
    // symbols are pinned for the whole run and need no guard.
    std::vector<GroundLiteral> guard;
    for (const auto& sym : binding.vocabulary.symbols()) {
        const std::string& canon = binding.toCanonical.at(sym.name);
        if (sigma.has(canon)) continue;
        if (sym.name == chain.symbol || binding.toCanonical.at(sym.name) == canonSym) continue;
        // Base symbols were required fully known; negate each current literal.
        for (const auto& t : dom.allTuples(sym.arity)) {
            Truth tv = canonicalB.truthOfAtom(canon, t);
            if (tv == Truth::Unknown) continue;  // output symbol of the operator
            guard.emplace_back(canon, t, tv != Truth::True);
        }
    }
    if (!sigma.has(canonSym)) {
        for (const auto& t : dom.allTuples(chain.arity)) {
            Truth tv = canonicalB.truthOfAtom(canonSym, t);
            if (tv == Truth::Unknown) continue;
            if (chain.kind == FeedbackChain::Kind::Positive && tv != Truth::True)
                continue;  // positive chains seed from the positive part only
            guard.emplace_back(canonSym, t, tv != Truth::True);
        }
    }

    if (chain.crossed) {
        out.inconsistent = true;
        out.inconsistencyReason = GroundClause(guard);
        return out;
    }

    auto guarded = [&](GroundLiteral unit) {
        std::vector<GroundLiteral> lits = guard;
        lits.push_back(std::move(unit));
        return GroundClause(std::move(lits));
    };

    for (const auto& t : chain.lowerLimit) {
        if (canonicalB.truthOfAtom(canonSym, t) == Truth::True) continue;
        out.units.push_back(guarded(GroundLiteral(canonSym, t, true)));
    }
    if (chain.kind == FeedbackChain::Kind::Negative) {
        for (const auto& t : dom.allTuples(chain.arity)) {
            if (chain.upperLimit.count(t)) continue;
            if (canonicalB.truthOfAtom(canonSym, t) == Truth::False) continue;
            out.units.push_back(guarded(GroundLiteral(canonSym, t, false)));
        }
    }
    return out;
}

//==============================================================================
// Applicability

bool feedbackApplicable(const Oracle& module, const ModuleBinding& binding,
                        const PartialStructure& canonicalB, bool& anti) {
    const OperatorSpec* spec = module.operatorSpec();
    if (!spec) return false;
    // The output must be wired back into the input by some feedback alias.
    if (binding.toCanonical.at(spec->input) != binding.toCanonical.at(spec->output))
        return false;

    ModuleProperties props = module.properties();
    bool declared = false;
    for (const auto& m : props.monotonicity) {
        if (m.over == std::vector<std::string>{spec->input} &&
            m.target == std::vector<std::string>{spec->output}) {
            declared = true;
            anti = m.antiMonotone;
            break;
        }
    }
    if (!declared) return false;

    // Totality over the input side must be declared.
    bool totalityOk = false;
    for (const auto& t : props.totality) {
        bool coversInput = std::find(t.symbols.begin(), t.symbols.end(), spec->input) !=
                           t.symbols.end();
        if (coversInput) totalityOk = true;
    }
    if (!totalityOk) return false;

    // The base part (everything except input and output) must be fully known.
    for (const auto& sym : binding.vocabulary.symbols()) {
        if (sym.name == spec->input || sym.name == spec->output) continue;
        const std::string& canon = binding.toCanonical.at(sym.name);
        for (const auto& t : canonicalB.domain().allTuples(sym.arity)) {
            if (canonicalB.truthOfAtom(canon, t) == Truth::Unknown) return false;
        }
    }
    return true;
}

}  // namespace modex
