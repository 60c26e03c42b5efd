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

#include "modex/Engine.h"

#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include "modex/Propagation.h"
#include "modex/Reasons.h"

namespace modex {

namespace {

GroundClause translateClause(const GroundClause& clause, const ModuleBinding& binding) {
    std::vector<GroundLiteral> lits;
    lits.reserve(clause.size());
    for (const auto& l : clause.literals()) {
        auto it = binding.toCanonical.find(l.symbol);
        lits.emplace_back(it == binding.toCanonical.end() ? l.symbol : it->second, l.args,
                          l.positive);
    }
    return GroundClause(std::move(lits));
}

std::string stateLine(const PartialStructure& b, const AtomSpace& space) {
    std::ostringstream os;
    bool first = true;
    for (int a = 0; a < space.atoms.count(); ++a) {
        if (!space.isExpansionAtom[static_cast<size_t>(a)]) continue;
        Truth t = b.truthOfAtom(space.atoms.symbolOf(a), space.atoms.tupleOf(a));
        if (t == Truth::Unknown) continue;
        if (!first) os << ' ';
        first = false;
        os << (t == Truth::True ? '+' : '-')
           << toString(space.atoms.literal(a, true), b.domain());
    }
    return os.str();
}

std::string modelLine(const Structure& model) {
    std::ostringstream os;
    bool first = true;
    for (const auto& sym : model.vocabulary().symbols()) {
        for (const auto& t : model.tuples(sym.name)) {
            if (!first) os << " ; ";
            first = false;
            os << sym.name;
            for (int e : t) os << ' ' << model.domain().name(e);
        }
    }
    return os.str();
}

}  // namespace

PartialStructure restrictToModule(const PartialStructure& b, const ModuleBinding& binding,
                                  const Vocabulary& /*sigma*/) {
    return b.restrictedTo(binding.vocabulary, binding.toCanonical);
}

SolveOutcome solve(const Task& task, const ModuleRegistry& registry, const EngineConfig& cfg,
                   EngineTrace* trace) {
    EngineTrace localTrace;
    if (!trace) trace = &localTrace;

    for (const auto& binding : task.flat.modules) {
        if (!(registry.oracle(binding.id).vocabulary() == binding.vocabulary))
            throw ModexError("oracle vocabulary for '" + binding.id +
                             "' differs from the flattened binding");
    }

    auto space = std::make_shared<AtomSpace>(AtomSpace::build(task.instance, task.epsilon));
    GroundSolver solver(space, cfg.solver);
    std::set<GroundClause> seen;
    SolveOutcome outcome;
    const Domain& dom = task.instance.domain();

    auto finish = [&](SolveOutcome::Kind kind) -> SolveOutcome& {
        outcome.kind = kind;
        if (!cfg.dumpCnfPath.empty()) {
            std::ofstream os(cfg.dumpCnfPath);
            solver.dumpCnf(os);
        }
        return outcome;
    };

    auto addClauseOnce = [&](const GroundClause& c) {
        if (c.tautological() || seen.count(c)) return false;
        solver.addClause(c);
        seen.insert(c);
        return true;
    };

    auto start = std::chrono::steady_clock::now();
    while (true) {
        ++outcome.stats.iterations;
        if (outcome.stats.iterations > cfg.maxIterations) {
            outcome.resourceKind = "iterations";
            trace->emit(kTraceResourceOut, outcome.resourceKind);
            return finish(SolveOutcome::Kind::ResourceOut);
        }
        if (cfg.wallClockMs > 0) {
            auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            if (elapsed > cfg.wallClockMs) {
                outcome.resourceKind = "time";
                trace->emit(kTraceResourceOut, outcome.resourceKind);
                return finish(SolveOutcome::Kind::ResourceOut);
            }
        }

        SolverState st = solver.state();
        if (!st.sat) {
            trace->emit(kTraceUnsat, "");
            return finish(SolveOutcome::Kind::Unsatisfiable);
        }
        const PartialStructure& b = st.partial;
        trace->emit(kTraceState, stateLine(b, *space));

        // Advices from every oracle wrt the reported state.
        int advicesAdded = 0;
        for (const auto& binding : task.flat.modules) {
            Oracle& oracle = registry.oracle(binding.id);
            PartialStructure local = restrictToModule(b, binding, task.sigma);
            for (const auto& advice : oracle.advices(local, cfg.adviceBudget)) {
                GroundClause clause = translateClause(adviceToClause(advice), binding);
                if (addClauseOnce(clause)) {
                    ++advicesAdded;
                    trace->emit(kTraceAdvice, binding.id + " : " + toString(clause, dom));
                }
            }
        }
        if (advicesAdded) {
            trace->emit(kTraceAdvices, std::to_string(advicesAdded));
            outcome.stats.advicesAdded += static_cast<uint64_t>(advicesAdded);
        }

        // Scan modules in registration order; first rejection wins unless
        // collect-all mode gathers one reason per rejecting module.
        bool rejected = false;
        for (const auto& binding : task.flat.modules) {
            Oracle& oracle = registry.oracle(binding.id);
            PartialStructure local = restrictToModule(b, binding, task.sigma);
            Verdict v = oracle.accept(local);
            if (v.accepted) continue;
            GroundClause reason = translateClause(v.reason.clause, binding);
            if (evaluate(b, reason) != Truth::False)
                throw MisbehavingOracle("module '" + binding.id +
                                        "' rejected with a reason not falsified by the state: " +
                                        toString(reason, dom));
            addClauseOnce(reason);
            trace->emit(kTraceReason, binding.id + " : " + toString(reason, dom));
            ++outcome.stats.reasonsAdded;
            rejected = true;
            if (!cfg.collectAllReasons) break;
        }
        if (rejected) continue;

        if (b.isTotal()) {
            Structure witness = b.toStructure();
            if (!acceptsTotal(task.flat, registry, witness))
                throw ModexError("internal: accepted total fails the compound check");
            Structure model = witness.restrictedTo(task.flat.outputVocab);
            for (const auto& sym : task.sigma.symbols()) {
                if (!task.flat.outputVocab.has(sym.name)) continue;
                if (!(model.tuples(sym.name) == task.instance.tuples(sym.name)))
                    throw ModexError("internal: model disagrees with the instance on '" +
                                     sym.name + "'");
            }
            trace->emit(kTraceModel, modelLine(model));
            outcome.model = std::move(model);
            outcome.witness = std::move(witness);
            return finish(SolveOutcome::Kind::Model);
        }

        if (cfg.propagate) {
            int units = 0;
            for (const auto& binding : task.flat.modules) {
                Oracle& oracle = registry.oracle(binding.id);
                bool anti = false;
                if (!feedbackApplicable(oracle, binding, b, anti)) continue;
                PartialStructure local = restrictToModule(b, binding, task.sigma);
                FeedbackChain chain = anti ? negativeFixpoint(oracle, *oracle.operatorSpec(), local)
                                           : positiveFixpoint(oracle, *oracle.operatorSpec(), local);
                chain.moduleId = binding.id;
                for (size_t i = 0; i < chain.lowerSizes.size(); ++i) {
                    std::ostringstream os;
                    os << binding.id << (anti ? " neg" : " pos") << " i=" << i
                       << " |L|=" << chain.lowerSizes[i];
                    if (i < chain.upperSizes.size()) os << " |U|=" << chain.upperSizes[i];
                    trace->emit(kTraceChain, os.str());
                }
                ChainClauses cc = chainClauses(chain, binding, b, task.sigma);
                if (cc.inconsistent) {
                    if (addClauseOnce(cc.inconsistencyReason)) {
                        trace->emit(kTraceReason, binding.id + " : " +
                                                      toString(cc.inconsistencyReason, dom));
                        ++outcome.stats.reasonsAdded;
                    }
                } else {
                    for (const auto& unit : cc.units) {
                        if (!addClauseOnce(unit)) continue;
                        ++units;
                        trace->emit(kTracePropagated,
                                    binding.id + " : " + toString(unit, dom));
                    }
                }
            }
            if (units) {
                trace->emit(kTracePropagate, std::to_string(units));
                outcome.stats.unitsPropagated += static_cast<uint64_t>(units);
            }
        }
    }
}

}  // namespace modex
