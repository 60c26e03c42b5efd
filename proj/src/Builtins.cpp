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

#include "modex/Builtins.h"

#include <algorithm>
#include <sstream>

#include "modex/TextIO.h"

namespace modex {

//==============================================================================
// ClausalModule

ClausalModule::ClausalModule(std::string name, Domain domain, Vocabulary vocab,
                             std::vector<GroundClause> clauses)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      vocab_(std::move(vocab)),
      clauses_(std::move(clauses)) {
    for (const auto& c : clauses_) {
        for (const auto& l : c.literals()) {
            if (!vocab_.has(l.symbol))
                throw ModexError("clause uses undeclared symbol '" + l.symbol + "'");
            if (vocab_.arity(l.symbol) != static_cast<int>(l.args.size()))
                throw ModexError("clause literal arity mismatch for '" + l.symbol + "'");
        }
    }
}

std::shared_ptr<ClausalModule> ClausalModule::load(const std::string& name,
                                                   const Domain& domain,
                                                   const std::string& path) {
    std::istringstream in(readFile(path));
    std::string line;
    Vocabulary vocab;
    std::vector<GroundClause> clauses;
    while (std::getline(in, line)) {
        auto f = splitFields(line);
        if (f.empty()) continue;
        if (f[0] == "rel") {
            if (f.size() != 3) throw ModexError(path + ": rel line needs a name and an arity");
            vocab.add(Symbol{f[1], SymbolKind::Relation, std::stoi(f[2])});
        } else if (f[0] == "clause") {
            std::vector<GroundLiteral> lits;
            for (size_t i = 1; i < f.size(); ++i) lits.push_back(parseGroundLiteral(f[i], domain));
            clauses.emplace_back(std::move(lits));
        } else {
            throw ModexError(path + ": unknown directive '" + f[0] + "'");
        }
    }
    return std::make_shared<ClausalModule>(name, domain, std::move(vocab), std::move(clauses));
}

Verdict ClausalModule::accept(const PartialStructure& b) {
    for (const auto& c : clauses_) {
        if (evaluate(b, c) == Truth::False)
            return Verdict::rejection(Reason{c, name_});
    }
    return Verdict::acceptance();
}

std::vector<Advice> ClausalModule::advices(const PartialStructure& b, int budget) {
    // Unit rule: a clause with all literals false except one unknown yields
    // the implication (negations of the false literals) => unknown literal.
    std::vector<Advice> out;
    for (const auto& c : clauses_) {
        if (static_cast<int>(out.size()) >= budget) break;
        const GroundLiteral* unit = nullptr;
        bool dead = false;
        std::vector<GroundLiteral> pre;
        for (const auto& l : c.literals()) {
            Truth t = b.truth(l);
            if (t == Truth::True) {
                dead = true;
                break;
            }
            if (t == Truth::Unknown) {
                if (unit) {
                    dead = true;
                    break;
                }
                unit = &l;
            } else {
                pre.push_back(l.negated());
            }
        }
        if (dead || !unit) continue;
        out.push_back(Advice{std::move(pre), GroundClause({*unit})});
    }
    return out;
}

bool ClausalModule::contains(const Structure& total) const {
    for (const auto& c : clauses_)
        if (!satisfies(total, c)) return false;
    return true;
}

//==============================================================================
// AllDifferentModule

AllDifferentModule::AllDifferentModule(std::string name, Domain domain, std::string relation,
                                       std::vector<int> scope, std::vector<int> values)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      rel_(std::move(relation)),
      scope_(std::move(scope)),
      values_(std::move(values)) {
    if (values_.empty())
        for (int e = 0; e < domain_.size(); ++e) values_.push_back(e);
    vocab_.add(Symbol{rel_, SymbolKind::Relation, 2});
}

std::shared_ptr<AllDifferentModule> AllDifferentModule::load(const std::string& name,
                                                             const Domain& domain,
                                                             const std::string& path) {
    std::istringstream in(readFile(path));
    std::string line;
    std::string rel;
    std::vector<int> scope, values;
    while (std::getline(in, line)) {
        auto f = splitFields(line);
        if (f.empty()) continue;
        if (f[0] == "rel") {
            if (f.size() != 3 || std::stoi(f[2]) != 2)
                throw ModexError(path + ": rel line must declare a binary relation");
            rel = f[1];
        } else if (f[0] == "scope") {
            for (size_t i = 1; i < f.size(); ++i) scope.push_back(domain.indexOf(f[i]));
        } else if (f[0] == "values") {
            for (size_t i = 1; i < f.size(); ++i) values.push_back(domain.indexOf(f[i]));
        } else {
            throw ModexError(path + ": unknown directive '" + f[0] + "'");
        }
    }
    if (rel.empty()) throw ModexError(path + ": missing rel declaration");
    if (scope.empty()) throw ModexError(path + ": missing scope");
    return std::make_shared<AllDifferentModule>(name, domain, rel, std::move(scope),
                                                std::move(values));
}

bool AllDifferentModule::inScope(int e) const {
    return std::find(scope_.begin(), scope_.end(), e) != scope_.end();
}
bool AllDifferentModule::inValues(int e) const {
    return std::find(values_.begin(), values_.end(), e) != values_.end();
}

Verdict AllDifferentModule::accept(const PartialStructure& b) {
    auto lit = [&](int x, int y, bool pos) { return GroundLiteral(rel_, {x, y}, pos); };
    // Rows outside scope x values.
    for (int x = 0; x < domain_.size(); ++x) {
        for (int y = 0; y < domain_.size(); ++y) {
            if (inScope(x) && inValues(y)) continue;
            if (b.truth(lit(x, y, true)) == Truth::True)
                return Verdict::rejection(Reason{GroundClause({lit(x, y, false)}), name_});
        }
    }
    // Functionality and injectivity: pairwise conflict clauses.
    for (int x : scope_) {
        for (size_t i = 0; i < values_.size(); ++i) {
            for (size_t j = i + 1; j < values_.size(); ++j) {
                if (b.truth(lit(x, values_[i], true)) == Truth::True &&
                    b.truth(lit(x, values_[j], true)) == Truth::True)
                    return Verdict::rejection(Reason{
                        GroundClause({lit(x, values_[i], false), lit(x, values_[j], false)}),
                        name_});
            }
        }
    }
    for (int y : values_) {
        for (size_t i = 0; i < scope_.size(); ++i) {
            for (size_t j = i + 1; j < scope_.size(); ++j) {
                if (b.truth(lit(scope_[i], y, true)) == Truth::True &&
                    b.truth(lit(scope_[j], y, true)) == Truth::True)
                    return Verdict::rejection(Reason{
                        GroundClause({lit(scope_[i], y, false), lit(scope_[j], y, false)}),
                        name_});
            }
        }
    }
    // A scope element with every candidate excluded.
    for (int x : scope_) {
        bool open = false;
        std::vector<GroundLiteral> support;
        for (int y : values_) {
            if (b.truth(lit(x, y, true)) != Truth::False) open = true;
            support.push_back(lit(x, y, true));
        }
        if (!open) return Verdict::rejection(Reason{GroundClause(std::move(support)), name_});
    }
    return Verdict::acceptance();
}

std::vector<Advice> AllDifferentModule::advices(const PartialStructure& b, int budget) {
    std::vector<Advice> out;
    auto lit = [&](int x, int y, bool pos) { return GroundLiteral(rel_, {x, y}, pos); };
    auto room = [&] { return static_cast<int>(out.size()) < budget; };

    // Rows outside scope x values are false in every member.
    for (int x = 0; x < domain_.size() && room(); ++x) {
        for (int y = 0; y < domain_.size() && room(); ++y) {
            if (inScope(x) && inValues(y)) continue;
            if (b.truth(lit(x, y, true)) == Truth::Unknown)
                out.push_back(Advice{{}, GroundClause({lit(x, y, false)})});
        }
    }
    // A single remaining candidate is forced.
    for (int x : scope_) {
        if (!room()) break;
        int candidate = -1;
        int openCount = 0;
        std::vector<GroundLiteral> pre;
        for (int y : values_) {
            Truth t = b.truth(lit(x, y, true));
            if (t == Truth::False) pre.push_back(lit(x, y, false));
            else {
                ++openCount;
                candidate = y;
            }
        }
        if (openCount == 1 && b.truth(lit(x, candidate, true)) == Truth::Unknown)
            out.push_back(Advice{std::move(pre), GroundClause({lit(x, candidate, true)})});
    }
    // An assigned value excludes its row and column.
    for (int x : scope_) {
        for (int y : values_) {
            if (!room()) break;
            if (b.truth(lit(x, y, true)) != Truth::True) continue;
            for (int y2 : values_) {
                if (y2 != y && room() && b.truth(lit(x, y2, true)) == Truth::Unknown)
                    out.push_back(Advice{{lit(x, y, true)}, GroundClause({lit(x, y2, false)})});
            }
            for (int x2 : scope_) {
                if (x2 != x && room() && b.truth(lit(x2, y, true)) == Truth::Unknown)
                    out.push_back(Advice{{lit(x, y, true)}, GroundClause({lit(x2, y, false)})});
            }
        }
    }
    return out;
}

bool AllDifferentModule::contains(const Structure& total) const {
    const TupleSet& rows = total.tuples(rel_);
    for (const auto& t : rows)
        if (!inScope(t[0]) || !inValues(t[1])) return false;
    std::set<int> used;
    for (int x : scope_) {
        int count = 0;
        int value = -1;
        for (const auto& t : rows) {
            if (t[0] == x) {
                ++count;
                value = t[1];
            }
        }
        if (count != 1) return false;
        if (!used.insert(value).second) return false;
    }
    return true;
}

//==============================================================================
// BoundedIlaModule

BoundedIlaModule::BoundedIlaModule(std::string name, Domain domain,
                                   std::vector<std::string> varNames, VarBox ranges,
                                   std::vector<MappedAtom> atoms)
    : BoundedIlaModule(std::move(name), std::move(domain), std::move(varNames),
                       std::move(ranges), std::move(atoms), Options{}) {}

BoundedIlaModule::BoundedIlaModule(std::string name, Domain domain,
                                   std::vector<std::string> varNames, VarBox ranges,
                                   std::vector<MappedAtom> atoms, Options opts)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      varNames_(std::move(varNames)),
      ranges_(std::move(ranges)),
      atoms_(std::move(atoms)),
      opts_(std::move(opts)) {
    if (varNames_.size() != ranges_.size())
        throw UnboundedVariable("every integer variable needs a declared range");
    if (ranges_.emptyRange()) throw UnboundedVariable("empty variable range");
    for (const auto& a : atoms_)
        vocab_.add(Symbol{a.symbol, SymbolKind::Relation, static_cast<int>(a.args.size())});
    for (const auto& t : opts_.tokens) vocab_.add(Symbol{t, SymbolKind::Relation, 0});
    if (!opts_.propagationsRel.empty() && opts_.conflictsRel.empty())
        throw ModexError("propagations relation requires a conflicts relation");
    if (!opts_.conflictsRel.empty()) {
        // Solver-interface mode: mapped atoms must be one unary symbol so the
        // conflict/propagation relations can name them by element.
        for (size_t i = 0; i < atoms_.size(); ++i) {
            if (atoms_[i].args.size() != 1 || atoms_[i].symbol != atoms_[0].symbol)
                throw ModexError(
                    "conflicts/propagations need all mapped atoms on one unary symbol");
            if (!elementToAtom_.emplace(atoms_[i].args[0], static_cast<int>(i)).second)
                throw ModexError("duplicate mapped atom element");
        }
        vocab_.add(Symbol{opts_.conflictsRel, SymbolKind::Relation, 1});
        if (!opts_.propagationsRel.empty())
            vocab_.add(Symbol{opts_.propagationsRel, SymbolKind::Relation, 2});
    }
}

std::shared_ptr<BoundedIlaModule> BoundedIlaModule::load(const std::string& name,
                                                         const Domain& domain,
                                                         const std::string& path) {
    std::istringstream in(readFile(path));
    std::string line;
    std::vector<std::string> varNames;
    std::map<std::string, int> varIndex;
    VarBox ranges;
    std::vector<MappedAtom> atoms;
    Options opts;
    while (std::getline(in, line)) {
        auto f = splitFields(line);
        if (f.empty()) continue;
        if (f[0] == "var") {
            if (f.size() != 4) throw ModexError(path + ": var line is 'var name lo hi'");
            varIndex[f[1]] = static_cast<int>(varNames.size());
            varNames.push_back(f[1]);
            ranges.lo.push_back(std::stoll(f[2]));
            ranges.hi.push_back(std::stoll(f[3]));
        } else if (f[0] == "atom") {
            size_t colon = line.find(':');
            if (colon == std::string::npos)
                throw ModexError(path + ": atom line is 'atom a : constraint'");
            auto head = splitFields(line.substr(0, colon));
            if (head.size() != 2) throw ModexError(path + ": atom line needs one atom name");
            GroundLiteral atomRef = parseGroundLiteral(head[1], domain);
            if (!atomRef.positive) throw ModexError(path + ": atom names must be positive");
            MappedAtom ma;
            ma.symbol = atomRef.symbol;
            ma.args = atomRef.args;
            ma.constraint = parseLinearConstraint(line.substr(colon + 1), varIndex);
            atoms.push_back(std::move(ma));
        } else if (f[0] == "conflicts") {
            if (f.size() != 2) throw ModexError(path + ": conflicts line names one relation");
            opts.conflictsRel = f[1];
        } else if (f[0] == "propagations") {
            if (f.size() != 2) throw ModexError(path + ": propagations line names one relation");
            opts.propagationsRel = f[1];
        } else if (f[0] == "token") {
            if (f.size() != 2) throw ModexError(path + ": token line names one symbol");
            opts.tokens.push_back(f[1]);
        } else if (f[0] == "minimize") {
            opts.minimizeConflicts = !(f.size() == 2 && f[1] == "off");
        } else {
            throw ModexError(path + ": unknown directive '" + f[0] + "'");
        }
    }
    return std::make_shared<BoundedIlaModule>(name, domain, std::move(varNames),
                                              std::move(ranges), std::move(atoms),
                                              std::move(opts));
}

GroundLiteral BoundedIlaModule::atomLiteral(const Asserted& a) const {
    const MappedAtom& ma = atoms_[static_cast<size_t>(a.atomIndex)];
    return GroundLiteral(ma.symbol, ma.args, a.positive);
}

std::vector<BoundedIlaModule::Asserted> BoundedIlaModule::assertedAtoms(
    const PartialStructure& b) const {
    std::vector<Asserted> out;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        Truth t = b.truthOfAtom(atoms_[i].symbol, atoms_[i].args);
        if (t != Truth::Unknown) out.push_back({static_cast<int>(i), t == Truth::True});
    }
    return out;
}

std::vector<IneqCases> BoundedIlaModule::casesFor(const std::vector<Asserted>& lits) const {
    std::vector<IneqCases> cases;
    cases.reserve(lits.size());
    for (const auto& a : lits) {
        const LinearConstraint& c = atoms_[static_cast<size_t>(a.atomIndex)].constraint;
        cases.push_back(a.positive ? c.asserted() : c.negated());
    }
    return cases;
}

bool BoundedIlaModule::feasible(const std::vector<Asserted>& lits) const {
    return findPointCases(casesFor(lits), ranges_).has_value();
}

std::vector<BoundedIlaModule::Asserted> BoundedIlaModule::shrinkConflict(
    std::vector<Asserted> lits) const {
    if (!opts_.minimizeConflicts) return lits;
    // Deletion-based shrinking: drop a literal whenever the rest stays
    // infeasible.
    for (size_t i = 0; i < lits.size();) {
        std::vector<Asserted> without = lits;
        without.erase(without.begin() + static_cast<long>(i));
        if (!feasible(without)) lits = std::move(without);
        else ++i;
    }
    return lits;
}

bool BoundedIlaModule::scanFeasible(const std::vector<IneqCases>& cases) const {
    std::vector<long long> point = ranges_.lo;
    while (true) {
        bool all = true;
        for (const auto& cs : cases) {
            bool some = false;
            for (const auto& option : cs.options) {
                bool ok = true;
                for (const auto& iq : option) {
                    if (!pointSatisfies(iq, point)) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    some = true;
                    break;
                }
            }
            if (!some) {
                all = false;
                break;
            }
        }
        if (all) return true;
        size_t v = 0;
        while (v < point.size() && point[v] == ranges_.hi[v]) {
            point[v] = ranges_.lo[v];
            ++v;
        }
        if (v == point.size()) return false;
        ++point[v];
    }
}

bool BoundedIlaModule::entailsPositive(int fromAtom, int toAtom) const {
    // T u {C_from} |= C_to, checked exactly: from && !to must be infeasible.
    std::vector<IneqCases> cases;
    cases.push_back(atoms_[static_cast<size_t>(fromAtom)].constraint.asserted());
    cases.push_back(atoms_[static_cast<size_t>(toAtom)].constraint.negated());
    return !findPointCases(cases, ranges_).has_value();
}

Verdict BoundedIlaModule::acceptPlain(const PartialStructure& b) {
    std::vector<Asserted> lits = assertedAtoms(b);
    if (feasible(lits)) return Verdict::acceptance();
    std::vector<Asserted> core = shrinkConflict(std::move(lits));
    std::vector<GroundLiteral> clause;
    clause.reserve(core.size());
    for (const auto& a : core) clause.push_back(atomLiteral(a).negated());
    return Verdict::rejection(Reason{GroundClause(std::move(clause)), name_});
}

Verdict BoundedIlaModule::acceptSolverInterface(const PartialStructure& b) {
    const std::string& R = opts_.conflictsRel;
    const std::string& A = opts_.propagationsRel;
    auto reject = [&](std::vector<GroundLiteral> lits) {
        return Verdict::rejection(Reason{GroundClause(std::move(lits)), name_});
    };

    for (const auto& tok : opts_.tokens) {
        if (b.truthOfAtom(tok, {}) == Truth::False)
            return reject({GroundLiteral(tok, {}, true)});
    }

    const std::string& atomSym = atoms_.empty() ? std::string() : atoms_[0].symbol;
    for (int e = 0; e < domain_.size(); ++e) {
        bool mapped = elementToAtom_.count(e) != 0;
        if (!mapped && b.truthOfAtom(R, {e}) == Truth::True)
            return reject({GroundLiteral(R, {e}, false)});
        // A recorded conflict element must be an asserted atom.
        if (mapped && b.truthOfAtom(R, {e}) == Truth::True &&
            b.truthOfAtom(atomSym, {e}) == Truth::False)
            return reject({GroundLiteral(R, {e}, false), GroundLiteral(atomSym, {e}, true)});
    }

    if (!A.empty()) {
        for (int l = 0; l < domain_.size(); ++l) {
            for (int q = 0; q < domain_.size(); ++q) {
                if (b.truthOfAtom(A, {l, q}) != Truth::True) continue;
                bool mapped = elementToAtom_.count(l) != 0 && elementToAtom_.count(q) != 0;
                if (!mapped || !entailsPositive(elementToAtom_.at(q), elementToAtom_.at(l)))
                    return reject({GroundLiteral(A, {l, q}, false)});
            }
        }
    }

    // When the conflict set is fully known and nonempty, it must be a genuine
    // infeasible set; feasibility of the recorded set dooms every extension.
    bool rKnown = true;
    std::vector<Asserted> conflictSet;
    std::vector<GroundLiteral> rClause;
    for (int e = 0; e < domain_.size(); ++e) {
        Truth t = b.truthOfAtom(R, {e});
        if (t == Truth::Unknown) {
            rKnown = false;
            break;
        }
        rClause.push_back(GroundLiteral(R, {e}, t != Truth::True));
        if (t == Truth::True && elementToAtom_.count(e))
            conflictSet.push_back({elementToAtom_.at(e), true});
    }
    if (rKnown && !conflictSet.empty() && feasible(conflictSet)) return reject(rClause);
    return Verdict::acceptance();
}

Verdict BoundedIlaModule::accept(const PartialStructure& b) {
    return opts_.conflictsRel.empty() ? acceptPlain(b) : acceptSolverInterface(b);
}

std::vector<Advice> BoundedIlaModule::advices(const PartialStructure& b, int budget) {
    std::vector<Advice> out;
    if (!opts_.conflictsRel.empty()) {
        // Conflict rows assert their atoms.
        const std::string& R = opts_.conflictsRel;
        const std::string& atomSym = atoms_.empty() ? std::string() : atoms_[0].symbol;
        for (const auto& [e, ai] : elementToAtom_) {
            if (static_cast<int>(out.size()) >= budget) break;
            if (b.truthOfAtom(R, {e}) == Truth::True &&
                b.truthOfAtom(atomSym, {e}) == Truth::Unknown)
                out.push_back(Advice{{GroundLiteral(R, {e}, true)},
                                     GroundClause({GroundLiteral(atomSym, {e}, true)})});
        }
        return out;
    }

    // Plain mode: interval propagation over the asserted constraints, with
    // entailed unknown atoms emitted against their justifying subset.
    std::vector<Asserted> asserted = assertedAtoms(b);
    auto boxFor = [&](const std::vector<Asserted>& lits) -> std::optional<VarBox> {
        VarBox box = ranges_;
        std::vector<LinIneq> flat;
        for (const auto& cs : casesFor(lits)) {
            if (cs.options.size() != 1) continue;  // disjunctive: skip for intervals
            for (const auto& iq : cs.options[0]) flat.push_back(iq);
        }
        if (!tightenBox(flat, box)) return std::nullopt;
        return box;
    };
    auto entailedOverBox = [&](const IneqCases& cs, const VarBox& box) {
        for (const auto& option : cs.options) {
            bool all = true;
            for (const auto& iq : option) {
                if (!ineqHoldsOverBox(iq, box)) {
                    all = false;
                    break;
                }
            }
            if (all) return true;
        }
        return false;
    };

    std::optional<VarBox> box = boxFor(asserted);
    if (!box) return out;  // asserted set already infeasible; accept() handles it
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (static_cast<int>(out.size()) >= budget) break;
        if (b.truthOfAtom(atoms_[i].symbol, atoms_[i].args) != Truth::Unknown) continue;
        for (bool positive : {true, false}) {
            const LinearConstraint& c = atoms_[i].constraint;
            IneqCases goal = positive ? c.asserted() : c.negated();
            if (!entailedOverBox(goal, *box)) continue;
            // Shrink the justification while the entailment survives.
            std::vector<Asserted> just = asserted;
            for (size_t j = 0; j < just.size();) {
                std::vector<Asserted> without = just;
                without.erase(without.begin() + static_cast<long>(j));
                std::optional<VarBox> wbox = boxFor(without);
                if (wbox && entailedOverBox(goal, *wbox)) just = std::move(without);
                else if (!wbox) just = std::move(without);  // contradiction entails anything
                else ++j;
            }
            std::vector<GroundLiteral> pre;
            pre.reserve(just.size());
            for (const auto& a : just) pre.push_back(atomLiteral(a));
            out.push_back(Advice{std::move(pre),
                                 GroundClause({GroundLiteral(atoms_[i].symbol, atoms_[i].args,
                                                             positive)})});
            break;
        }
    }
    return out;
}

bool BoundedIlaModule::contains(const Structure& total) const {
    if (opts_.conflictsRel.empty()) {
        std::vector<IneqCases> cases;
        for (size_t i = 0; i < atoms_.size(); ++i) {
            const auto& ma = atoms_[i];
            cases.push_back(total.holds(ma.symbol, ma.args) ? ma.constraint.asserted()
                                                            : ma.constraint.negated());
        }
        return scanFeasible(cases);
    }

    for (const auto& tok : opts_.tokens)
        if (!total.holds(tok, {})) return false;
    const std::string& R = opts_.conflictsRel;
    const std::string& A = opts_.propagationsRel;
    const std::string& atomSym = atoms_.empty() ? std::string() : atoms_[0].symbol;

    std::vector<IneqCases> conflictCases;
    bool anyConflict = false;
    for (int e = 0; e < domain_.size(); ++e) {
        if (!total.holds(R, {e})) continue;
        auto it = elementToAtom_.find(e);
        if (it == elementToAtom_.end()) return false;
        if (!total.holds(atomSym, {e})) return false;  // conflict not within asserted set
        conflictCases.push_back(atoms_[static_cast<size_t>(it->second)].constraint.asserted());
        anyConflict = true;
    }
    if (anyConflict && scanFeasible(conflictCases)) return false;  // not a genuine conflict

    if (!A.empty()) {
        for (int l = 0; l < domain_.size(); ++l) {
            for (int q = 0; q < domain_.size(); ++q) {
                if (!total.holds(A, {l, q})) continue;
                auto li = elementToAtom_.find(l);
                auto qi = elementToAtom_.find(q);
                if (li == elementToAtom_.end() || qi == elementToAtom_.end()) return false;
                std::vector<IneqCases> cases;
                cases.push_back(atoms_[static_cast<size_t>(qi->second)].constraint.asserted());
                cases.push_back(atoms_[static_cast<size_t>(li->second)].constraint.negated());
                if (scanFeasible(cases)) return false;  // not a genuine entailment
            }
        }
    }
    return true;
}

//==============================================================================
// MonotoneRuleModule

MonotoneRuleModule::MonotoneRuleModule(std::string name, Domain domain, Vocabulary vocab,
                                       std::string input, std::string output,
                                       std::vector<Rule> rules)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      vocab_(std::move(vocab)),
      input_(std::move(input)),
      output_(std::move(output)),
      rules_(std::move(rules)) {
    if (!vocab_.has(input_) || !vocab_.has(output_))
        throw ModexError("rule module input/output must be declared");
    opSpec_ = OperatorSpec{input_, output_};
    for (const auto& s : vocab_.symbols())
        if (s.name != output_) inputVocab_.add(s);
    for (const auto& r : rules_) {
        if (r.head.symbol != output_)
            throw ModexError("rule heads must use the output relation");
        for (const auto& a : r.body) {
            if (a.symbol == output_)
                throw ModexError("rule bodies may not use the output relation");
            if (!vocab_.has(a.symbol))
                throw ModexError("rule body uses undeclared relation '" + a.symbol + "'");
        }
    }
}

std::shared_ptr<MonotoneRuleModule> MonotoneRuleModule::load(const std::string& name,
                                                             const Domain& domain,
                                                             const std::string& path) {
    std::string text = readFile(path);
    std::istringstream in(text);
    std::string line;
    Vocabulary vocab;
    std::string input, output;
    std::vector<Rule> rules;

    auto parseAtom = [&](const std::string& token, std::map<std::string, int>& vars) {
        RuleAtom atom;
        size_t open = token.find('(');
        if (open == std::string::npos) {
            atom.symbol = token;
            return atom;
        }
        atom.symbol = token.substr(0, open);
        std::string args = token.substr(open + 1, token.size() - open - 2);
        std::string cur;
        for (char c : args + ",") {
            if (c == ',') {
                Term t;
                if (!cur.empty() && std::isupper(static_cast<unsigned char>(cur[0]))) {
                    t.isVar = true;
                    auto [it, fresh] = vars.emplace(cur, static_cast<int>(vars.size()));
                    (void)fresh;
                    t.var = it->second;
                } else {
                    t.constant = domain.indexOf(cur);
                }
                atom.args.push_back(t);
                cur.clear();
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                cur.push_back(c);
            }
        }
        return atom;
    };

    while (std::getline(in, line)) {
        auto f = splitFields(line);
        if (f.empty()) continue;
        if (f[0] == "input" || f[0] == "output" || f[0] == "rel") {
            if (f.size() != 3) throw ModexError(path + ": declaration needs a name and arity");
            vocab.add(Symbol{f[1], SymbolKind::Relation, std::stoi(f[2])});
            if (f[0] == "input") input = f[1];
            if (f[0] == "output") output = f[1];
            continue;
        }
        // A rule line: Head(..) <- Body1(..), Body2(..).
        std::string stripped;
        for (const auto& part : f) stripped += part;
        if (stripped.back() != '.') throw ModexError(path + ": rule must end with '.'");
        stripped.pop_back();
        size_t arrow = stripped.find("<-");
        if (arrow == std::string::npos) throw ModexError(path + ": rule is 'head <- body.'");
        std::map<std::string, int> vars;
        Rule rule;
        rule.head = parseAtom(stripped.substr(0, arrow), vars);
        std::string body = stripped.substr(arrow + 2);
        std::string cur;
        int depth = 0;
        for (char c : body + ",") {
            if (c == ',' && depth == 0) {
                if (!cur.empty()) rule.body.push_back(parseAtom(cur, vars));
                cur.clear();
            } else {
                if (c == '(') ++depth;
                if (c == ')') --depth;
                cur.push_back(c);
            }
        }
        rule.varCount = static_cast<int>(vars.size());
        rules.push_back(std::move(rule));
    }
    if (input.empty() || output.empty())
        throw ModexError(path + ": rule module needs input and output declarations");
    return std::make_shared<MonotoneRuleModule>(name, domain, std::move(vocab), input, output,
                                                std::move(rules));
}

TupleSet MonotoneRuleModule::operatorEval(const Structure& input) const {
    TupleSet image;
    for (const auto& rule : rules_) {
        std::vector<int> assignment(static_cast<size_t>(rule.varCount), 0);
        // Enumerate all variable assignments; rule sizes are desk-scale.
        while (true) {
            bool bodyHolds = true;
            for (const auto& atom : rule.body) {
                Tuple t;
                t.reserve(atom.args.size());
                for (const auto& term : atom.args)
                    t.push_back(term.isVar ? assignment[static_cast<size_t>(term.var)]
                                           : term.constant);
                if (!input.holds(atom.symbol, t)) {
                    bodyHolds = false;
                    break;
                }
            }
            if (bodyHolds) {
                Tuple t;
                t.reserve(rule.head.args.size());
                for (const auto& term : rule.head.args)
                    t.push_back(term.isVar ? assignment[static_cast<size_t>(term.var)]
                                           : term.constant);
                image.insert(t);
            }
            size_t v = 0;
            while (v < assignment.size() && assignment[v] == domain_.size() - 1) {
                assignment[v] = 0;
                ++v;
            }
            if (v == assignment.size()) break;
            ++assignment[v];
        }
    }
    return image;
}

bool MonotoneRuleModule::baseKnown(const PartialStructure& b) const {
    for (const auto& s : inputVocab_.symbols()) {
        if (s.name == input_ || !b.isPartialSymbol(s.name)) continue;
        uint64_t known = b.positive(s.name).size() + b.negative(s.name).size();
        if (known != b.domain().tupleCount(s.arity)) return false;
    }
    return true;
}

std::vector<GroundLiteral> MonotoneRuleModule::baseLiterals(const PartialStructure& b) const {
    std::vector<GroundLiteral> lits;
    for (const auto& s : inputVocab_.symbols()) {
        if (s.name == input_) continue;
        for (const auto& t : b.domain().allTuples(s.arity))
            lits.emplace_back(s.name, t, b.truthOfAtom(s.name, t) == Truth::True);
    }
    return lits;
}

// Operator images at the two extremes compatible with the known part of the
// input relation. Rules are definite, so the image is monotone in the input:
// every member extending the current state has lowerImage <= output and
// output <= upperImage.
MonotoneRuleModule::ImageBounds MonotoneRuleModule::imageBounds(
    const PartialStructure& b) const {
    Structure in(domain_, inputVocab_);
    for (const auto& s : inputVocab_.symbols()) {
        if (s.name == input_) continue;
        TupleSet tuples;
        for (const auto& t : b.domain().allTuples(s.arity))
            if (b.truthOfAtom(s.name, t) == Truth::True) tuples.insert(t);
        in.setTuples(s.name, std::move(tuples));
    }
    int arity = vocab_.arity(input_);
    TupleSet plus, open;
    for (const auto& t : b.domain().allTuples(arity)) {
        Truth tv = b.truthOfAtom(input_, t);
        if (tv == Truth::True) plus.insert(t);
        if (tv != Truth::False) open.insert(t);
    }
    ImageBounds bounds;
    in.setTuples(input_, plus);
    bounds.lower = operatorEval(in);
    in.setTuples(input_, open);
    bounds.upper = operatorEval(in);
    bounds.inputPlus = std::move(plus);
    return bounds;
}

Verdict MonotoneRuleModule::accept(const PartialStructure& b) {
    if (!baseKnown(b)) return Verdict::acceptance();  // weak but valid
    ImageBounds bounds = imageBounds(b);
    std::vector<GroundLiteral> context;
    for (const auto& l : baseLiterals(b)) context.push_back(l.negated());
    int arity = vocab_.arity(input_);
    for (const auto& t : b.domain().allTuples(vocab_.arity(output_))) {
        Truth tv = b.truthOfAtom(output_, t);
        if (tv == Truth::False && bounds.lower.count(t)) {
            // Forced by the known-positive inputs alone.
            std::vector<GroundLiteral> clause = context;
            for (const auto& s : bounds.inputPlus) clause.emplace_back(input_, s, false);
            clause.emplace_back(output_, t, true);
            return Verdict::rejection(Reason{GroundClause(std::move(clause)), name_});
        }
        if (tv == Truth::True && !bounds.upper.count(t)) {
            // Unreachable even with every open input tuple present.
            std::vector<GroundLiteral> clause = context;
            for (const auto& s : b.domain().allTuples(arity))
                if (b.truthOfAtom(input_, s) == Truth::False)
                    clause.emplace_back(input_, s, true);
            clause.emplace_back(output_, t, false);
            return Verdict::rejection(Reason{GroundClause(std::move(clause)), name_});
        }
    }
    return Verdict::acceptance();
}

std::vector<Advice> MonotoneRuleModule::advices(const PartialStructure& b, int budget) {
    std::vector<Advice> out;
    if (!baseKnown(b)) return out;
    ImageBounds bounds = imageBounds(b);
    int arity = vocab_.arity(input_);

    std::vector<GroundLiteral> base = baseLiterals(b);
    std::vector<GroundLiteral> preLower = base;
    for (const auto& s : bounds.inputPlus) preLower.emplace_back(input_, s, true);
    std::vector<GroundLiteral> preUpper = base;
    for (const auto& s : b.domain().allTuples(arity))
        if (b.truthOfAtom(input_, s) == Truth::False) preUpper.emplace_back(input_, s, false);

    for (const auto& t : b.domain().allTuples(vocab_.arity(output_))) {
        if (static_cast<int>(out.size()) >= budget) break;
        if (b.truthOfAtom(output_, t) != Truth::Unknown) continue;
        if (bounds.lower.count(t)) {
            out.push_back(Advice{preLower, GroundClause({GroundLiteral(output_, t, true)})});
        } else if (!bounds.upper.count(t)) {
            out.push_back(Advice{preUpper, GroundClause({GroundLiteral(output_, t, false)})});
        }
    }
    return out;
}

bool MonotoneRuleModule::contains(const Structure& total) const {
    return total.tuples(output_) == operatorEval(total.restrictedTo(inputVocab_));
}

ModuleProperties MonotoneRuleModule::properties() const {
    ModuleProperties props;
    TotalityDecl totality;
    for (const auto& s : inputVocab_.symbols()) totality.symbols.push_back(s.name);
    props.totality.push_back(std::move(totality));
    MonotonicityDecl mono;
    mono.over = {input_};
    for (const auto& s : inputVocab_.symbols())
        if (s.name != input_) mono.fixed.push_back(s.name);
    mono.target = {output_};
    mono.antiMonotone = false;
    props.monotonicity.push_back(std::move(mono));
    return props;
}

//==============================================================================
// Factory

std::shared_ptr<Oracle> buildModule(const std::string& id, const std::string& kind,
                                    const std::string& paramPath, const Domain& domain) {
    if (kind == "clausal") return ClausalModule::load(id, domain, paramPath);
    if (kind == "alldiff") return AllDifferentModule::load(id, domain, paramPath);
    if (kind == "ila") return BoundedIlaModule::load(id, domain, paramPath);
    if (kind == "rules") return MonotoneRuleModule::load(id, domain, paramPath);
    throw ModexError("unknown module kind '" + kind + "'");
}

}  // namespace modex
