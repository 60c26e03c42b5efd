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

#ifndef MODEX_BUILTINS_H
#define MODEX_BUILTINS_H

#include <memory>
#include <string>
#include <vector>

#include "modex/Linear.h"
#include "modex/Oracle.h"

namespace modex {

//==============================================================================
// Clausal module: membership = all ground clauses satisfied.

class ClausalModule : public Oracle {
  public:
    ClausalModule(std::string name, Domain domain, Vocabulary vocab,
                  std::vector<GroundClause> clauses);

    /// Loads a symbolic clause file:
    ///   rel R 1
    ///   clause -E(a,b) -R(a) -R(b)
    static std::shared_ptr<ClausalModule> load(const std::string& name, const Domain& domain,
                                               const std::string& path);

    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure& b) override;
    std::vector<Advice> advices(const PartialStructure& b, int budget) override;
    bool contains(const Structure& total) const override;

    const std::vector<GroundClause>& clauses() const { return clauses_; }

  private:
    std::string name_;
    Domain domain_;
    Vocabulary vocab_;
    std::vector<GroundClause> clauses_;
};

//==============================================================================
// All-different module: one binary relation read as the graph of a function
// from a scope to a value set; members are exactly the injective total
// assignments with no rows outside scope x values.

class AllDifferentModule : public Oracle {
  public:
    AllDifferentModule(std::string name, Domain domain, std::string relation,
                       std::vector<int> scope, std::vector<int> values);

    /// Loader:
    ///   rel assign 2
    ///   scope e1 e2 e3
    ///   values s1 s2 s3     (optional; defaults to the whole domain)
    static std::shared_ptr<AllDifferentModule> load(const std::string& name,
                                                    const Domain& domain,
                                                    const std::string& path);

    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure& b) override;
    std::vector<Advice> advices(const PartialStructure& b, int budget) override;
    bool contains(const Structure& total) const override;

  private:
    bool inScope(int e) const;
    bool inValues(int e) const;

    std::string name_;
    Domain domain_;
    std::string rel_;
    std::vector<int> scope_;
    std::vector<int> values_;
    Vocabulary vocab_;
};

//==============================================================================
// Bounded integer linear arithmetic module.
//
// Maps ground atoms to linear constraints over integer variables with finite
// ranges. Plain mode: members are the truth assignments whose signed
// constraint set has an integer solution; rejection reasons are infeasible
// subsets of the asserted atoms, advices are exact theory propagations with
// their justifications.
//
// The solver-interface mode (`conflicts`/`propagations` declarations) adds a
// conflict relation and a propagation relation over the elements naming the
// mapped atoms: members then are structures where every recorded conflict is
// a genuine infeasible subset of the asserted atoms and every recorded
// propagation row is a genuine entailment. The atom assignment itself is
// unconstrained in this mode; paired with a clausal module that forbids
// recorded conflicts, the combined system forces the conflict relation empty.

class BoundedIlaModule : public Oracle {
  public:
    struct MappedAtom {
        std::string symbol;
        Tuple args;
        LinearConstraint constraint;
    };

    struct Options {
        bool minimizeConflicts = true;
        std::string conflictsRel;     // enables solver-interface mode
        std::string propagationsRel;  // requires conflictsRel
        std::vector<std::string> tokens;  // arity-0 symbols required true
    };

    BoundedIlaModule(std::string name, Domain domain, std::vector<std::string> varNames,
                     VarBox ranges, std::vector<MappedAtom> atoms);
    BoundedIlaModule(std::string name, Domain domain, std::vector<std::string> varNames,
                     VarBox ranges, std::vector<MappedAtom> atoms, Options opts);

    /// Loader:
    ///   var x 0 5
    ///   atom a : 2*x + 3*y <= 7
    ///   atom L(p) : x >= 3
    ///   conflicts R          (optional, solver-interface mode)
    ///   propagations A       (optional)
    ///   token M              (optional)
    ///   minimize off         (optional)
    static std::shared_ptr<BoundedIlaModule> load(const std::string& name, const Domain& domain,
                                                  const std::string& path);

    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure& b) override;
    std::vector<Advice> advices(const PartialStructure& b, int budget) override;
    bool contains(const Structure& total) const override;

  private:
    struct Asserted {
        int atomIndex;
        bool positive;
    };
    std::vector<Asserted> assertedAtoms(const PartialStructure& b) const;
    std::vector<IneqCases> casesFor(const std::vector<Asserted>& lits) const;
    bool feasible(const std::vector<Asserted>& lits) const;
    std::vector<Asserted> shrinkConflict(std::vector<Asserted> lits) const;
    GroundLiteral atomLiteral(const Asserted& a) const;
    /// Exhaustive integer-point scan, the independent route used by contains().
    bool scanFeasible(const std::vector<IneqCases>& cases) const;
    bool entailsPositive(int fromAtom, int toAtom) const;

    Verdict acceptPlain(const PartialStructure& b);
    Verdict acceptSolverInterface(const PartialStructure& b);

    std::string name_;
    Domain domain_;
    std::vector<std::string> varNames_;
    VarBox ranges_;
    std::vector<MappedAtom> atoms_;
    Options opts_;
    Vocabulary vocab_;
    std::map<int, int> elementToAtom_;  // element index -> mapped atom (solver-interface mode)
};

//==============================================================================
// Monotone definite-rule module.
//
// Definite rules head <- body over relations, with a designated input
// relation and output relation. The operator view maps an interpretation of
// the input (plus the base relations) to the one-step consequences for the
// output; members are exactly the totals where output equals that image.

class MonotoneRuleModule : public Oracle {
  public:
    struct Term {
        bool isVar = false;
        int constant = 0;      // element index when !isVar
        int var = 0;           // variable id when isVar
    };
    struct RuleAtom {
        std::string symbol;
        std::vector<Term> args;
    };
    struct Rule {
        RuleAtom head;
        std::vector<RuleAtom> body;
        int varCount = 0;
    };

    MonotoneRuleModule(std::string name, Domain domain, Vocabulary vocab, std::string input,
                       std::string output, std::vector<Rule> rules);

    /// Loader:
    ///   input S 2
    ///   output R 2
    ///   rel E 2
    ///   R(X,Y) <- E(X,Y).
    ///   R(X,Z) <- E(X,Y), S(Y,Z).
    /// Uppercase-initial terms are variables, others domain elements.
    static std::shared_ptr<MonotoneRuleModule> load(const std::string& name,
                                                    const Domain& domain,
                                                    const std::string& path);

    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure& b) override;
    std::vector<Advice> advices(const PartialStructure& b, int budget) override;
    bool contains(const Structure& total) const override;
    ModuleProperties properties() const override;
    const OperatorSpec* operatorSpec() const override { return &opSpec_; }
    TupleSet operatorEval(const Structure& input) const override;

  private:
    struct ImageBounds {
        TupleSet lower;      // image of the known-positive input part
        TupleSet upper;      // image of everything not known-negative
        TupleSet inputPlus;  // the known-positive input tuples
    };
    bool baseKnown(const PartialStructure& b) const;
    std::vector<GroundLiteral> baseLiterals(const PartialStructure& b) const;
    ImageBounds imageBounds(const PartialStructure& b) const;

    std::string name_;
    Domain domain_;
    Vocabulary vocab_;
    std::string input_, output_;
    std::vector<Rule> rules_;
    OperatorSpec opSpec_;
    Vocabulary inputVocab_;  // vocab minus output
};

//==============================================================================
// Factory used by the CLI: builds an oracle from a module declaration.

std::shared_ptr<Oracle> buildModule(const std::string& id, const std::string& kind,
                                    const std::string& paramPath, const Domain& domain);

}  // namespace modex

#endif  // MODEX_BUILTINS_H
