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

#ifndef MODEX_ALGEBRA_H
#define MODEX_ALGEBRA_H

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "modex/Core.h"
#include "modex/Oracle.h"

namespace modex {

//==============================================================================
// Modular system AST
//
// Systems are algebraic combinations of named primitive modules:
//   projection   project {S1,...} (E)   keeps only the listed symbols visible
//   composition  E1 |> E2               wires shared symbols, conjoins members
//   intersection E1 & E2                conjoins members
//   feedback     E [A=B]                identifies symbols A and B
// The union operator is deliberately not part of the algebra.

struct SystemExpr {
    enum class Kind { Primitive, Project, Compose, Intersect, Feedback };

    Kind kind = Kind::Primitive;
    std::string moduleId;                  // Primitive
    std::vector<std::string> projection;   // Project
    std::string fbFirst, fbSecond;         // Feedback [first=second]
    std::unique_ptr<SystemExpr> left;      // child / left operand
    std::unique_ptr<SystemExpr> right;     // right operand

    /// Compact round-trip form, mainly for tests and diagnostics.
    std::string toText() const;
};

using SystemExprPtr = std::unique_ptr<SystemExpr>;

/// Parses a bare system expression. Precedence: postfix [A=B] binds tightest,
/// then |>, then &; parentheses group. Throws ParseError with line/column.
SystemExprPtr parseSystemExpr(const std::string& text);

/// A full system description: module declarations plus one system definition.
struct ModuleDecl {
    std::string id;
    std::string kind;       // clausal | alldiff | ila | rules
    std::string paramPath;  // parameter file
};

struct SystemFile {
    std::vector<ModuleDecl> modules;
    std::string systemName;
    SystemExprPtr expr;
};

SystemFile parseSystemFile(const std::string& text);

//==============================================================================
// Flattening

/// One primitive module occurrence with the renaming from its local symbol
/// names to the canonical (alias-collapsed) names of the flat vocabulary.
struct ModuleBinding {
    std::string id;
    Vocabulary vocabulary;                            // local names
    std::map<std::string, std::string> toCanonical;   // local -> canonical
};

class FlatSystem {
  public:
    std::vector<ModuleBinding> modules;
    std::map<std::string, std::string> alias;  // symbol -> canonical symbol
    Vocabulary searchVocab;  // all symbols after aliasing, incl. projected-out
    Vocabulary outputVocab;  // symbols surviving every projection

    const std::string& canonical(const std::string& symbol) const;
};

/// Flattens a system expression against declared module vocabularies.
/// Feedback nodes merge symbols into alias classes (same arity required);
/// projection only narrows the output vocabulary; composition and
/// intersection both conjoin module memberships over the shared vocabulary.
FlatSystem flatten(const SystemExpr& expr,
                   const std::map<std::string, Vocabulary>& registry);

//==============================================================================
// Registry and total acceptance

class ModuleRegistry {
  public:
    void add(const std::string& id, std::shared_ptr<Oracle> oracle);
    bool has(const std::string& id) const { return oracles_.count(id) != 0; }
    Oracle& oracle(const std::string& id) const;
    std::map<std::string, Vocabulary> vocabularies() const;

  private:
    std::map<std::string, std::shared_ptr<Oracle>> oracles_;
};

/// True iff every module's oracle accepts the restriction of the total
/// structure (over the search vocabulary) to that module's local vocabulary.
/// Feedback holds by aliasing; projection needs no check because the total
/// itself is the existential witness.
bool acceptsTotal(const FlatSystem& flat, const ModuleRegistry& registry,
                  const Structure& total);

//==============================================================================
// Binding an instance

/// A flat system bound to an instance structure: fixes the instance
/// vocabulary (canonicalized) and the expansion vocabulary (the rest of the
/// search vocabulary).
struct Task {
    FlatSystem flat;
    Structure instance;   // over the canonical instance vocabulary
    Vocabulary sigma;     // instance vocabulary
    Vocabulary epsilon;   // searchVocab \ sigma
};

Task bindInstance(FlatSystem flat, const Structure& instance);

}  // namespace modex

#endif  // MODEX_ALGEBRA_H
