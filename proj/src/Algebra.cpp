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

#include "modex/Algebra.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace modex {

//==============================================================================
// Lexer

namespace {

struct Token {
    enum Kind { Id, String, Punct, End };
    Kind kind = End;
    std::string text;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }
    bool isPunct(const std::string& p) const {
        return tok_.kind == Token::Punct && tok_.text == p;
    }
    Token expectPunct(const std::string& p) {
        if (!isPunct(p)) fail("expected '" + p + "'");
        return next();
    }
    Token expectId() {
        if (tok_.kind != Token::Id) fail("expected identifier");
        return next();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + (tok_.kind == Token::End ? " at end of input"
                                                        : " near '" + tok_.text + "'"),
                         tok_.line, tok_.col);
    }

  private:
    static bool idStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool idChar(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    }

    void advance() {
        skipSpace();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= text_.size()) {
            tok_ = Token{Token::End, "", line_, col_};
            return;
        }
        char c = text_[pos_];
        if (idStart(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && idChar(text_[pos_])) bump();
            tok_ = Token{Token::Id, text_.substr(start, pos_ - start), tok_.line, tok_.col};
            return;
        }
        if (c == '"') {
            bump();
            size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') bump();
            if (pos_ >= text_.size())
                throw ParseError("unterminated string", tok_.line, tok_.col);
            std::string s = text_.substr(start, pos_ - start);
            bump();
            tok_ = Token{Token::String, s, tok_.line, tok_.col};
            return;
        }
        if (c == '|' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            bump();
            bump();
            tok_ = Token{Token::Punct, "|>", tok_.line, tok_.col};
            return;
        }
        if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
            bump();
            bump();
            tok_ = Token{Token::Punct, ":=", tok_.line, tok_.col};
            return;
        }
        bump();
        tok_ = Token{Token::Punct, std::string(1, c), tok_.line, tok_.col};
    }

    void skipSpace() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

//==============================================================================
// Expression parser
//
//   expr    := compose ('&' compose)*
//   compose := postfix ('|>' postfix)*
//   postfix := primary ('[' ID '=' ID ']')*
//   primary := 'project' '{' ID (',' ID)* '}' '(' expr ')' | '(' expr ')' | ID

SystemExprPtr parseExpr(Lexer& lx);

SystemExprPtr parsePrimary(Lexer& lx) {
    if (lx.peek().kind == Token::Id && lx.peek().text == "project") {
        lx.next();
        lx.expectPunct("{");
        auto node = std::make_unique<SystemExpr>();
        node->kind = SystemExpr::Kind::Project;
        node->projection.push_back(lx.expectId().text);
        while (lx.isPunct(",")) {
            lx.next();
            node->projection.push_back(lx.expectId().text);
        }
        lx.expectPunct("}");
        lx.expectPunct("(");
        node->left = parseExpr(lx);
        lx.expectPunct(")");
        return node;
    }
    if (lx.isPunct("(")) {
        lx.next();
        auto inner = parseExpr(lx);
        lx.expectPunct(")");
        return inner;
    }
    Token id = lx.expectId();
    auto node = std::make_unique<SystemExpr>();
    node->kind = SystemExpr::Kind::Primitive;
    node->moduleId = id.text;
    return node;
}

SystemExprPtr parsePostfix(Lexer& lx) {
    auto node = parsePrimary(lx);
    while (lx.isPunct("[")) {
        lx.next();
        auto fb = std::make_unique<SystemExpr>();
        fb->kind = SystemExpr::Kind::Feedback;
        fb->fbFirst = lx.expectId().text;
        lx.expectPunct("=");
        fb->fbSecond = lx.expectId().text;
        lx.expectPunct("]");
        fb->left = std::move(node);
        node = std::move(fb);
    }
    return node;
}

SystemExprPtr parseCompose(Lexer& lx) {
    auto node = parsePostfix(lx);
    while (lx.isPunct("|>")) {
        lx.next();
        auto rhs = parsePostfix(lx);
        auto comp = std::make_unique<SystemExpr>();
        comp->kind = SystemExpr::Kind::Compose;
        comp->left = std::move(node);
        comp->right = std::move(rhs);
        node = std::move(comp);
    }
    return node;
}

SystemExprPtr parseExpr(Lexer& lx) {
    auto node = parseCompose(lx);
    while (lx.isPunct("&")) {
        lx.next();
        auto rhs = parseCompose(lx);
        auto isect = std::make_unique<SystemExpr>();
        isect->kind = SystemExpr::Kind::Intersect;
        isect->left = std::move(node);
        isect->right = std::move(rhs);
        node = std::move(isect);
    }
    return node;
}

}  // namespace

std::string SystemExpr::toText() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Primitive:
            os << moduleId;
            break;
        case Kind::Project: {
            os << "project {";
            for (size_t i = 0; i < projection.size(); ++i) {
                if (i) os << ",";
                os << projection[i];
            }
            os << "} (" << left->toText() << ")";
            break;
        }
        case Kind::Compose:
            os << "(" << left->toText() << " |> " << right->toText() << ")";
            break;
        case Kind::Intersect:
            os << "(" << left->toText() << " & " << right->toText() << ")";
            break;
        case Kind::Feedback:
            os << left->toText() << "[" << fbFirst << "=" << fbSecond << "]";
            break;
    }
    return os.str();
}

SystemExprPtr parseSystemExpr(const std::string& text) {
    Lexer lx(text);
    auto e = parseExpr(lx);
    if (lx.peek().kind != Token::End) lx.fail("trailing input after expression");
    return e;
}

SystemFile parseSystemFile(const std::string& text) {
    Lexer lx(text);
    SystemFile out;
    while (lx.peek().kind == Token::Id && lx.peek().text == "module") {
        lx.next();
        ModuleDecl decl;
        decl.id = lx.expectId().text;
        decl.kind = lx.expectId().text;
        if (decl.kind != "clausal" && decl.kind != "alldiff" && decl.kind != "ila" &&
            decl.kind != "rules")
            lx.fail("unknown module kind '" + decl.kind + "'");
        if (lx.peek().kind != Token::String) lx.fail("expected parameter file string");
        decl.paramPath = lx.next().text;
        out.modules.push_back(std::move(decl));
    }
    if (!(lx.peek().kind == Token::Id && lx.peek().text == "system"))
        lx.fail("expected 'system'");
    lx.next();
    out.systemName = lx.expectId().text;
    lx.expectPunct(":=");
    out.expr = parseExpr(lx);
    if (lx.peek().kind != Token::End) lx.fail("trailing input after system definition");
    return out;
}

//==============================================================================
// Flattening

namespace {

// Union-find over symbol names, canonical = lexicographically smallest.
class SymbolAliases {
  public:
    void declare(const std::string& s) { parent_.emplace(s, s); }

    const std::string& find(const std::string& s) {
        auto it = parent_.find(s);
        if (it == parent_.end()) {
            parent_.emplace(s, s);
            return find(s);
        }
        if (it->second == s) return it->first;
        const std::string& root = find(it->second);
        it->second = root;
        return root;
    }

    void merge(const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
    }

    std::map<std::string, std::string> collapsed() {
        std::map<std::string, std::string> out;
        for (const auto& [k, _] : parent_) out[k] = find(k);
        return out;
    }

  private:
    std::map<std::string, std::string> parent_;
};

// Visible vocabulary of a subexpression; also collects primitives and
// feedback pairs.
Vocabulary walk(const SystemExpr& e, const std::map<std::string, Vocabulary>& registry,
                std::vector<std::pair<std::string, Vocabulary>>& primitives,
                std::vector<std::pair<std::string, std::string>>& feedbacks) {
    switch (e.kind) {
        case SystemExpr::Kind::Primitive: {
            auto it = registry.find(e.moduleId);
            if (it == registry.end())
                throw ModexError("unknown module id '" + e.moduleId + "'");
            primitives.emplace_back(e.moduleId, it->second);
            return it->second;
        }
        case SystemExpr::Kind::Project: {
            Vocabulary child = walk(*e.left, registry, primitives, feedbacks);
            Vocabulary out;
            for (const auto& name : e.projection) {
                if (!child.has(name))
                    throw ModexError("projection keeps '" + name +
                                     "' which is not visible in the child expression");
                out.add(child.symbol(name));
            }
            return out;
        }
        case SystemExpr::Kind::Compose:
        case SystemExpr::Kind::Intersect: {
            Vocabulary l = walk(*e.left, registry, primitives, feedbacks);
            Vocabulary r = walk(*e.right, registry, primitives, feedbacks);
            return Vocabulary::unionOf(l, r);
        }
        case SystemExpr::Kind::Feedback: {
            Vocabulary child = walk(*e.left, registry, primitives, feedbacks);
            if (!child.has(e.fbFirst) || !child.has(e.fbSecond))
                throw ModexError("feedback [" + e.fbFirst + "=" + e.fbSecond +
                                 "] names a symbol not visible in the child expression");
            if (child.arity(e.fbFirst) != child.arity(e.fbSecond))
                throw ModexError("feedback [" + e.fbFirst + "=" + e.fbSecond +
                                 "] merges symbols of different arity");
            feedbacks.emplace_back(e.fbFirst, e.fbSecond);
            return child;
        }
    }
    throw ModexError("corrupt system expression");
}

}  // namespace

const std::string& FlatSystem::canonical(const std::string& symbol) const {
    auto it = alias.find(symbol);
    return it == alias.end() ? symbol : it->second;
}

FlatSystem flatten(const SystemExpr& expr,
                   const std::map<std::string, Vocabulary>& registry) {
    std::vector<std::pair<std::string, Vocabulary>> primitives;
    std::vector<std::pair<std::string, std::string>> feedbacks;
    Vocabulary visible = walk(expr, registry, primitives, feedbacks);

    SymbolAliases aliases;
    for (const auto& [id, vocab] : primitives)
        for (const auto& s : vocab.symbols()) aliases.declare(s.name);
    for (const auto& [a, b] : feedbacks) aliases.merge(a, b);

    FlatSystem flat;
    flat.alias = aliases.collapsed();

    // Canonical search vocabulary; alias classes must agree on arity.
    for (const auto& [id, vocab] : primitives) {
        for (const auto& s : vocab.symbols()) {
            Symbol canon = s;
            canon.name = flat.alias.at(s.name);
            if (flat.searchVocab.has(canon.name) &&
                flat.searchVocab.arity(canon.name) != canon.arity)
                throw ModexError("aliasing merges symbols of different arity at '" +
                                 canon.name + "'");
            flat.searchVocab.add(canon);
        }
    }

    for (const auto& [id, vocab] : primitives) {
        ModuleBinding binding;
        binding.id = id;
        binding.vocabulary = vocab;
        for (const auto& s : vocab.symbols()) binding.toCanonical[s.name] = flat.alias.at(s.name);
        flat.modules.push_back(std::move(binding));
    }

    for (const auto& s : visible.symbols()) {
        Symbol canon = s;
        canon.name = flat.canonical(s.name);
        flat.outputVocab.add(canon);
    }
    return flat;
}

//==============================================================================
// Registry and total acceptance

void ModuleRegistry::add(const std::string& id, std::shared_ptr<Oracle> oracle) {
    if (!oracles_.emplace(id, std::move(oracle)).second)
        throw ModexError("module id '" + id + "' registered twice");
}

Oracle& ModuleRegistry::oracle(const std::string& id) const {
    auto it = oracles_.find(id);
    if (it == oracles_.end()) throw ModexError("no oracle registered for '" + id + "'");
    return *it->second;
}

std::map<std::string, Vocabulary> ModuleRegistry::vocabularies() const {
    std::map<std::string, Vocabulary> out;
    for (const auto& [id, o] : oracles_) out[id] = o->vocabulary();
    return out;
}

bool acceptsTotal(const FlatSystem& flat, const ModuleRegistry& registry,
                  const Structure& total) {
    for (const auto& binding : flat.modules) {
        Structure local = total.restrictedTo(binding.vocabulary, binding.toCanonical);
        PartialStructure b(local, Vocabulary{});
        if (!registry.oracle(binding.id).accept(b).accepted) return false;
    }
    return true;
}

//==============================================================================
// Instance binding

Task bindInstance(FlatSystem flat, const Structure& instance) {
    Task task;
    // Canonicalize instance symbol names and keep the interpretation.
    Vocabulary sigma;
    for (const auto& s : instance.vocabulary().symbols()) {
        Symbol canon = s;
        canon.name = flat.canonical(s.name);
        if (flat.searchVocab.has(canon.name)) {
            if (flat.searchVocab.arity(canon.name) != canon.arity)
                throw VocabularyClash("instance symbol '" + s.name +
                                      "' has a different arity in the system");
        } else {
            flat.searchVocab.add(canon);  // unconstrained instance symbol
        }
        sigma.add(canon);
    }
    Structure canonInstance(instance.domain(), sigma);
    for (const auto& s : instance.vocabulary().symbols())
        canonInstance.setTuples(flat.canonical(s.name), instance.tuples(s.name));

    Vocabulary epsilon;
    for (const auto& s : flat.searchVocab.symbols())
        if (!sigma.has(s.name)) epsilon.add(s);

    task.flat = std::move(flat);
    task.instance = std::move(canonInstance);
    task.sigma = std::move(sigma);
    task.epsilon = std::move(epsilon);
    return task;
}

}  // namespace modex
