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

#include "modex/TextIO.h"

#include <fstream>
#include <sstream>

namespace modex {

std::vector<std::string> splitFields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModexError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GroundLiteral parseGroundLiteral(const std::string& token, const Domain& domain) {
    std::string t = token;
    bool positive = true;
    if (!t.empty() && t[0] == '-') {
        positive = false;
        t = t.substr(1);
    }
    if (t.empty()) throw ModexError("empty literal");
    size_t open = t.find('(');
    if (open == std::string::npos) return GroundLiteral(t, {}, positive);
    if (t.back() != ')') throw ModexError("malformed literal '" + token + "'");
    std::string sym = t.substr(0, open);
    std::string args = t.substr(open + 1, t.size() - open - 2);
    Tuple tuple;
    std::string cur;
    for (char c : args + ",") {
        if (c == ',') {
            if (cur.empty()) throw ModexError("malformed literal '" + token + "'");
            tuple.push_back(domain.indexOf(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    return GroundLiteral(sym, tuple, positive);
}

Structure parseInstance(std::istream& in, const std::string& what) {
    std::string line;
    std::vector<std::string> domainNames;
    struct Fact {
        std::string symbol;
        std::vector<std::string> args;
    };
    std::vector<Fact> facts;
    std::vector<std::pair<std::string, int>> declared;

    while (std::getline(in, line)) {
        auto f = splitFields(line);
        if (f.empty()) continue;
        if (f[0] == "domain") {
            if (!domainNames.empty()) throw ModexError(what + ": duplicate domain line");
            domainNames.assign(f.begin() + 1, f.end());
        } else if (f[0] == "sym") {
            if (f.size() != 3) throw ModexError(what + ": sym line needs a name and an arity");
            declared.emplace_back(f[1], std::stoi(f[2]));
        } else if (f[0] == "rel") {
            if (f.size() < 2) throw ModexError(what + ": rel line needs a symbol");
            facts.push_back({f[1], {f.begin() + 2, f.end()}});
        } else {
            throw ModexError(what + ": unknown directive '" + f[0] + "'");
        }
    }
    if (domainNames.empty()) throw ModexError(what + ": missing domain line");
    Domain domain(domainNames);

    Vocabulary vocab;
    for (const auto& [name, arity] : declared)
        vocab.add(Symbol{name, SymbolKind::Relation, arity});
    for (const auto& fact : facts)
        vocab.add(Symbol{fact.symbol, SymbolKind::Relation, static_cast<int>(fact.args.size())});

    Structure out(domain, vocab);
    for (const auto& fact : facts) {
        Tuple t;
        t.reserve(fact.args.size());
        for (const auto& a : fact.args) t.push_back(domain.indexOf(a));
        out.addTuple(fact.symbol, t);
    }
    return out;
}

Structure loadInstance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModexError("cannot open instance file '" + path + "'");
    return parseInstance(in, path);
}

void writeFacts(std::ostream& os, const Structure& s) {
    for (const auto& sym : s.vocabulary().symbols()) {
        for (const auto& t : s.tuples(sym.name)) {
            os << "rel " << sym.name;
            for (int e : t) os << ' ' << s.domain().name(e);
            os << '\n';
        }
    }
}

}  // namespace modex
