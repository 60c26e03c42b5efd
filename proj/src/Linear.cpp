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

#include "modex/Linear.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace modex {

long long floorDiv(long long a, long long b) {
    long long q = a / b;
    long long r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

long long ceilDiv(long long a, long long b) { return -floorDiv(-a, b); }

namespace {

long long rationalFloor(const Rational& r) { return floorDiv(r.numerator(), r.denominator()); }
long long rationalCeil(const Rational& r) { return ceilDiv(r.numerator(), r.denominator()); }

// Scale rational coefficients to integers; the rhs stays rational and is
// rounded by the caller according to the relation.
void scaleTerms(const std::vector<std::pair<Rational, int>>& terms, const Rational& rhs,
                std::vector<std::pair<long long, int>>& outTerms, Rational& outRhs) {
    long long lcm = 1;
    for (const auto& [c, v] : terms) lcm = std::lcm(lcm, c.denominator());
    outTerms.clear();
    for (const auto& [c, v] : terms) {
        long long coef = c.numerator() * (lcm / c.denominator());
        if (coef != 0) outTerms.emplace_back(coef, v);
    }
    outRhs = rhs * Rational(lcm);
}

LinIneq upperIneq(const std::vector<std::pair<long long, int>>& terms, long long bound) {
    return LinIneq{terms, bound};
}

LinIneq lowerIneq(const std::vector<std::pair<long long, int>>& terms, long long bound) {
    // sum >= bound  <=>  -sum <= -bound
    LinIneq iq;
    iq.terms.reserve(terms.size());
    for (const auto& [c, v] : terms) iq.terms.emplace_back(-c, v);
    iq.bound = -bound;
    return iq;
}

}  // namespace

IneqCases LinearConstraint::asserted() const {
    std::vector<std::pair<long long, int>> t;
    Rational b;
    scaleTerms(terms, rhs, t, b);
    IneqCases out;
    switch (op) {
        case RelOp::Le:
            out.options.push_back({upperIneq(t, rationalFloor(b))});
            break;
        case RelOp::Lt:
            out.options.push_back({upperIneq(t, rationalCeil(b) - 1)});
            break;
        case RelOp::Ge:
            out.options.push_back({lowerIneq(t, rationalCeil(b))});
            break;
        case RelOp::Gt:
            out.options.push_back({lowerIneq(t, rationalFloor(b) + 1)});
            break;
        case RelOp::Eq:
            // Infeasible automatically when b is not an integer.
            out.options.push_back({upperIneq(t, rationalFloor(b)), lowerIneq(t, rationalCeil(b))});
            break;
    }
    return out;
}

IneqCases LinearConstraint::negated() const {
    std::vector<std::pair<long long, int>> t;
    Rational b;
    scaleTerms(terms, rhs, t, b);
    IneqCases out;
    switch (op) {
        case RelOp::Le:
            out.options.push_back({lowerIneq(t, rationalFloor(b) + 1)});
            break;
        case RelOp::Lt:
            out.options.push_back({lowerIneq(t, rationalCeil(b))});
            break;
        case RelOp::Ge:
            out.options.push_back({upperIneq(t, rationalCeil(b) - 1)});
            break;
        case RelOp::Gt:
            out.options.push_back({upperIneq(t, rationalFloor(b))});
            break;
        case RelOp::Eq:
            out.options.push_back({upperIneq(t, rationalCeil(b) - 1)});
            out.options.push_back({lowerIneq(t, rationalFloor(b) + 1)});
            break;
    }
    return out;
}

std::string LinearConstraint::toText(const std::vector<std::string>& varNames) const {
    std::ostringstream os;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) os << " + ";
        const auto& [c, v] = terms[i];
        if (c != Rational(1)) {
            os << c.numerator();
            if (c.denominator() != 1) os << '/' << c.denominator();
            os << '*';
        }
        os << varNames[static_cast<size_t>(v)];
    }
    switch (op) {
        case RelOp::Le: os << " <= "; break;
        case RelOp::Ge: os << " >= "; break;
        case RelOp::Eq: os << " = "; break;
        case RelOp::Lt: os << " < "; break;
        case RelOp::Gt: os << " > "; break;
    }
    os << rhs.numerator();
    if (rhs.denominator() != 1) os << '/' << rhs.denominator();
    return os.str();
}

//==============================================================================
// Parsing

namespace {

struct ExprLex {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peekDigit() {
        skip();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    long long number() {
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ModexError("expected number in linear expression: " + s);
        return std::stoll(s.substr(start, pos - start));
    }
    std::string ident() {
        skip();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw ModexError("expected variable in linear expression: " + s);
        return s.substr(start, pos - start);
    }
};

Rational parseCoef(ExprLex& lx) {
    long long num = lx.number();
    if (lx.eat('/')) return Rational(num, lx.number());
    return Rational(num);
}

}  // namespace

LinearConstraint parseLinearConstraint(const std::string& text,
                                       const std::map<std::string, int>& vars) {
    LinearConstraint out;
    ExprLex lx{text};
    bool first = true;
    Rational constant(0);
    while (true) {
        Rational sign(1);
        lx.skip();
        if (lx.eat('+')) {
        } else if (lx.eat('-')) {
            sign = Rational(-1);
        } else if (!first) {
            break;
        }
        while (lx.eat('-')) sign = -sign;  // signed coefficient after the connective
        first = false;
        Rational coef = sign;
        bool sawCoef = false;
        if (lx.peekDigit()) {
            coef = sign * parseCoef(lx);
            sawCoef = true;
            lx.eat('*');
        }
        lx.skip();
        if (lx.pos < lx.s.size() &&
            (std::isalpha(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '_')) {
            std::string name = lx.ident();
            auto it = vars.find(name);
            if (it == vars.end())
                throw UnboundedVariable("variable '" + name + "' has no declared range");
            out.terms.emplace_back(coef, it->second);
        } else if (sawCoef) {
            constant += coef;  // bare constant term
        } else {
            throw ModexError("malformed linear expression: " + text);
        }
    }
    lx.skip();
    if (lx.eat('<')) {
        out.op = lx.eat('=') ? RelOp::Le : RelOp::Lt;
    } else if (lx.eat('>')) {
        out.op = lx.eat('=') ? RelOp::Ge : RelOp::Gt;
    } else if (lx.eat('=')) {
        lx.eat('=');
        out.op = RelOp::Eq;
    } else {
        throw ModexError("missing relation in linear constraint: " + text);
    }
    Rational rhsSign(1);
    if (lx.eat('-')) rhsSign = Rational(-1);
    out.rhs = rhsSign * parseCoef(lx) - constant;
    lx.skip();
    if (lx.pos != lx.s.size())
        throw ModexError("trailing input in linear constraint: " + text);

    // Merge duplicate variables.
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<std::pair<Rational, int>> merged;
    for (const auto& [c, v] : out.terms) {
        if (!merged.empty() && merged.back().second == v) merged.back().first += c;
        else merged.emplace_back(c, v);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& t) { return t.first == Rational(0); }),
                 merged.end());
    out.terms = std::move(merged);
    return out;
}

//==============================================================================
// Feasibility

bool pointSatisfies(const LinIneq& iq, const std::vector<long long>& point) {
    long long sum = 0;
    for (const auto& [c, v] : iq.terms) sum += c * point[static_cast<size_t>(v)];
    return sum <= iq.bound;
}

bool tightenBox(const std::vector<LinIneq>& ineqs, VarBox& box) {
    bool changed = true;
    while (changed) {
        changed = false;
        if (box.emptyRange()) return false;
        for (const auto& iq : ineqs) {
            long long minSum = 0;
            for (const auto& [c, v] : iq.terms) {
                minSum += c > 0 ? c * box.lo[static_cast<size_t>(v)]
                                : c * box.hi[static_cast<size_t>(v)];
            }
            if (minSum > iq.bound) return false;
            for (const auto& [c, v] : iq.terms) {
                size_t vi = static_cast<size_t>(v);
                long long own = c > 0 ? c * box.lo[vi] : c * box.hi[vi];
                long long rest = minSum - own;
                long long slack = iq.bound - rest;  // c*x <= slack must hold
                if (c > 0) {
                    long long ub = floorDiv(slack, c);
                    if (ub < box.hi[vi]) {
                        box.hi[vi] = ub;
                        changed = true;
                    }
                } else {
                    long long lb = ceilDiv(slack, c);
                    if (lb > box.lo[vi]) {
                        box.lo[vi] = lb;
                        changed = true;
                    }
                }
                if (box.lo[vi] > box.hi[vi]) return false;
            }
        }
    }
    return true;
}

bool ineqHoldsOverBox(const LinIneq& iq, const VarBox& box) {
    long long maxSum = 0;
    for (const auto& [c, v] : iq.terms) {
        maxSum += c > 0 ? c * box.hi[static_cast<size_t>(v)]
                        : c * box.lo[static_cast<size_t>(v)];
    }
    return maxSum <= iq.bound;
}

std::optional<std::vector<long long>> findPoint(const std::vector<LinIneq>& ineqs, VarBox box) {
    if (!tightenBox(ineqs, box)) return std::nullopt;
    int splitVar = -1;
    for (size_t v = 0; v < box.size(); ++v) {
        if (box.lo[v] < box.hi[v]) {
            splitVar = static_cast<int>(v);
            break;
        }
    }
    if (splitVar < 0) {
        std::vector<long long> point = box.lo;
        for (const auto& iq : ineqs)
            if (!pointSatisfies(iq, point)) return std::nullopt;
        return point;
    }
    size_t vi = static_cast<size_t>(splitVar);
    long long mid = box.lo[vi] + (box.hi[vi] - box.lo[vi]) / 2;
    VarBox left = box;
    left.hi[vi] = mid;
    if (auto p = findPoint(ineqs, std::move(left))) return p;
    VarBox right = box;
    right.lo[vi] = mid + 1;
    return findPoint(ineqs, std::move(right));
}

namespace {

std::optional<std::vector<long long>> findPointCasesRec(const std::vector<IneqCases>& cases,
                                                        size_t idx, std::vector<LinIneq>& acc,
                                                        const VarBox& box) {
    if (idx == cases.size()) return findPoint(acc, box);
    for (const auto& option : cases[idx].options) {
        size_t before = acc.size();
        acc.insert(acc.end(), option.begin(), option.end());
        if (auto p = findPointCasesRec(cases, idx + 1, acc, box)) return p;
        acc.resize(before);
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<long long>> findPointCases(const std::vector<IneqCases>& cases,
                                                     const VarBox& box) {
    std::vector<LinIneq> acc;
    return findPointCasesRec(cases, 0, acc, box);
}

}  // namespace modex
