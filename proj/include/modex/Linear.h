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

#ifndef MODEX_LINEAR_H
#define MODEX_LINEAR_H

#include <boost/rational.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modex/Core.h"

namespace modex {

// Exact feasibility of linear constraints over boxed integer variables.
// Rational coefficients are normalized away up front; everything afterwards
// is integer arithmetic, so there is no rounding anywhere.

using Rational = boost::rational<long long>;

enum class RelOp { Le, Ge, Eq, Lt, Gt };

/// sum(coef_i * var_i) <= bound with integer coefficients.
struct LinIneq {
    std::vector<std::pair<long long, int>> terms;  // (coefficient, variable index)
    long long bound = 0;
};

struct VarBox {
    std::vector<long long> lo;
    std::vector<long long> hi;

    size_t size() const { return lo.size(); }
    bool emptyRange() const {
        for (size_t i = 0; i < lo.size(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
};

/// Disjunction of conjunctions of inequalities; a plain constraint has one
/// option, the negation of an equality has two.
struct IneqCases {
    std::vector<std::vector<LinIneq>> options;
};

/// A parsed linear constraint with rational coefficients.
struct LinearConstraint {
    std::vector<std::pair<Rational, int>> terms;
    RelOp op = RelOp::Le;
    Rational rhs = Rational(0);

    /// Canonical integer form of "the constraint holds" over integer points.
    IneqCases asserted() const;
    /// Canonical integer form of "the constraint fails".
    IneqCases negated() const;

    std::string toText(const std::vector<std::string>& varNames) const;
};

/// Parses "2*x + 3*y <= 7" (coefficients may be integers or p/q rationals,
/// '*' optional). Unknown variable names throw UnboundedVariable.
LinearConstraint parseLinearConstraint(const std::string& text,
                                       const std::map<std::string, int>& vars);

long long floorDiv(long long a, long long b);
long long ceilDiv(long long a, long long b);

/// Interval tightening to fixpoint. Returns false when the box empties.
bool tightenBox(const std::vector<LinIneq>& ineqs, VarBox& box);

/// True when the inequality holds for every point of the box.
bool ineqHoldsOverBox(const LinIneq& iq, const VarBox& box);

/// Exact branch-and-bound: an integer point of the box satisfying all
/// inequalities, or nullopt when none exists.
std::optional<std::vector<long long>> findPoint(const std::vector<LinIneq>& ineqs, VarBox box);

/// Same, where each case set contributes one of its options (used to handle
/// negated equalities). Deterministic branch order.
std::optional<std::vector<long long>> findPointCases(const std::vector<IneqCases>& cases,
                                                     const VarBox& box);

bool pointSatisfies(const LinIneq& iq, const std::vector<long long>& point);

}  // namespace modex

#endif  // MODEX_LINEAR_H
