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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "modex/Oracle.h"
#include "testutil.h"

using namespace modex;
using namespace testutil;

namespace {

// A broken oracle that accepts everything over the colouring vocabulary but
// whose declared structure set is the proper colourings.
class AcceptEverythingColouring : public Oracle {
  public:
    AcceptEverythingColouring()
        : vocab_(colourVocab()), member_(colouringModule(3)) {}
    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure&) override { return Verdict::acceptance(); }
    std::vector<Advice> advices(const PartialStructure&, int) override { return {}; }
    bool contains(const Structure& t) const override { return member_->contains(t); }

  private:
    Vocabulary vocab_;
    std::shared_ptr<ClausalModule> member_;
};

// A broken oracle rejecting the empty expansion of a satisfiable instance.
class RejectsEverythingColouring : public Oracle {
  public:
    RejectsEverythingColouring() : vocab_(colourVocab()), member_(colouringModule(3)) {}
    const Vocabulary& vocabulary() const override { return vocab_; }
    Verdict accept(const PartialStructure& b) override {
        // Reject any non-total partial with a clause falsified by it, even
        // when the partial is still extendable to a proper colouring.
        if (b.isTotal()) return member_->accept(b);
        for (const auto& s : b.partialVocabulary().symbols()) {
            for (const auto& t : b.positive(s.name))
                return Verdict::rejection(
                    Reason{GroundClause({GroundLiteral(s.name, t, false)}), "bad"});
            for (const auto& t : b.negative(s.name))
                return Verdict::rejection(
                    Reason{GroundClause({GroundLiteral(s.name, t, true)}), "bad"});
        }
        return Verdict::rejection(
            Reason{GroundClause({GroundLiteral("R", {0}, true)}), "bad"});
    }
    std::vector<Advice> advices(const PartialStructure&, int) override { return {}; }
    bool contains(const Structure& t) const override { return member_->contains(t); }

  private:
    Vocabulary vocab_;
    std::shared_ptr<ClausalModule> member_;
};

// A broken oracle whose rejection reason cuts a member total.
class OverzealousReason : public Oracle {
  public:
    OverzealousReason() : member_(colouringModule(3)) {}
    const Vocabulary& vocabulary() const override { return member_->vocabulary(); }
    Verdict accept(const PartialStructure& b) override {
        Verdict v = member_->accept(b);
        if (!v.accepted) return v;
        // Occasionally reject a known-good state with a reason that is
        // falsified by it but kills legitimate colourings.
        if (b.truthOfAtom("R", {0}) == Truth::True)
            return Verdict::rejection(
                Reason{GroundClause({GroundLiteral("R", {0}, false)}), "zealous"});
        return v;
    }
    std::vector<Advice> advices(const PartialStructure&, int) override { return {}; }
    bool contains(const Structure& t) const override { return member_->contains(t); }

  private:
    std::shared_ptr<ClausalModule> member_;
};

// An advising oracle emitting an invalid advice (post already satisfied).
class BadAdviser : public Oracle {
  public:
    BadAdviser() : member_(colouringModule(3)) {}
    const Vocabulary& vocabulary() const override { return member_->vocabulary(); }
    Verdict accept(const PartialStructure& b) override { return member_->accept(b); }
    std::vector<Advice> advices(const PartialStructure& b, int) override {
        std::vector<Advice> out;
        if (b.truthOfAtom("R", {0}) == Truth::True)
            out.push_back(Advice{{}, GroundClause({GroundLiteral("R", {0}, true)})});
        return out;
    }
    bool contains(const Structure& t) const override { return member_->contains(t); }

  private:
    std::shared_ptr<ClausalModule> member_;
};

bool hasViolation(const CertifyReport& report, CertifyViolation::Kind kind) {
    return std::any_of(report.violations.begin(), report.violations.end(),
                       [&](const CertifyViolation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("the triangle colouring oracle certifies with zero violations") {
    auto module = colouringModule(3);
    CertifyReport report = certifyOracle(*module, cliqueInstance(3), 2000, 1);
    CHECK(report.ok());
    CHECK(report.memberCount == 6);
    CHECK(report.totalsChecked == 512);
    CHECK(report.partialsProbed == 2000);
}

TEST_CASE("accepting a non-member total is caught") {
    AcceptEverythingColouring oracle;
    CertifyReport report = certifyOracle(oracle, cliqueInstance(3), 100, 1);
    CHECK(!report.ok());
    CHECK(hasViolation(report, CertifyViolation::AcceptedNonMember));
}

TEST_CASE("rejecting a good partial is caught") {
    RejectsEverythingColouring oracle;
    CertifyReport report = certifyOracle(oracle, cliqueInstance(3), 500, 1);
    CHECK(!report.ok());
    CHECK(hasViolation(report, CertifyViolation::RejectedGoodPartial));
}

TEST_CASE("a reason that cuts member totals is caught") {
    OverzealousReason oracle;
    CertifyReport report = certifyOracle(oracle, cliqueInstance(3), 500, 1);
    CHECK(!report.ok());
    CHECK(hasViolation(report, CertifyViolation::ReasonCutsMember));
}

TEST_CASE("invalid advices are caught") {
    BadAdviser oracle;
    CertifyReport report = certifyOracle(oracle, cliqueInstance(3), 500, 1);
    CHECK(!report.ok());
    CHECK(hasViolation(report, CertifyViolation::InvalidAdvice));
}

TEST_CASE("certification refuses oversized enumerations") {
    Vocabulary big;
    for (int i = 0; i < 8; ++i)
        big.add({"X" + std::to_string(i), SymbolKind::Relation, 2});
    AcceptAllOracle oracle(big);
    Structure inst(abcDomain(3), Vocabulary{});
    CHECK_THROWS_AS(certifyOracle(oracle, inst, 10, 1, 1ull << 10), EnumerationTooLarge);
}

TEST_CASE("weak acceptance of doomed partials is permitted") {
    // The colouring oracle accepts partials that can no longer be completed
    // (it only checks falsified clauses); certification must not flag that.
    auto module = colouringModule(3);
    PartialStructure b = emptyExpansion(cliqueInstance(3), colourVocabExpansion());
    // A doomed but clause-consistent partial: vertex a and b both only green.
    b = b.extend(GroundLiteral("R", {0}, false)).extend(GroundLiteral("B", {0}, false));
    b = b.extend(GroundLiteral("R", {1}, false)).extend(GroundLiteral("B", {1}, false));
    CHECK(module->accept(b).accepted);  // weak, allowed
}
