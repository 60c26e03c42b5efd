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

#include "modex/Oracle.h"

#include <random>
#include <sstream>

#include "modex/Ground.h"

namespace modex {

const char* toString(CertifyViolation::Kind kind) {
    switch (kind) {
        case CertifyViolation::AcceptedNonMember: return "accepted-non-member";
        case CertifyViolation::RejectedMember: return "rejected-member";
        case CertifyViolation::RejectedGoodPartial: return "rejected-good-partial";
        case CertifyViolation::ReasonCutsMember: return "reason-cuts-member";
        case CertifyViolation::ReasonNotFalsified: return "reason-not-falsified";
        case CertifyViolation::InvalidAdvice: return "invalid-advice";
    }
    return "?";
}

std::string CertifyReport::summary() const {
    std::ostringstream os;
    os << "totals=" << totalsChecked << " members=" << memberCount
       << " partials=" << partialsProbed << " rejections=" << rejections
       << " advices=" << advicesChecked << " violations=" << violations.size();
    return os.str();
}

namespace {

// Clause compiled against the expansion atom indexing: expansion literals as
// positive/negative atom masks, instance literals folded into a constant.
struct MaskClause {
    uint64_t posAtoms = 0;  // satisfied when one of these atoms is true
    uint64_t negAtoms = 0;  // satisfied when one of these atoms is false
    bool constTrue = false;
    bool malformed = false;

    bool holdsFor(uint64_t total) const {
        return constTrue || (total & posAtoms) != 0 || (~total & negAtoms) != 0;
    }
};

struct MaskContext {
    const Structure* instance;
    const GroundAtoms* atoms;

    MaskClause compile(const GroundClause& clause) const {
        MaskClause out;
        for (const auto& l : clause.literals()) {
            int idx = atoms->indexOf(l.symbol, l.args);
            if (idx >= 0) {
                (l.positive ? out.posAtoms : out.negAtoms) |= 1ull << idx;
            } else if (instance->vocabulary().has(l.symbol)) {
                if (instance->holds(l.symbol, l.args) == l.positive) out.constTrue = true;
            } else {
                out.malformed = true;
            }
        }
        return out;
    }

    // Truth of a literal under a (posMask, negMask) partial assignment.
    Truth truthOf(const GroundLiteral& l, uint64_t pos, uint64_t neg) const {
        int idx = atoms->indexOf(l.symbol, l.args);
        bool value;
        if (idx >= 0) {
            uint64_t bit = 1ull << idx;
            if (pos & bit) value = true;
            else if (neg & bit) value = false;
            else return Truth::Unknown;
        } else if (instance->vocabulary().has(l.symbol)) {
            value = instance->holds(l.symbol, l.args);
        } else {
            return Truth::Unknown;
        }
        return value == l.positive ? Truth::True : Truth::False;
    }

    Truth clauseTruth(const GroundClause& c, uint64_t pos, uint64_t neg) const {
        bool unknown = false;
        for (const auto& l : c.literals()) {
            Truth t = truthOf(l, pos, neg);
            if (t == Truth::True) return Truth::True;
            if (t == Truth::Unknown) unknown = true;
        }
        return unknown ? Truth::Unknown : Truth::False;
    }
};

// Checks one rejection's reason against the rejected assignment and the
// member totals; appends violations.
void checkReason(const Reason& reason, uint64_t pos, uint64_t neg, const MaskContext& ctx,
                 const std::vector<uint64_t>& memberMasks, const Domain& dom,
                 CertifyReport& report) {
    if (ctx.clauseTruth(reason.clause, pos, neg) != Truth::False) {
        report.violations.push_back(
            {CertifyViolation::ReasonNotFalsified, toString(reason.clause, dom)});
        return;
    }
    MaskClause mc = ctx.compile(reason.clause);
    if (mc.malformed) {
        report.violations.push_back(
            {CertifyViolation::ReasonNotFalsified,
             "reason outside the module vocabulary: " + toString(reason.clause, dom)});
        return;
    }
    for (uint64_t m : memberMasks) {
        if (!mc.holdsFor(m)) {
            report.violations.push_back(
                {CertifyViolation::ReasonCutsMember, toString(reason.clause, dom)});
            break;
        }
    }
}

void checkAdvices(Oracle& oracle, const PartialStructure& b, uint64_t pos, uint64_t neg,
                  const MaskContext& ctx, const std::vector<uint64_t>& memberMasks,
                  const Domain& dom, CertifyReport& report) {
    for (const auto& advice : oracle.advices(b, 16)) {
        ++report.advicesChecked;
        bool ok = true;
        for (const auto& p : advice.pre)
            if (ctx.truthOf(p, pos, neg) != Truth::True) ok = false;
        if (ok && ctx.clauseTruth(advice.post, pos, neg) != Truth::Unknown) ok = false;
        if (ok) {
            MaskClause mc = ctx.compile(adviceToClause(advice));
            if (mc.malformed) ok = false;
            for (uint64_t m : memberMasks) {
                if (!ok) break;
                if (!mc.holdsFor(m)) ok = false;
            }
        }
        if (!ok) {
            report.violations.push_back(
                {CertifyViolation::InvalidAdvice, toString(adviceToClause(advice), dom)});
        }
    }
}

}  // namespace

CertifyReport certifyOracle(Oracle& oracle, const Structure& instance, int maxProbes,
                            uint64_t seed, uint64_t maxTotals) {
    const Vocabulary& vocab = oracle.vocabulary();
    if (!instance.vocabulary().isSubsetOf(vocab))
        throw ModexError("instance vocabulary is not part of the module vocabulary");
    Vocabulary expansion;
    for (const auto& s : vocab.symbols())
        if (!instance.vocabulary().has(s.name)) expansion.add(s);

    const Domain& dom = instance.domain();
    GroundAtoms atoms(expansion, dom);
    if (atoms.count() > 62 || (1ull << atoms.count()) > maxTotals)
        throw EnumerationTooLarge("too many total expansions to certify against");
    const uint64_t totalCount = 1ull << atoms.count();
    const uint64_t fullMask = totalCount - 1;
    MaskContext ctx{&instance, &atoms};

    CertifyReport report;

    // Pass 1: membership of every total, via the independent route.
    std::vector<uint64_t> memberMasks;
    std::vector<bool> isMember(totalCount, false);
    for (uint64_t mask = 0; mask < totalCount; ++mask) {
        if (oracle.contains(buildTotal(instance, expansion, atoms, mask))) {
            memberMasks.push_back(mask);
            isMember[mask] = true;
        }
    }
    report.memberCount = memberMasks.size();

    // Pass 2: the oracle's verdict on every total must match membership.
    for (uint64_t mask = 0; mask < totalCount; ++mask) {
        PartialStructure total = buildPartial(instance, expansion, atoms, mask, ~mask & fullMask);
        Verdict v = oracle.accept(total);
        ++report.totalsChecked;
        if (v.accepted && !isMember[mask]) {
            report.violations.push_back(
                {CertifyViolation::AcceptedNonMember, "mask=" + std::to_string(mask)});
        } else if (!v.accepted) {
            ++report.rejections;
            if (isMember[mask]) {
                report.violations.push_back(
                    {CertifyViolation::RejectedMember, "mask=" + std::to_string(mask)});
            }
            checkReason(v.reason, mask, ~mask & fullMask, ctx, memberMasks, dom, report);
        }
        if (report.violations.size() > 32) return report;  // enough evidence
    }

    // Pass 3: random partial structures. A rejection of a partial that some
    // member extends breaks validity; advices must satisfy all three advice
    // conditions against the member totals.
    std::mt19937_64 rng(seed);
    for (int probe = 0; probe < maxProbes; ++probe) {
        uint64_t posMask = 0;
        uint64_t negMask = 0;
        for (int a = 0; a < atoms.count(); ++a) {
            switch (rng() % 3) {
                case 0: posMask |= 1ull << a; break;
                case 1: negMask |= 1ull << a; break;
                default: break;
            }
        }
        PartialStructure b = buildPartial(instance, expansion, atoms, posMask, negMask);
        ++report.partialsProbed;

        Verdict v = oracle.accept(b);
        if (!v.accepted) {
            ++report.rejections;
            bool good = false;
            for (uint64_t m : memberMasks) {
                if (maskExtends(m, posMask, negMask)) {
                    good = true;
                    break;
                }
            }
            if (good) {
                report.violations.push_back(
                    {CertifyViolation::RejectedGoodPartial,
                     "pos=" + std::to_string(posMask) + " neg=" + std::to_string(negMask)});
            }
            checkReason(v.reason, posMask, negMask, ctx, memberMasks, dom, report);
        }
        checkAdvices(oracle, b, posMask, negMask, ctx, memberMasks, dom, report);
        if (report.violations.size() > 32) break;  // enough evidence
    }

    return report;
}

}  // namespace modex
