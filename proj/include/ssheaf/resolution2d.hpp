#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/rational.hpp"

namespace ssheaf {

/// Catalog plane-curve germ at the origin of a surface chart.
struct PlaneCurveGerm {
    enum class Kind { AxisZ, AxisW, Smooth, Cusp };

    Kind kind;
    long long p = 0, q = 0;     // cusp z^p = w^q, gcd(p, q) = 1, p, q >= 2
    Rat smoothSlope;            // smooth germ z = c w, c != 0

    static PlaneCurveGerm axisZ() { return {Kind::AxisZ}; }
    static PlaneCurveGerm axisW() { return {Kind::AxisW}; }
    static PlaneCurveGerm smooth(const Rat& c) {
        if (c.isZero()) throw Error("UnsupportedGerm", "smooth germ needs c != 0");
        return {Kind::Smooth, 0, 0, c};
    }
    static PlaneCurveGerm cusp(long long p, long long q) {
        if (p < 2 || q < 2 || std::gcd(p, q) != 1)
            throw Error("UnsupportedGerm", "cusp requires coprime p, q >= 2");
        return {Kind::Cusp, p, q};
    }

    std::string name() const {
        switch (kind) {
            case Kind::AxisZ: return "axis-z";
            case Kind::AxisW: return "axis-w";
            case Kind::Smooth: return "smooth c=" + smoothSlope.str();
            case Kind::Cusp:
                return "cusp " + std::to_string(p) + " " + std::to_string(q);
        }
        return "?";
    }

    friend bool operator==(const PlaneCurveGerm& a, const PlaneCurveGerm& b) {
        return a.kind == b.kind && a.p == b.p && a.q == b.q &&
               a.smoothSlope == b.smoothSlope;
    }
};

/// Effective Q-divisor germ: catalog curves with nonnegative coefficients.
struct QDivisorGerm {
    std::vector<std::pair<PlaneCurveGerm, Rat>> components;

    void add(const PlaneCurveGerm& c, const Rat& coeff) {
        if (coeff < Rat(0)) throw Error("UnsupportedGerm", "negative coefficient");
        components.push_back({c, coeff});
    }
};

/// One exceptional divisor of an iterated point-blowup sequence. Every
/// catalog center is a torus-fixed point, so the divisor carries a monomial
/// valuation ord_E(z^i w^j) = i vz + j vw, and a(E) = vz + vw - 1.
struct ExcDivisor {
    long long vz = 1, vw = 1;
    std::vector<std::size_t> parents;  // exceptional divisors through the center
    long long centerMult = 0;          // mult of the resolved curve's strict transform

    long long discrepancy() const { return vz + vw - 1; }
    long long ordMonomial(long long i, long long j) const { return i * vz + j * vw; }
};

inline long long ordExc(const ExcDivisor& e, const PlaneCurveGerm& c) {
    switch (c.kind) {
        case PlaneCurveGerm::Kind::AxisZ: return e.vz;
        case PlaneCurveGerm::Kind::AxisW: return e.vw;
        case PlaneCurveGerm::Kind::Smooth: return std::min(e.vz, e.vw);
        case PlaneCurveGerm::Kind::Cusp: return std::min(c.p * e.vz, c.q * e.vw);
    }
    return 0;
}

/// Order of a monomial along the strict transform of a catalog curve.
inline long long ordStrict(const PlaneCurveGerm& c, long long i, long long j) {
    switch (c.kind) {
        case PlaneCurveGerm::Kind::AxisZ: return i;
        case PlaneCurveGerm::Kind::AxisW: return j;
        default: return 0;  // non-monomial curves never divide a monomial
    }
}

class BlowupSequence {
  public:
    const std::vector<ExcDivisor>& divisors() const { return divs_; }
    bool empty() const { return divs_.empty(); }
    std::size_t size() const { return divs_.size(); }

    /// Adds one blowup at the intersection of two rays (exceptional divisors
    /// or an axis of the ambient chart). The rays must span a smooth corner.
    BlowupSequence withExtraBlowup(long long rayVz1, long long rayVw1,
                                   long long rayVz2, long long rayVw2) const {
        long long det = rayVz1 * rayVw2 - rayVw1 * rayVz2;
        if (det != 1 && det != -1)
            throw Error("InvalidCenter", "rays do not span a smooth corner");
        BlowupSequence out = *this;
        ExcDivisor e;
        e.vz = rayVz1 + rayVz2;
        e.vw = rayVw1 + rayVw2;
        for (std::size_t i = 0; i < divs_.size(); ++i)
            if ((divs_[i].vz == rayVz1 && divs_[i].vw == rayVw1) ||
                (divs_[i].vz == rayVz2 && divs_[i].vw == rayVw2))
                e.parents.push_back(i);
        out.divs_.push_back(e);
        return out;
    }

    friend BlowupSequence logResolve(const QDivisorGerm& a);

  private:
    std::vector<ExcDivisor> divs_;
};

namespace detail {

/// Stern-Brocot walk from (1,1) to the cusp valuation (q, p), recording the
/// chain of infinitely-near points with their strict-transform multiplicity
/// ledger (the Euclidean remainder sequence of (p, q)).
inline std::vector<ExcDivisor> resolveCusp(long long p, long long q) {
    long long tz = q, tw = p;  // final divisor has ord(z) = q, ord(w) = p
    long long lz = 1, lw = 0, rz = 0, rw = 1;
    long long a = p, b = q;  // multiplicity ledger state
    std::vector<ExcDivisor> out;
    long long cz = 1, cw = 1;
    while (true) {
        ExcDivisor e;
        e.vz = cz;
        e.vw = cw;
        // exceptional parents = previously created divisors among the corner rays
        for (std::size_t i = 0; i < out.size(); ++i)
            if ((out[i].vz == lz && out[i].vw == lw) ||
                (out[i].vz == rz && out[i].vw == rw))
                e.parents.push_back(i);
        e.centerMult = std::min(a, b);
        if (a < b) b -= a; else a -= b;
        out.push_back(e);
        if (cz == tz && cw == tw) break;
        if (tz * cw - tw * cz > 0) { rz = cz; rw = cw; }
        else { lz = cz; lw = cw; }
        cz = lz + rz;
        cw = lw + rw;
    }
    // ledger consistency: the multiplicity recursion must reproduce the
    // monomial valuation of the total transform at every node
    PlaneCurveGerm c = PlaneCurveGerm::cusp(p, q);
    for (std::size_t i = 0; i < out.size(); ++i) {
        long long viaLedger = out[i].centerMult;
        for (auto par : out[i].parents) viaLedger += ordExc(out[par], c);
        if (viaLedger != ordExc(out[i], c))
            throw Error("InternalError", "multiplicity ledger inconsistent");
    }
    if (out.back().centerMult != 1 || (a + b) != 1)
        throw Error("InternalError", "cusp strict transform not resolved");
    return out;
}

/// True when the listed germs already form a simple normal crossing
/// configuration at the origin: at most two smooth branches with distinct
/// tangent lines.
inline bool isSncConfiguration(const QDivisorGerm& a) {
    std::vector<const PlaneCurveGerm*> curves;
    for (const auto& [germ, coeff] : a.components) {
        if (germ.kind == PlaneCurveGerm::Kind::Cusp) return false;
        curves.push_back(&germ);
    }
    if (curves.size() > 2) return false;
    if (curves.size() == 2 && *curves[0] == *curves[1]) return false;
    if (curves.size() == 2) {
        // tangent lines must differ; axis-z is z=0, axis-w is w=0, smooth is z=cw
        auto tangentEqual = [](const PlaneCurveGerm& x, const PlaneCurveGerm& y) {
            if (x.kind == y.kind && x.kind != PlaneCurveGerm::Kind::Smooth) return true;
            if (x.kind == PlaneCurveGerm::Kind::Smooth &&
                y.kind == PlaneCurveGerm::Kind::Smooth)
                return x.smoothSlope == y.smoothSlope;
            return false;
        };
        if (tangentEqual(*curves[0], *curves[1])) return false;
    }
    return true;
}

}  // namespace detail

/// Blowup sequence making the total transform of supp(A) plus the
/// exceptional set simple normal crossing. SNC catalog input needs none;
/// a cusp is resolved by its standard chain; anything else is rejected.
inline BlowupSequence logResolve(const QDivisorGerm& a) {
    std::size_t cusps = 0;
    for (const auto& [germ, coeff] : a.components)
        if (germ.kind == PlaneCurveGerm::Kind::Cusp) ++cusps;
    if (cusps == 0) {
        if (!detail::isSncConfiguration(a))
            throw Error("UnsupportedGerm",
                        "configuration outside the catalog (not SNC, no cusp)");
        return BlowupSequence();
    }
    if (cusps > 1 || a.components.size() != 1)
        throw Error("UnsupportedGerm", "a cusp must be the only component");
    const auto& c = a.components[0].first;
    BlowupSequence s;
    s.divs_ = detail::resolveCusp(c.p, c.q);
    return s;
}

/// One valuation condition ord(f) >= bound cutting out the pushed-forward
/// ideal; exceptional conditions read ord on monomials via (vz, vw).
struct ValuationCondition {
    bool exceptional;
    long long vz = 0, vw = 0;        // when exceptional
    PlaneCurveGerm curve;            // when a strict-transform component
    long long bound = 0;

    bool passes(long long i, long long j) const {
        long long o = exceptional ? i * vz + j * vw : ordStrict(curve, i, j);
        return o >= bound;
    }
};

struct MembershipTable {
    long long degreeBound;
    std::vector<std::pair<long long, long long>> members;  // monomials z^i w^j

    bool contains(long long i, long long j) const {
        return std::find(members.begin(), members.end(), std::make_pair(i, j)) !=
               members.end();
    }
    bool isUnitIdeal() const { return contains(0, 0); }

    friend bool operator==(const MembershipTable& a, const MembershipTable& b) {
        return a.degreeBound == b.degreeBound && a.members == b.members;
    }
    friend bool operator!=(const MembershipTable& a, const MembershipTable& b) {
        return !(a == b);
    }
};

struct PushforwardIdeal {
    std::vector<ValuationCondition> conditions;
    MembershipTable table;
};

/// Condition set and monomial membership table of pi_*(omega(-floor(pi^* A)))
/// modulo the omega factor: ord_E(f) >= floor(ord_E(pi^* A)) - a(E) for each
/// exceptional E, and ord_C(f) >= floor(coeff_C) on strict components.
inline PushforwardIdeal pushforwardIdeal(const BlowupSequence& s, const QDivisorGerm& a,
                                         long long degreeBound) {
    PushforwardIdeal out;
    for (const auto& e : s.divisors()) {
        Rat total(0);
        for (const auto& [germ, coeff] : a.components)
            total += coeff * Rat(ordExc(e, germ));
        ValuationCondition cond;
        cond.exceptional = true;
        cond.vz = e.vz;
        cond.vw = e.vw;
        cond.bound = total.floor() - e.discrepancy();
        out.conditions.push_back(cond);
    }
    for (const auto& [germ, coeff] : a.components) {
        ValuationCondition cond;
        cond.exceptional = false;
        cond.curve = germ;
        cond.bound = coeff.floor();
        out.conditions.push_back(cond);
    }
    out.table.degreeBound = degreeBound;
    for (long long i = 0; i <= degreeBound; ++i)
        for (long long j = 0; i + j <= degreeBound; ++j) {
            bool ok = true;
            for (const auto& cond : out.conditions) ok = ok && cond.passes(i, j);
            if (ok) out.table.members.push_back({i, j});
        }
    return out;
}

inline bool resolutionIndependence(const QDivisorGerm& a, const BlowupSequence& s1,
                                   const BlowupSequence& s2, long long degreeBound) {
    return pushforwardIdeal(s1, a, degreeBound).table ==
           pushforwardIdeal(s2, a, degreeBound).table;
}

struct JumpScan {
    std::vector<std::pair<Rat, MembershipTable>> tables;
    std::vector<Rat> jumps;  // grid values where the table changed
};

/// Evaluates the membership table of c * curve across a coefficient grid and
/// reports where the floor discontinuities move it.
inline JumpScan jumpingScan(const PlaneCurveGerm& curve, const std::vector<Rat>& grid,
                            long long degreeBound) {
    JumpScan out;
    for (const auto& c : grid) {
        QDivisorGerm a;
        a.add(curve, c);
        auto ideal = pushforwardIdeal(logResolve(a), a, degreeBound);
        if (!out.tables.empty() && ideal.table != out.tables.back().second)
            out.jumps.push_back(c);
        out.tables.push_back({c, ideal.table});
    }
    return out;
}

}  // namespace ssheaf
