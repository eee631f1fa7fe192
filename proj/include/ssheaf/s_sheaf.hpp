#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/prolongation.hpp"
#include "ssheaf/weight_filtration.hpp"

namespace ssheaf {

/// Limit Hodge data at the boundary point: weight, Hodge numbers, and the
/// flat-basis indices spanning the top Hodge piece S(V).
class HodgeFiberData {
  public:
    HodgeFiberData(long weight, std::map<long, std::size_t> hodgeDims,
                   std::vector<std::size_t> sSelector)
        : weight_(weight), hodgeDims_(std::move(hodgeDims)),
          sSelector_(std::move(sSelector)) {
        if (sSelector_.empty())
            throw Error("EmptySelector", "S(V) is nonzero by definition of p_max");
        pMax_ = hodgeDims_.begin()->first;
        std::size_t total = 0;
        for (auto& [p, d] : hodgeDims_) {
            if (d > 0 && p > pMax_) pMax_ = p;
            total += d;
        }
        totalDim_ = total;
        if (hodgeDims_.count(pMax_) == 0 || hodgeDims_.at(pMax_) == 0)
            throw Error("InvalidHodgeData", "no nonzero Hodge piece");
        if (sSelector_.size() != hodgeDims_.at(pMax_))
            throw Error("InvalidHodgeData",
                        "selector size does not match dim of the top Hodge piece");
    }

    long weight() const { return weight_; }
    long pMax() const { return pMax_; }
    std::size_t totalDim() const { return totalDim_; }
    const std::vector<std::size_t>& sSelector() const { return sSelector_; }

    void validateAgainst(const LocalMonodromy& m) const {
        if (totalDim_ != m.dim())
            throw Error("InvalidHodgeData", "Hodge numbers do not sum to rank");
        for (auto idx : sSelector_) {
            if (idx >= m.dim())
                throw Error("InvalidHodgeData", "selector index out of range");
            findBlockOf(m, idx);
        }
    }

    /// Block containing standard basis vector e_idx; throws if it straddles.
    static std::size_t findBlockOf(const LocalMonodromy& m, std::size_t idx) {
        RatVec e(m.dim());
        e[idx] = Rat(1);
        for (std::size_t b = 0; b < m.blocks().size(); ++b)
            if (m.blocks()[b].space.contains(e)) return b;
        throw Error("BlockStraddle",
                    "selected vector " + std::to_string(idx) +
                        " does not lie in a single monodromy block");
    }

    Subspace selectedSpan(const LocalMonodromy& m) const {
        std::vector<RatVec> vecs;
        for (auto idx : sSelector_) {
            RatVec e(m.dim());
            e[idx] = Rat(1);
            vecs.push_back(std::move(e));
        }
        return Subspace::span(m.dim(), vecs);
    }

  private:
    long weight_;
    std::map<long, std::size_t> hodgeDims_;
    std::vector<std::size_t> sSelector_;
    long pMax_ = 0;
    std::size_t totalDim_ = 0;
};

/// Metric twist by the Q-divisor (1/m) D: weight r_i/m on boundary axis i.
struct TwistSpec {
    RatVec r;        // nonnegative coefficients, one per boundary axis
    long long m = 1;

    TwistSpec(RatVec coeffs, long long denom) : r(std::move(coeffs)), m(denom) {
        if (m < 1) throw Error("InvalidTwist", "m must be positive");
        for (const auto& c : r)
            if (c < Rat(0)) throw Error("InvalidTwist", "negative coefficient");
    }

    static TwistSpec untwisted(std::size_t axes) {
        return TwistSpec(RatVec(axes, Rat(0)), 1);
    }

    Rat weight(std::size_t axis) const { return r.at(axis) / Rat(m); }
};

/// Generator frame of R_X(V) = V_{>-1} /\ j_* S(V): the Deligne basis in the
/// window (-1, 0], restricted to the selected flat vectors.
inline ProlongedBasis rLattice(const LocalMonodromy& m, const HodgeFiberData& h) {
    h.validateAgainst(m);
    RatVec window(m.boundaryCount(), Rat(-1));
    std::vector<Generator> gens;
    for (auto idx : h.sSelector()) {
        std::size_t bi = HodgeFiberData::findBlockOf(m, idx);
        const auto& block = m.blocks()[bi];
        Generator g;
        g.flatVector = RatVec(m.dim());
        g.flatVector[idx] = Rat(1);
        g.blockIndex = bi;
        g.beta.resize(m.boundaryCount());
        for (std::size_t i = 0; i < m.boundaryCount(); ++i) {
            long long k = (window[i] - block.alpha[i]).floor() + 1;
            g.beta[i] = block.alpha[i] + Rat(k);
        }
        g.twistNilpotents = m.nilpotents();
        gens.push_back(std::move(g));
    }
    return ProlongedBasis(window, std::move(gens));
}

/// True iff the S-selector span meets W_{-1}(N_i) trivially for every axis.
/// A false result flags data that cannot come from a genuine polarized limit.
inline bool validateLimitPositivity(const LocalMonodromy& m, const HodgeFiberData& h) {
    h.validateAgainst(m);
    Subspace sel = h.selectedSpan(m);
    for (const auto& nmat : m.nilpotents()) {
        Filtration w = weightFiltration(nmat);
        if (intersect(sel, w.at(-1)).dim() != 0) return false;
    }
    return true;
}

/// Integer exponent shifts of the twisted generators:
/// shift_{j,i} = floor(-beta_{j,i} + r_i/m).
inline std::vector<std::vector<long long>> twistedExponents(const ProlongedBasis& b,
                                                            const TwistSpec& t) {
    for (const auto& w : b.window())
        if (w != Rat(-1))
            throw Error("InvalidWindow", "twisted exponents require the (-1,0] lattice");
    if (t.r.size() != b.window().size()) throw dimensionMismatch("twist axes");
    std::vector<std::vector<long long>> shifts;
    for (const auto& g : b.generators()) {
        std::vector<long long> row;
        for (std::size_t i = 0; i < t.r.size(); ++i)
            row.push_back((t.weight(i) - g.beta[i]).floor());
        shifts.push_back(std::move(row));
    }
    return shifts;
}

struct GeneratorDescription {
    std::size_t index;
    RatVec flatVector;
    RatVec beta;
    std::vector<long long> shifts;
    bool nilpotentTwist;  // whether any twist nilpotent acts nontrivially on v

    std::string render() const {
        std::ostringstream os;
        os << "gen " << index << ":";
        for (std::size_t i = 0; i < beta.size(); ++i) {
            Rat expo = beta[i] + Rat(shifts[i]);
            if (!expo.isZero()) os << " z" << (i + 1) << "^" << expo.str();
        }
        os << " v=[";
        for (std::size_t j = 0; j < flatVector.size(); ++j)
            os << (j ? " " : "") << flatVector[j].str();
        os << "]";
        if (nilpotentTwist) os << " exp(sum_i N_i log z_i)";
        return os.str();
    }
};

/// Lossless, deterministically ordered description of the twisted generators.
inline std::vector<GeneratorDescription> generatorReport(const ProlongedBasis& b,
                                                         const TwistSpec& t) {
    auto shifts = twistedExponents(b, t);
    std::vector<GeneratorDescription> out;
    for (std::size_t j = 0; j < b.generators().size(); ++j) {
        const auto& g = b.generators()[j];
        bool twisted = false;
        for (const auto& nmat : g.twistNilpotents)
            if (!isZeroVec(nmat.apply(g.flatVector))) twisted = true;
        out.push_back({j, g.flatVector, g.beta, shifts[j], twisted});
    }
    return out;
}

}  // namespace ssheaf
