#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/linalg.hpp"
#include "ssheaf/weight_filtration.hpp"

namespace ssheaf {

/// Commuting local monodromy germ: a block decomposition of Q^d with one
/// residue eigenvalue vector per block, plus commuting nilpotent logarithms.
/// The monodromy around axis i acts on block alpha as
/// exp(-2 pi i (alpha_i Id + N_i)).
class LocalMonodromy {
  public:
    struct Block {
        RatVec alpha;    // one eigenvalue per boundary axis, each in (-1, 0]
        Subspace space;
    };

    LocalMonodromy(std::size_t dim, std::size_t boundaryCount,
                   std::vector<Block> blocks, std::vector<RatMatrix> nilpotents)
        : dim_(dim), n_(boundaryCount), blocks_(std::move(blocks)),
          nilpotents_(std::move(nilpotents)) {
        validate();
    }

    std::size_t dim() const { return dim_; }
    std::size_t boundaryCount() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    const std::vector<RatMatrix>& nilpotents() const { return nilpotents_; }

    /// Trivial rank-1 system in n boundary variables: alpha = 0, N = 0.
    static LocalMonodromy trivial(std::size_t boundaryCount) {
        Block b{RatVec(boundaryCount, Rat(0)), Subspace::full(1)};
        return LocalMonodromy(1, boundaryCount, {b},
                              std::vector<RatMatrix>(boundaryCount, RatMatrix(1, 1)));
    }

  private:
    void validate() const {
        if (nilpotents_.size() != n_)
            throw Error("InvalidMonodromy", "need one nilpotent per boundary axis");
        std::size_t total = 0;
        Subspace all = Subspace::zero(dim_);
        for (const auto& b : blocks_) {
            if (b.alpha.size() != n_)
                throw Error("InvalidMonodromy", "eigenvalue vector length mismatch");
            for (const auto& a : b.alpha)
                if (a <= Rat(-1) || a > Rat(0))
                    throw Error("InvalidMonodromy",
                                "residue eigenvalue " + a.str() + " outside (-1,0]");
            if (b.space.ambient() != dim_)
                throw Error("InvalidMonodromy", "block ambient mismatch");
            total += b.space.dim();
            all = sum(all, b.space);
        }
        if (total != dim_ || all.dim() != dim_)
            throw Error("InvalidMonodromy", "blocks are not a direct-sum decomposition");
        for (const auto& nmat : nilpotents_) {
            if (nmat.rows() != dim_ || nmat.cols() != dim_)
                throw dimensionMismatch("nilpotent size");
            requireNilpotent(nmat);
            for (const auto& b : blocks_)
                if (!b.space.contains(apply(nmat, b.space)))
                    throw Error("InvalidMonodromy", "nilpotent does not preserve a block");
        }
        requireCommuting(nilpotents_);
    }

    std::size_t dim_;
    std::size_t n_;
    std::vector<Block> blocks_;
    std::vector<RatMatrix> nilpotents_;
};

/// One generator of a prolongation lattice: the symbolic section
/// z^beta exp(sum_i log z_i N_i) v, recorded as the triple (v, beta, twists).
struct Generator {
    RatVec flatVector;
    std::size_t blockIndex;
    RatVec beta;                          // per-axis exponent, beta_i - alpha_i integral
    std::vector<RatMatrix> twistNilpotents;
};

/// Generator frame of the prolongation lattice V_{>a}.
class ProlongedBasis {
  public:
    ProlongedBasis(RatVec window, std::vector<Generator> gens)
        : window_(std::move(window)), gens_(std::move(gens)) {}

    const RatVec& window() const { return window_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t rank() const { return gens_.size(); }

  private:
    RatVec window_;
    std::vector<Generator> gens_;
};

/// Generators of the Deligne-Manin lattice with indices > a: each flat basis
/// vector is shifted by the unique integers putting its exponents in
/// (a_i, a_i + 1].
inline ProlongedBasis deligneBasis(const LocalMonodromy& m, const RatVec& a) {
    if (a.size() != m.boundaryCount())
        throw dimensionMismatch("window length");
    std::vector<Generator> gens;
    for (std::size_t bi = 0; bi < m.blocks().size(); ++bi) {
        const auto& block = m.blocks()[bi];
        for (const auto& v : block.space.basis()) {
            Generator g;
            g.flatVector = v;
            g.blockIndex = bi;
            g.beta.resize(a.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                long long k = (a[i] - block.alpha[i]).floor() + 1;
                g.beta[i] = block.alpha[i] + Rat(k);
            }
            g.twistNilpotents = m.nilpotents();
            gens.push_back(std::move(g));
        }
    }
    return ProlongedBasis(a, std::move(gens));
}

/// Residue eigenvalues of the induced connection along axis i, with
/// multiplicity, sorted ascending.
inline std::vector<Rat> residueSpectrum(const ProlongedBasis& b, std::size_t axis) {
    std::vector<Rat> out;
    for (const auto& g : b.generators()) {
        if (axis >= g.beta.size()) throw dimensionMismatch("axis index");
        out.push_back(g.beta[axis]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// True iff every generator is a single-valued section: continuing around
/// axis i multiplies the twist by exp(2 pi i (beta_i Id + T_i)), which must
/// cancel the flat-section monodromy exp(2 pi i (alpha_i Id + N_i)). Since
/// exp is injective on rationals mod Z and on nilpotents, this is the exact
/// condition beta_i - alpha_i integral and T_i = N_i.
inline bool monodromyConsistency(const ProlongedBasis& b, const LocalMonodromy& m) {
    for (const auto& g : b.generators()) {
        if (g.blockIndex >= m.blocks().size()) return false;
        const auto& block = m.blocks()[g.blockIndex];
        if (!block.space.contains(g.flatVector)) return false;
        if (g.beta.size() != m.boundaryCount()) return false;
        if (g.twistNilpotents.size() != m.boundaryCount()) return false;
        for (std::size_t i = 0; i < m.boundaryCount(); ++i) {
            if (!(g.beta[i] - block.alpha[i]).isInteger()) return false;
            if (g.twistNilpotents[i] != m.nilpotents()[i]) return false;
        }
    }
    return true;
}

}  // namespace ssheaf
