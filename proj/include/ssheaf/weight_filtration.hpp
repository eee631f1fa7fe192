#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/linalg.hpp"

namespace ssheaf {

/// Increasing filtration of Q^n indexed by integer levels. Levels below the
/// stored window are zero, levels above are the full space.
class Filtration {
  public:
    Filtration(std::size_t ambient, long minLevel, std::vector<Subspace> steps)
        : ambient_(ambient), minLevel_(minLevel), steps_(std::move(steps)) {
        for (std::size_t i = 1; i < steps_.size(); ++i)
            if (!steps_[i].contains(steps_[i - 1]))
                throw Error("InvalidFiltration", "not increasing at level " +
                                                     std::to_string(minLevel_ + (long)i));
        if (!steps_.empty() && steps_.back().dim() != ambient_)
            throw Error("InvalidFiltration", "top step is not the full space");
    }

    std::size_t ambient() const { return ambient_; }
    long minLevel() const { return minLevel_; }
    long maxLevel() const { return minLevel_ + (long)steps_.size() - 1; }

    const Subspace& at(long l) const {
        static thread_local Subspace scratch(0);
        if (l < minLevel_) { scratch = Subspace::zero(ambient_); return scratch; }
        if (l > maxLevel()) { scratch = Subspace::full(ambient_); return scratch; }
        return steps_[(std::size_t)(l - minLevel_)];
    }

    std::size_t gradedDim(long l) const { return at(l).dim() - at(l - 1).dim(); }

    /// Levels where the filtration actually jumps.
    std::vector<long> jumps() const {
        std::vector<long> out;
        for (long l = minLevel_; l <= maxLevel(); ++l)
            if (gradedDim(l) > 0) out.push_back(l);
        return out;
    }

    friend bool operator==(const Filtration& a, const Filtration& b) {
        if (a.ambient_ != b.ambient_) return false;
        long lo = std::min(a.minLevel_, b.minLevel_);
        long hi = std::max(a.maxLevel(), b.maxLevel());
        for (long l = lo; l <= hi; ++l)
            if (a.at(l) != b.at(l)) return false;
        return true;
    }
    friend bool operator!=(const Filtration& a, const Filtration& b) { return !(a == b); }

  private:
    std::size_t ambient_;
    long minLevel_;
    std::vector<Subspace> steps_;
};

inline void requireNilpotent(const RatMatrix& n) {
    if (!n.isSquare()) throw dimensionMismatch("nilpotent operator must be square");
    if (!n.pow(n.rows()).isZero())
        throw Error("NotNilpotent", "N^dim != 0");
}

/// Monodromy weight filtration of a nilpotent operator, centered at 0:
/// the unique increasing filtration with N.W_l in W_{l-2} and
/// N^l : Gr_l -> Gr_{-l} an isomorphism. Computed by the closed formula
/// W_l = sum_t ( ker N^{l+1+t} /\ im N^t ).
inline Filtration weightFiltration(const RatMatrix& n) {
    requireNilpotent(n);
    std::size_t d = n.rows();
    std::vector<RatMatrix> powers{RatMatrix::identity(d)};
    for (std::size_t i = 1; i <= d; ++i) powers.push_back(powers.back() * n);

    std::vector<Subspace> kernels, images;  // of N^0 .. N^d
    for (std::size_t i = 0; i <= d; ++i) {
        kernels.push_back(kernel(powers[i]));
        images.push_back(image(powers[i]));
    }

    long dd = (long)d;
    std::vector<Subspace> steps;
    for (long l = -dd; l <= dd; ++l) {
        Subspace w = Subspace::zero(d);
        for (long t = 0; t <= dd; ++t) {
            long kp = l + 1 + t;
            if (kp <= 0) continue;  // ker N^j = 0 for j <= 0
            if (kp > dd) kp = dd;
            w = sum(w, intersect(kernels[(std::size_t)kp], images[(std::size_t)t]));
        }
        steps.push_back(std::move(w));
    }
    return Filtration(d, -dd, std::move(steps));
}

inline Subspace kernelShift(const RatMatrix& m, const Subspace& u);

/// Checks the two defining axioms of the weight filtration exactly.
inline bool satisfiesWeightAxioms(const RatMatrix& n, const Filtration& f) {
    std::size_t d = n.rows();
    long dd = (long)d;
    for (long l = -dd; l <= dd; ++l)
        if (!f.at(l - 2).contains(apply(n, f.at(l)))) return false;
    // N^l : Gr_l -> Gr_{-l} iso, as a rank condition on represented classes.
    for (long l = 1; l <= dd; ++l) {
        RatMatrix nl = n.pow((std::size_t)l);
        if (!f.at(-l).contains(apply(nl, f.at(l)))) return false;
        Subspace pushed = sum(apply(nl, f.at(l)), f.at(-l - 1));
        if (pushed.dim() - f.at(-l - 1).dim() != f.gradedDim(l)) return false;
        if (f.gradedDim(l) != f.gradedDim(-l)) return false;
        // injectivity on Gr_l: nothing in W_l above W_{l-1} may die into W_{-l-1}
        Subspace killed = intersect(f.at(l), kernelShift(nl, f.at(-l - 1)));
        if (sum(killed, f.at(l - 1)) != f.at(l - 1)) return false;
    }
    return true;
}

/// Preimage of a subspace under a linear map: { v : M v in U }.
inline Subspace kernelShift(const RatMatrix& m, const Subspace& u) {
    // v with M v in U  <=>  (c, v) with M v = sum c_i b_i
    std::size_t n = m.cols(), amb = m.rows(), k = u.dim();
    RatMatrix sys(amb, n + k);
    for (std::size_t i = 0; i < amb; ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(i, j) = m.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < amb; ++j) sys.at(j, n + i) = -u.basis()[i][j];
    Subspace sol = kernel(sys);
    std::vector<RatVec> vecs;
    for (const auto& s : sol.basis()) {
        RatVec v(s.begin(), s.begin() + (long)n);
        vecs.push_back(std::move(v));
    }
    return Subspace::span(n, vecs);
}

inline void requireCommuting(const std::vector<RatMatrix>& ns) {
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = i + 1; j < ns.size(); ++j)
            if (ns[i] * ns[j] != ns[j] * ns[i])
                throw Error("NonCommuting", "operators " + std::to_string(i) +
                                                " and " + std::to_string(j));
}

/// W(N_1), W(N_1+N_2), ..., W(N_1+...+N_k) for commuting nilpotents.
inline std::vector<Filtration> relativeWeightSequence(const std::vector<RatMatrix>& ns) {
    if (ns.empty()) throw Error("EmptyInput", "no operators given");
    requireCommuting(ns);
    std::vector<Filtration> out;
    RatMatrix partial = ns[0];
    out.push_back(weightFiltration(partial));
    for (std::size_t i = 1; i < ns.size(); ++i) {
        partial = partial + ns[i];
        out.push_back(weightFiltration(partial));
    }
    return out;
}

/// Deterministic complement representative of W_l / W_{l-1}: the
/// lexicographically first echelon vectors of W_l independent of W_{l-1}.
inline Subspace gradedPiece(const Filtration& f, long l) {
    Subspace lower = f.at(l - 1);
    Subspace current = lower;
    std::vector<RatVec> reps;
    for (const auto& v : f.at(l).basis()) {
        if (current.contains(v)) continue;
        reps.push_back(v);
        std::vector<RatVec> ext = current.basis();
        ext.push_back(v);
        current = Subspace::span(f.ambient(), ext);
    }
    return Subspace::span(f.ambient(), reps);
}

/// Level of v in the filtration: least l with v in W_l. Throws on v = 0.
inline long levelOf(const Filtration& f, const RatVec& v) {
    if (isZeroVec(v)) throw Error("ZeroVector", "level of zero vector undefined");
    for (long l = f.minLevel(); l <= f.maxLevel(); ++l)
        if (f.at(l).contains(v)) return l;
    throw Error("InvalidFiltration", "vector not in top step");
}

}  // namespace ssheaf
