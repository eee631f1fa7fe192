#pragma once

// Shared random generators for property tests: exact nilpotent matrices and
// commuting families, made generic-looking by unipotent conjugation.

#include <random>
#include <vector>

#include "ssheaf/linalg.hpp"

namespace ssheaf::testutil {

inline RatMatrix strictlyUpper(std::mt19937& rng, std::size_t d) {
    std::uniform_int_distribution<int> entry(-2, 2);
    RatMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) m.at(i, j) = Rat(entry(rng));
    return m;
}

inline RatMatrix unipotent(std::mt19937& rng, std::size_t d) {
    std::uniform_int_distribution<int> entry(-2, 2);
    RatMatrix m = RatMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < i; ++j) m.at(i, j) = Rat(entry(rng));
    return m;
}

/// Inverse of I + L with L strictly triangular: the finite Neumann series.
inline RatMatrix inverseUnipotent(const RatMatrix& p) {
    std::size_t d = p.rows();
    RatMatrix l = p - RatMatrix::identity(d);
    RatMatrix inv = RatMatrix::identity(d);
    RatMatrix pw = RatMatrix::identity(d);
    Rat sign(1);
    for (std::size_t k = 1; k <= d; ++k) {
        pw = pw * l;
        sign = -sign;
        inv = inv + sign * pw;
    }
    return inv;
}

inline RatMatrix randomNilpotent(std::mt19937& rng, std::size_t d) {
    RatMatrix p = unipotent(rng, d);
    return p * strictlyUpper(rng, d) * inverseUnipotent(p);
}

/// Commuting nilpotents: polynomials without constant term in one strictly
/// upper-triangular seed, conjugated by a common unipotent.
inline std::vector<RatMatrix> randomCommutingFamily(std::mt19937& rng, std::size_t d,
                                                    std::size_t count) {
    RatMatrix seed = strictlyUpper(rng, d);
    RatMatrix p = unipotent(rng, d);
    RatMatrix pinv = inverseUnipotent(p);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::vector<RatMatrix> out;
    for (std::size_t i = 0; i < count; ++i) {
        RatMatrix n(d, d);
        RatMatrix pw = RatMatrix::identity(d);
        for (std::size_t k = 1; k < d; ++k) {
            pw = pw * seed;
            n = n + Rat(coeff(rng)) * pw;
        }
        out.push_back(p * n * pinv);
    }
    return out;
}

}  // namespace ssheaf::testutil
