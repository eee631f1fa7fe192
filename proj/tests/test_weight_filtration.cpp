#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ssheaf/weight_filtration.hpp"
#include "test_util.hpp"

using namespace ssheaf;

namespace {

/// N e_i = e_{i+1} on the last Jordan block of size k inside dimension d = k.
RatMatrix jordan(std::size_t k) {
    RatMatrix n(k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) n.at(i + 1, i) = Rat(1);
    return n;
}

/// All subspaces obtainable from {0, V, ker N^i, im N^i} by sums and
/// intersections.
std::vector<Subspace> latticeClosure(const RatMatrix& n) {
    std::size_t d = n.rows();
    std::vector<Subspace> set{Subspace::zero(d), Subspace::full(d)};
    auto addUnique = [&](const Subspace& s) {
        for (const auto& t : set)
            if (t == s) return false;
        set.push_back(s);
        return true;
    };
    for (std::size_t i = 1; i <= d; ++i) {
        addUnique(kernel(n.pow(i)));
        addUnique(image(n.pow(i)));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = 0; j < set.size(); ++j) {
                if (addUnique(sum(set[i], set[j]))) changed = true;
                if (addUnique(intersect(set[i], set[j]))) changed = true;
            }
    }
    return set;
}

/// Counts the increasing chains with steps in the closure lattice that pass
/// the weight axioms; records whether the canonical output is among them.
void countAxiomChains(const RatMatrix& n, const std::vector<Subspace>& lattice,
                      std::vector<Subspace>& chain, long level, long maxLevel,
                      std::size_t& found, bool& formulaFound, const Filtration& formula) {
    if (level > maxLevel) {
        if (chain.back().dim() != n.rows()) return;
        Filtration f(n.rows(), -maxLevel, chain);
        if (!satisfiesWeightAxioms(n, f)) return;
        ++found;
        if (f == formula) formulaFound = true;
        return;
    }
    for (const auto& s : lattice) {
        if (!chain.empty() && !s.contains(chain.back())) continue;
        chain.push_back(s);
        countAxiomChains(n, lattice, chain, level + 1, maxLevel, found, formulaFound,
                         formula);
        chain.pop_back();
    }
}

}  // namespace

TEST_CASE("zero operator concentrates in level 0") {
    Filtration f = weightFiltration(RatMatrix(3, 3));
    CHECK(f.at(0) == Subspace::full(3));
    CHECK(f.at(-1) == Subspace::zero(3));
    CHECK(f.jumps() == std::vector<long>{0});
}

TEST_CASE("size-2 Jordan block") {
    Filtration f = weightFiltration(jordan(2));
    CHECK(f.gradedDim(1) == 1);
    CHECK(f.gradedDim(-1) == 1);
    CHECK(f.gradedDim(0) == 0);
    // W_{-1} = im N = span(e2)
    CHECK(f.at(-1) == Subspace::span(2, {{Rat(0), Rat(1)}}));
    CHECK(f.at(-2) == Subspace::zero(2));
    CHECK(f.at(1) == Subspace::full(2));
}

TEST_CASE("size-3 Jordan block") {
    Filtration f = weightFiltration(jordan(3));
    CHECK(f.jumps() == std::vector<long>{-2, 0, 2});
    CHECK(f.gradedDim(2) == 1);
    CHECK(f.gradedDim(0) == 1);
    CHECK(f.gradedDim(-2) == 1);
    CHECK(f.at(-2) == image(jordan(3).pow(2)));
    CHECK(f.at(0) == image(jordan(3)));
    CHECK(f.at(-1) == f.at(-2));
}

TEST_CASE("axioms hold on the formula output for random nilpotents") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dims(1, 5);
        RatMatrix n = testutil::randomNilpotent(rng, dims(rng));
        Filtration f = weightFiltration(n);
        CHECK(satisfiesWeightAxioms(n, f));
        // symmetric graded dimensions
        for (long l = 1; l <= (long)n.rows(); ++l)
            CHECK(f.gradedDim(l) == f.gradedDim(-l));
    }
}

TEST_CASE("uniqueness among lattice chains in dimension <= 3") {
    std::vector<RatMatrix> cases{RatMatrix(1, 1), RatMatrix(2, 2), jordan(2),
                                 RatMatrix(3, 3), jordan(3)};
    {
        // J2 + trivial line
        RatMatrix n(3, 3);
        n.at(1, 0) = Rat(1);
        cases.push_back(n);
    }
    std::mt19937 rng(31);
    for (int i = 0; i < 4; ++i) cases.push_back(testutil::randomNilpotent(rng, 3));

    for (const auto& n : cases) {
        Filtration formula = weightFiltration(n);
        auto lattice = latticeClosure(n);
        std::vector<Subspace> chain;
        std::size_t found = 0;
        bool formulaFound = false;
        long d = (long)n.rows();
        countAxiomChains(n, lattice, chain, -d, d, found, formulaFound, formula);
        CHECK(found == 1);
        CHECK(formulaFound);
    }
}

TEST_CASE("rejects non-nilpotent input") {
    CHECK_THROWS_AS(weightFiltration(RatMatrix::identity(2)), Error);
    RatMatrix m(2, 2);
    m.at(0, 1) = Rat(1);
    m.at(1, 0) = Rat(1);
    CHECK_THROWS_AS(requireNilpotent(m), Error);
}

TEST_CASE("commutation guard") {
    RatMatrix a = jordan(2);
    RatMatrix b(2, 2);
    b.at(0, 1) = Rat(1);
    CHECK_THROWS_AS(requireCommuting({a, b}), Error);
    CHECK_NOTHROW(requireCommuting({a, a}));
}

TEST_CASE("relative weight sequence matches filtration of partial sums") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 20; ++trial) {
        auto family = testutil::randomCommutingFamily(rng, 4, 2);
        auto seq = relativeWeightSequence(family);
        REQUIRE(seq.size() == 2);
        CHECK(seq[0] == weightFiltration(family[0]));
        CHECK(seq[1] == weightFiltration(family[0] + family[1]));
    }
}

TEST_CASE("preimage of a subspace") {
    RatMatrix n = jordan(3);
    // N^{-1}(span(e3)) = span(e2, e3)
    Subspace target = Subspace::span(3, {{Rat(0), Rat(0), Rat(1)}});
    Subspace pre = kernelShift(n, target);
    CHECK(pre == Subspace::span(3, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}}));
    CHECK(kernelShift(n, Subspace::zero(3)) == kernel(n));
    CHECK(kernelShift(n, Subspace::full(3)) == Subspace::full(3));
}

TEST_CASE("graded pieces and vector levels") {
    Filtration f = weightFiltration(jordan(3));
    CHECK(gradedPiece(f, 2).dim() == 1);
    CHECK(gradedPiece(f, 1).dim() == 0);
    CHECK(gradedPiece(f, 0).dim() == 1);
    CHECK(levelOf(f, RatVec{Rat(1), Rat(0), Rat(0)}) == 2);
    CHECK(levelOf(f, RatVec{Rat(0), Rat(1), Rat(0)}) == 0);
    CHECK(levelOf(f, RatVec{Rat(0), Rat(0), Rat(1)}) == -2);
    CHECK(levelOf(f, RatVec{Rat(1), Rat(1), Rat(1)}) == 2);
    CHECK_THROWS_AS(levelOf(f, RatVec(3)), Error);
}
