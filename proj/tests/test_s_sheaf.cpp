#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ssheaf/l2_oracle.hpp"
#include "ssheaf/s_sheaf.hpp"

using namespace ssheaf;

namespace {

/// Rank-1 germ with the given residue eigenvalue on one axis.
LocalMonodromy rankOne(const Rat& alpha) {
    LocalMonodromy::Block b{{alpha}, Subspace::full(1)};
    return LocalMonodromy(1, 1, {b}, {RatMatrix(1, 1)});
}

HodgeFiberData rankOneHodge() { return HodgeFiberData(0, {{0, 1}}, {0}); }

/// Shift of a single generator with exponent beta under twist weight r/m.
long long shiftOf(const Rat& beta, const Rat& rm) {
    LocalMonodromy m = rankOne(beta);
    ProlongedBasis b = rLattice(m, rankOneHodge());
    return twistedExponents(b, TwistSpec({rm}, 1))[0][0];
}

}  // namespace

TEST_CASE("hodge fiber data validation") {
    CHECK_THROWS_AS(HodgeFiberData(0, {{0, 1}}, {}), Error);          // empty selector
    CHECK_THROWS_AS(HodgeFiberData(1, {{1, 2}, {0, 1}}, {0}), Error); // selector size
    HodgeFiberData h(1, {{1, 1}, {0, 1}}, {0});
    CHECK(h.pMax() == 1);
    CHECK(h.totalDim() == 2);
    CHECK_THROWS_AS(h.validateAgainst(rankOne(Rat(0))), Error);  // rank mismatch
}

TEST_CASE("selector vectors must sit inside single blocks") {
    LocalMonodromy::Block b0{{Rat(0)}, Subspace::span(2, {{Rat(1), Rat(1)}})};
    LocalMonodromy::Block b1{{Rat(-1, 2)}, Subspace::span(2, {{Rat(1), Rat(-1)}})};
    LocalMonodromy m(2, 1, {b0, b1}, {RatMatrix(2, 2)});
    HodgeFiberData h(1, {{1, 1}, {0, 1}}, {0});
    CHECK_THROWS_AS(h.validateAgainst(m), Error);  // e1 straddles both blocks
}

TEST_CASE("twist spec validation") {
    CHECK_THROWS_AS(TwistSpec({Rat(1)}, 0), Error);
    CHECK_THROWS_AS(TwistSpec({Rat(-1)}, 2), Error);
    TwistSpec t({Rat(5)}, 6);
    CHECK(t.weight(0) == Rat(5, 6));
    CHECK(TwistSpec::untwisted(2).weight(1) == Rat(0));
}

TEST_CASE("floor formula against the 1d integrability oracle, exhaustively") {
    // The twisted generator z^{beta + k} g is the minimal lattice member, so
    // k must be the least integer making z^k L^2 against the weight
    // beta - r/m: the least k with k + (beta - r/m) > -1.
    std::vector<Rat> betas;
    for (int b = 0; b > -12; --b) betas.push_back(Rat(b, 12));
    std::vector<Rat> weights;
    for (int r = 0; r <= 30; ++r) weights.push_back(Rat(r, 10));
    for (const auto& beta : betas)
        for (const auto& rm : weights) {
            long long k = shiftOf(beta, rm);
            CHECK(isIntegrable1d(k, beta - rm));
            CHECK_FALSE(isIntegrable1d(k - 1, beta - rm));
        }
}

TEST_CASE("shifts are monotone in the twist and vanish untwisted") {
    for (int b = 0; b > -6; --b) {
        Rat beta(b, 6);
        CHECK(shiftOf(beta, Rat(0)) == 0);  // untwisted specialization
        long long prev = shiftOf(beta, Rat(0));
        for (int r = 1; r <= 18; ++r) {
            long long cur = shiftOf(beta, Rat(r, 6));
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("worked example: exponents 0 and -1/2 under twist 5/6") {
    LocalMonodromy::Block b0{{Rat(0)}, Subspace::span(2, {{Rat(1), Rat(0)}})};
    LocalMonodromy::Block b1{{Rat(-1, 2)}, Subspace::span(2, {{Rat(0), Rat(1)}})};
    LocalMonodromy m(2, 1, {b0, b1}, {RatMatrix(2, 2)});
    HodgeFiberData h(0, {{0, 2}}, {0, 1});
    ProlongedBasis b = rLattice(m, h);
    auto shifts = twistedExponents(b, TwistSpec({Rat(5)}, 6));
    REQUIRE(shifts.size() == 2);
    CHECK(shifts[0] == std::vector<long long>{0});
    CHECK(shifts[1] == std::vector<long long>{1});

    auto report = generatorReport(b, TwistSpec({Rat(5)}, 6));
    CHECK(report[0].render() == "gen 0: v=[1 0]");
    CHECK(report[1].render() == "gen 1: z1^1/2 v=[0 1]");
}

TEST_CASE("twisted exponents require the (-1, 0] lattice") {
    LocalMonodromy m = rankOne(Rat(0));
    ProlongedBasis shifted = deligneBasis(m, {Rat(0)});
    CHECK_THROWS_AS(twistedExponents(shifted, TwistSpec({Rat(1)}, 2)), Error);
}

TEST_CASE("limit positivity flags selectors meeting im N") {
    RatMatrix n(2, 2);
    n.at(1, 0) = Rat(1);  // im N = span(e2) = W_{-1}
    LocalMonodromy::Block blk{{Rat(0)}, Subspace::full(2)};
    LocalMonodromy m(2, 1, {blk}, {n});
    CHECK(validateLimitPositivity(m, HodgeFiberData(1, {{1, 1}, {0, 1}}, {0})));
    CHECK_FALSE(validateLimitPositivity(m, HodgeFiberData(1, {{1, 1}, {0, 1}}, {1})));

    // N = 0: W_{-1} = 0, every selector passes
    LocalMonodromy flat(2, 1, {blk}, {RatMatrix(2, 2)});
    CHECK(validateLimitPositivity(flat, HodgeFiberData(1, {{1, 1}, {0, 1}}, {1})));
}
