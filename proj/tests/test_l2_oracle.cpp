#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssheaf/l2_oracle.hpp"

using namespace ssheaf;

TEST_CASE("symbolic criterion") {
    CHECK(isIntegrable1d(0, Rat(0)));
    CHECK(isIntegrable1d(-1, Rat(1, 2)));
    CHECK_FALSE(isIntegrable1d(-1, Rat(0)));      // boundary v + a = -1
    CHECK_FALSE(isIntegrable1d(-2, Rat(1, 2)));
    CHECK(isIntegrable1d(2, Rat(-5, 2)));
    CHECK_FALSE(isIntegrable1d(1, Rat(-9, 4)));
}

TEST_CASE("quadrature reproduces the area of the disc of radius 1/2") {
    QuadratureResult r = numericIntegral(0, Rat(0));
    CHECK(r.trend == Trend::Convergent);
    CHECK(std::abs(r.value - M_PI / 4.0) < 1e-6);
}

TEST_CASE("quadrature on a closed-form convergent case") {
    // int_{|z|<1/2} |z|^{-1} dA = 2 pi int_0^{1/2} dr = pi
    QuadratureResult r = numericIntegral(0, Rat(-1, 2));
    CHECK(r.trend == Trend::Convergent);
    CHECK(std::abs(r.value - M_PI) < 1e-4);
}

TEST_CASE("trend detection across the (v, a) grid") {
    std::vector<Rat> weights{Rat(-9, 4), Rat(-3, 2), Rat(-1), Rat(-5, 6),
                             Rat(-1, 2), Rat(0),     Rat(3, 4)};
    for (long long v = -2; v <= 3; ++v)
        for (const auto& a : weights) {
            Trend t = numericIntegral(v, a).trend;
            if (Rat(v) + a == Rat(-1)) {
                CHECK(t == Trend::Indeterminate);
            } else if (isIntegrable1d(v, a)) {
                CHECK(t == Trend::Convergent);
            } else {
                CHECK(t == Trend::Divergent);
            }
        }
}

TEST_CASE("laurent sections: valuations and active generators") {
    LaurentSection f(2);
    CHECK_THROWS_AS(valuation(f, 0), Error);  // zero section
    f.add(0, {2, 1}, Rat(1)).add(0, {3, -1}, Rat(1, 2)).add(1, {0, 0}, Rat(1));
    CHECK(valuation(f, 0) == 0);
    CHECK(valuation(f, 1) == -1);
    CHECK(componentValuation(f, 0, 0) == 2);
    CHECK(componentValuation(f, 0, 1) == -1);
    CHECK(componentValuation(f, 1, 0) == 0);
    CHECK(f.activeGenerators() == std::vector<std::size_t>{0, 1});

    // cancelling a term removes it from the valuation
    f.add(0, {2, 1}, Rat(-1));
    CHECK(componentValuation(f, 0, 0) == 3);
    CHECK_THROWS_AS(valuation(f, 2), Error);  // bad axis
}

TEST_CASE("membership is a conjunction over active generators and axes") {
    // weights: gen 0 has (0, -1/2), gen 1 has (-3/4, 0)
    WeightProfile w({{Rat(0), Rat(-1, 2)}, {Rat(-3, 4), Rat(0)}});

    LaurentSection ok(2);
    ok.add(0, {0, 0}, Rat(1)).add(1, {0, 0}, Rat(2));
    CHECK(membership(ok, w));

    // gen 0 fails on axis 1: v = -1 with weight -1/2
    LaurentSection bad(2);
    bad.add(0, {0, -1}, Rat(1)).add(1, {0, 0}, Rat(2));
    CHECK_FALSE(membership(bad, w));

    // the same term carried only by gen 1 passes: weight 0 on axis 1... but
    // v = -1 against weight 0 still fails; v = 0 against -3/4 passes
    LaurentSection other(2);
    other.add(1, {0, 0}, Rat(1));
    CHECK(membership(other, w));

    // inactive generators are ignored even with violating exponents recorded
    LaurentSection cancelled(2);
    cancelled.add(0, {-5, -5}, Rat(1)).add(0, {-5, -5}, Rat(-1)).add(1, {0, 0}, Rat(1));
    CHECK(membership(cancelled, w));

    LaurentSection unknown(2);
    unknown.add(7, {0, 0}, Rat(1));
    CHECK_THROWS_AS(membership(unknown, w), Error);
}

TEST_CASE("weight profile from a twisted lattice") {
    LocalMonodromy::Block blk{{Rat(-1, 2)}, Subspace::full(1)};
    LocalMonodromy m(1, 1, {blk}, {RatMatrix(1, 1)});
    HodgeFiberData h(0, {{0, 1}}, {0});
    ProlongedBasis b = rLattice(m, h);
    WeightProfile w = WeightProfile::fromLattice(b, TwistSpec({Rat(5)}, 6));
    CHECK(w.generators() == 1);
    CHECK(w.axes() == 1);
    CHECK(w.weight(0, 0) == Rat(-1, 2) - Rat(5, 6));
}

TEST_CASE("bounded positive smooth factors never change the verdict") {
    auto phi = [](const Cplx& z) { return 1.5 + std::cos(std::arg(z)) * 0.5 +
                                          0.3 * std::abs(z); };
    WeightProfile w({{Rat(-1, 2)}, {Rat(-3, 2)}});
    LaurentSection f(1);
    f.add(0, {0}, Rat(1)).add(1, {1}, Rat(1));
    CHECK(smoothTwistInvariance(f, w, phi));

    LaurentSection g(1);
    g.add(0, {-1}, Rat(1));  // divergent component stays divergent
    CHECK(smoothTwistInvariance(g, w, phi));
}

TEST_CASE("two-term sums need every component integrable") {
    WeightProfile w({{Rat(0)}, {Rat(0)}});
    LaurentSection f(1);
    f.add(0, {0}, Rat(1)).add(1, {-1}, Rat(1));
    CHECK_FALSE(membership(f, w));
    LaurentSection g(1);
    g.add(0, {0}, Rat(1)).add(1, {0}, Rat(1));
    CHECK(membership(g, w));
}
