#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ssheaf/cks_models.hpp"

using namespace ssheaf;

TEST_CASE("model catalog") {
    CHECK(models::byId("trivial").rank == 1);
    CHECK(models::byId("tate").rank == 2);
    CHECK(models::byId("tate-half").rank == 2);
    CHECK(models::byId("tate-product").rank == 4);
    CHECK_THROWS_AS(models::byId("nope"), Error);
}

TEST_CASE("tate metric closed-form values") {
    OrbitModel m = models::tate();
    CMat h = metricAt(m, {std::polar(std::exp(-2.0 * M_PI), 0.3)});
    CHECK(h[0][0].real() == doctest::Approx(2.0));
    CHECK(h[1][1].real() == doctest::Approx(0.5));
    CHECK(std::abs(h[0][1]) == 0.0);

    CMat id = metricAt(m, {std::polar(std::exp(-M_PI), 1.0)});
    CHECK(id[0][0].real() == doctest::Approx(1.0));
    CHECK(id[1][1].real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(metricAt(m, {Cplx(0.0)}), Error);
}

TEST_CASE("tate-half shares the flat-frame metric but moves the residue") {
    OrbitModel half = models::tateHalf();
    OrbitModel tate = models::tate();
    CPoint z{std::polar(0.1, 0.2)};
    CHECK(metricAt(half, z)[0][0] == metricAt(tate, z)[0][0]);
    CHECK(half.monodromy.blocks()[0].alpha[0] == Rat(-1, 2));
    CHECK(tate.monodromy.blocks()[0].alpha[0] == Rat(0));
}

TEST_CASE("graded levels of the model frames") {
    OrbitModel tate = models::tate();
    CHECK(gradedLevels(tate, {Rat(1), Rat(0)}) == std::vector<long>{1});
    CHECK(gradedLevels(tate, {Rat(0), Rat(1)}) == std::vector<long>{-1});

    OrbitModel prod = models::tateProduct();
    CHECK(gradedLevels(prod, {Rat(1), Rat(0), Rat(0), Rat(0)}) ==
          std::vector<long>{1, 2});
    CHECK(gradedLevels(prod, {Rat(0), Rat(1), Rat(0), Rat(0)}) ==
          std::vector<long>{1, 0});
    CHECK(gradedLevels(prod, {Rat(0), Rat(0), Rat(0), Rat(1)}) ==
          std::vector<long>{-1, -2});
}

TEST_CASE("norm ratios stay bounded over the sampling region") {
    OrbitModel tate = models::tate();
    RatioScan s = cksRatioScan(tate, {Rat(1), Rat(0)}, 1.0, 2000, 5);
    CHECK(s.minRatio > 0.0);
    CHECK(s.maxRatio / s.minRatio < 10.0);

    OrbitModel prod = models::tateProduct();
    for (std::size_t i = 0; i < 4; ++i) {
        RatVec v(4, Rat(0));
        v[i] = Rat(1);
        RatioScan ps = cksRatioScan(prod, v, 1.0, 2000, 5);
        CHECK(ps.maxRatio / ps.minRatio < 10.0);
    }
}

TEST_CASE("nakano curvature of the tate orbit matches the analytic value") {
    // For S(V) spanned by v1, h = u/pi with u = -log|z|: the curvature form
    // evaluates to h / (4 |z|^2 u^2), strictly positive.
    OrbitModel m = models::tate();
    double r = std::exp(-2.0);
    CPoint z{std::polar(r, 0.4)};
    double u = 2.0;
    double analytic = (u / M_PI) / (4.0 * r * r * u * u);
    double e1 = nakanoFormMinEigenvalue(m, z, 1e-3);
    double e2 = nakanoFormMinEigenvalue(m, z, 5e-4);
    CHECK(std::abs(e1 - analytic) / analytic < 0.01);
    // quadratic finite-difference convergence: halving the step cuts the
    // error by roughly four
    double ratio = std::abs(e1 - analytic) / std::abs(e2 - analytic);
    CHECK(ratio > 2.0);
    CHECK(ratio < 8.0);
}

TEST_CASE("nakano grid check stays nonnegative for the catalog models") {
    std::vector<CPoint> grid;
    for (int i = 0; i < 3; ++i)
        grid.push_back({std::polar(std::exp(-2.0 - 0.5 * i), 0.4)});
    NakanoResult tate = nakanoCheck(models::tate(), grid, 1e-3);
    CHECK(tate.minEigenvalue >= -1e-4);
    NakanoResult triv = nakanoCheck(models::trivial(), grid, 1e-3);
    CHECK(std::abs(triv.minEigenvalue) < 1e-6);
}

TEST_CASE("norm lower bound holds for tate and fails for a decaying fake") {
    auto identityRef = [](const CPoint&) {
        return CMat{{Cplx(1.0), Cplx(0.0)}, {Cplx(0.0), Cplx(1.0)}};
    };
    CHECK(normLowerBoundCheck(models::tate(), identityRef));

    OrbitModel fake = models::tate();
    fake.id = "decaying";
    fake.metric = [](const CPoint& z) {
        double f = std::pow(std::abs(z[0]), 4.0);
        return CMat{{Cplx(f), Cplx(0.0)}, {Cplx(0.0), Cplx(f)}};
    };
    CHECK_FALSE(normLowerBoundCheck(fake, identityRef));
}

TEST_CASE("tameness comparisons") {
    auto identity1 = [](const CPoint&) { return CMat{{Cplx(1.0)}}; };
    auto shrinking = [](const CPoint& z) {
        return CMat{{Cplx(std::norm(z[0]))}};
    };
    std::vector<ScalarField> coord{[](const CPoint& z) { return z[0]; }};

    // equal metrics are tame with constant ~ 1
    TamenessReport same = tamenessCheck(identity1, identity1, coord, Rat(0), 1);
    CHECK(same.tame);
    CHECK(same.constant == doctest::Approx(1.0));

    // 1 / |z|^2 against 1 blows up without a compensating ideal factor
    TamenessReport blowup = tamenessCheck(identity1, shrinking, coord, Rat(0), 1);
    CHECK_FALSE(blowup.tame);

    // the ideal factor |z|^2 (c = 1 with generator z) restores the bound
    TamenessReport fixed = tamenessCheck(identity1, shrinking, coord, Rat(1), 1);
    CHECK(fixed.tame);
    CHECK(fixed.constant <= 1.0 + 1e-9);
}
