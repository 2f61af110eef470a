#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "cdl/grid.hpp"
#include "cdl/random_gen.hpp"

using namespace cdl;

TEST_CASE("sampling and evaluation") {
    ConvexBody seg = ConvexBody::box({1.0});
    RadialFunction abs1 = make_radial(seg, profile_norm());
    GridSpec spec = GridSpec::cube(1, 8.0, 1.0 / 64.0);
    GridFunction g = sample(abs1, spec);
    CHECK(g.spec.total_points() == 1025);
    CHECK(g.interpolate({0.5}) == doctest::Approx(0.5));
    CHECK(g.interpolate({0.5078125}) == doctest::Approx(0.5078125));
    CHECK(g.interpolate({9.0}) == std::numeric_limits<double>::infinity());

    GridFunction gauss = sample_gaussian(GridSpec::cube(2, 6.0, 0.25));
    CHECK(gauss.interpolate({0.0, 0.0}) == 0.0);

    // infinity marker respected
    GridFunction gi = sample(make_radial(seg, profile_indicator(1.0)), spec);
    CHECK(gi.interpolate({1.5}) == std::numeric_limits<double>::infinity());
    CHECK(gi.interpolate({0.25}) == 0.0);
}

TEST_CASE("discrete convexity validator") {
    GridFunction g = sample_gaussian(GridSpec::cube(2, 4.0, 0.25));
    CHECK(discrete_convexity_violation(g) <= 1e-9);
    g.values[g.values.size() / 2 + 3] -= 0.5;  // dent it
    CHECK(discrete_convexity_violation(g) > 1.0);
}

TEST_CASE("grid integrals") {
    GridSpec spec = GridSpec::cube(1, 8.0, 1.0 / 64.0);
    ConvexBody seg = ConvexBody::box({1.0});
    GridFunction g = sample(make_radial(seg, profile_norm()), spec);
    CHECK(integral_grid(g) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(integral_grid(g, 2.0) == doctest::Approx(1.0).epsilon(1e-3));

    GridFunction gauss = sample_gaussian(GridSpec::cube(2, 8.0, 1.0 / 16.0));
    CHECK(integral_grid(gauss) == doctest::Approx(2 * std::numbers::pi).epsilon(1e-4));

    // leakage: a too-small window must throw
    GridFunction tight = sample(make_radial(seg, profile_norm()),
                                GridSpec::cube(1, 2.0, 1.0 / 16.0));
    CHECK(tight.truncation_warning);
    CHECK_THROWS_AS(integral_grid(tight), std::domain_error);
}

TEST_CASE("discrete legendre in 1-D and 2-D") {
    ConvexBody seg = ConvexBody::box({1.0});
    GridSpec spec = GridSpec::cube(1, 8.0, 1.0 / 64.0);
    GridFunction g = sample(make_radial(seg, profile_norm()), spec);
    GridFunction conj = transform_grid(g, TransformKind::Legendre, 1.0, &spec);
    // conjugate of |x| is the indicator of [-1, 1]
    CHECK(conj.interpolate({0.0}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(conj.interpolate({0.75}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(conj.interpolate({2.0}) >= 7.0);  // truncated conjugate grows fast

    // 2-D: conjugate of euclidean norm vanishes on the unit ball
    GridSpec spec2 = GridSpec::cube(2, 4.0, 1.0 / 32.0);
    GridFunction g2 = sample(make_radial(ConvexBody::ball(2, 1.0), profile_norm()), spec2);
    GridFunction conj2 = transform_grid(g2, TransformKind::Legendre, 1.0, &spec2);
    CHECK(conj2.interpolate({0.5, 0.5}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(conj2.interpolate({0.96875, 0.0}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(conj2.interpolate({2.0, 2.0}) > 1.0);
}

TEST_CASE("discrete polarity matches the polar body") {
    // A_1 of the sampled sup-norm indicator: cross-polytope indicator.
    GridSpec spec = GridSpec::cube(2, 2.0, 1.0 / 32.0);
    ConvexBody box2 = ConvexBody::box({1.0, 1.0});
    GridFunction g = sample(make_radial(box2, profile_indicator(1.0)), spec);
    GridFunction a = transform_grid(g, TransformKind::Polarity, 1.0, &spec);
    CHECK(a.interpolate({0.25, 0.25}) == doctest::Approx(0.0));
    CHECK(!std::isfinite(a.interpolate({0.8, 0.8})));
    CHECK(a.interpolate({0.0, 0.96875}) == doctest::Approx(0.0));

    // alpha scales values
    GridFunction a2 = transform_grid(sample(make_radial(box2, profile_norm()), spec),
                                     TransformKind::Polarity, 2.0, &spec);
    GridFunction a1 = transform_grid(sample(make_radial(box2, profile_norm()), spec),
                                     TransformKind::Polarity, 1.0, &spec);
    for (double y : {0.25, 0.5, 0.75})
        CHECK(a2.interpolate({y, 0.0}) == doctest::Approx(2 * a1.interpolate({y, 0.0})));
}

TEST_CASE("gauge transform via the epigraph map") {
    GridSpec spec = GridSpec::cube(2, 2.0, 1.0 / 32.0);
    GridFunction g = sample(make_radial(ConvexBody::ball(2, 1.0), profile_indicator(1.0)),
                            spec);
    GridFunction j = transform_grid(g, TransformKind::GaugeJ, 1.0, &spec);
    // J of the ball indicator is the euclidean norm (2h tolerance).
    for (double r : {0.25, 0.5, 1.0, 1.5}) {
        CHECK(j.interpolate({r, 0.0}) == doctest::Approx(r).epsilon(0.1));
        double d = r / std::sqrt(2.0);
        CHECK(j.interpolate({d, d}) == doctest::Approx(r).epsilon(0.1));
    }
}

TEST_CASE("level inclusion checker") {
    GridSpec spec = GridSpec::cube(2, 2.0, 1.0 / 16.0);
    GridFunction g = sample(make_radial(ConvexBody::box({1.0, 1.0}), profile_indicator(1.0)),
                            spec);
    InclusionCheck ok = level_inclusion_check(g, 1.0, 1.0, 1.0);
    CHECK(ok.ok);
    CHECK(ok.worst_slack <= 0.0);
    InclusionCheck bad = level_inclusion_check(g, 1.0, 1.0, 0.0625, 0.9);
    CHECK(!bad.ok);
}

TEST_CASE("binary and csv round trips") {
    GridSpec spec = GridSpec::cube(2, 1.0, 0.5);
    GridFunction g = sample(make_radial(ConvexBody::box({1.0, 1.0}), profile_indicator(1.0)),
                            spec);
    std::string dir = std::filesystem::temp_directory_path().string();
    std::string bin = dir + "/cdl_test_grid.bin";
    write_grid_binary(g, bin);
    GridFunction back = read_grid_binary(bin);
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        if (std::isfinite(g.values[i]))
            CHECK(back.values[i] == g.values[i]);
        else
            CHECK(!std::isfinite(back.values[i]));
    }
    CHECK(back.spec.h == g.spec.h);
    write_grid_csv(g, dir + "/cdl_test_grid.csv");
    std::filesystem::remove(bin);
    std::filesystem::remove(dir + "/cdl_test_grid.csv");
}

TEST_CASE("auto-sized dual range stays lattice aligned") {
    GridSpec spec = GridSpec::cube(1, 3.0, 1.0 / 8.0);
    GridFunction g = sample(make_radial(ConvexBody::box({1.0}), profile_indicator(1.0)),
                            spec);
    GridFunction conj = transform_grid(g, TransformKind::Legendre);
    double q = conj.spec.lo[0] / conj.spec.h;
    CHECK(q == doctest::Approx(std::llround(q)));
}

TEST_CASE("auto-sized output overflow") {
    // conj of 2|x| flattens out to +-2: one doubling of the default window
    // suffices; a slope-50 gauge overflows even after the doubling.
    GridSpec spec = GridSpec::cube(1, 1.0, 1.0 / 16.0);
    GridFunction mild = sample_custom([](const Vec& x) { return 2.0 * std::abs(x[0]); },
                                      spec);
    GridFunction conj = transform_grid(mild, TransformKind::Legendre);
    CHECK(conj.spec.hi[0] >= 2.5);

    GridFunction steep = sample_custom([](const Vec& x) { return 50.0 * std::abs(x[0]); },
                                       spec);
    CHECK_THROWS_AS(transform_grid(steep, TransformKind::Legendre), std::domain_error);
}
