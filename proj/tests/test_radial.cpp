#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cdl/radial.hpp"
#include "cdl/random_gen.hpp"

using namespace cdl;

namespace {
double factorial_d(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}
}  // namespace

TEST_CASE("integral of exp(-norm) and indicators") {
    for (int n : {1, 2, 3}) {
        ConvexBody K = ConvexBody::ball(n, 1.0);
        RadialFunction norm = make_radial(K, profile_norm());
        CHECK(integral_exp(norm) ==
              doctest::Approx(factorial_d(n) * volume(K)).epsilon(1e-12));
        RadialFunction ind = make_radial(K, profile_indicator(1.0));
        CHECK(integral_exp(ind) == doctest::Approx(volume(K)).epsilon(1e-12));
    }
    RadialFunction abs1 = make_radial(ConvexBody::box({1.0}), profile_norm());
    CHECK(integral_exp(abs1) == doctest::Approx(2.0));
}

TEST_CASE("integral against monte-carlo-free quadrature oracle") {
    Rng rng(41u);
    for (int n : {1, 2}) {
        for (int t = 0; t < 5; ++t) {
            RadialFunction phi = random_radial(rng, n);
            // Level-set quadrature with a fine trapezoid in t.
            double volk = volume(phi.body);
            RadiusFunction rho = invert_profile(phi.profile);
            double upper = 80.0, acc = 0.0;
            int steps = 40000;
            for (int i = 0; i <= steps; ++i) {
                double tt = upper * i / steps;
                double w = (i == 0 || i == steps) ? 0.5 : 1.0;
                acc += w * std::exp(-tt) * std::pow(rho(tt), n);
            }
            acc *= upper / steps * volk;
            CHECK(integral_exp(phi) == doctest::Approx(acc).epsilon(1e-6));
        }
    }
}

TEST_CASE("santalo ratio closed forms") {
    Rng rng(43u);
    for (int n : {1, 2, 3}) {
        double fact = factorial_d(n);
        for (double alpha : {0.5, 1.0, 2.0, 10.0}) {
            RadialFunction norm = make_radial(random_vpolytope(rng, n), profile_norm());
            CHECK(santalo_ratio(norm, alpha, Side::Left) ==
                  doctest::Approx(1.0 / fact).epsilon(1e-12));
            RadialFunction ind =
                make_radial(ConvexBody::ball(n, 1.0), profile_indicator(1.0));
            CHECK(santalo_ratio(ind, alpha, Side::Left) ==
                  doctest::Approx(fact / std::pow(alpha, n)).epsilon(1e-12));
        }
    }
    // Hand-quadrature value for the capped norm.
    ConvexBody seg = ConvexBody::box({1.0});
    RadialFunction capped = make_psi(seg, 0.0, 1.0);
    double expect = (0.5 - std::exp(-2.0) / 2.0) / (1.0 - std::exp(-1.0));
    CHECK(santalo_ratio(capped, 2.0, Side::Left) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("psi family") {
    ConvexBody K = ConvexBody::ball(2, 1.0);
    RadialFunction psi1 = make_psi(K, 1.0, 3.0);
    CHECK(profiles_equal(psi1.profile, profile_norm(), 1e-12));
    RadialFunction psi0 = make_psi(ConvexBody::box({1.0}), 0.0, 1.0);
    CHECK(psi0({0.5}) == doctest::Approx(0.5));
    CHECK(psi0({2.0}) == std::numeric_limits<double>::infinity());

    // inverse of the psi profile is p_{r,t0}
    for (double r : {0.0, 0.3, 0.7, 1.0}) {
        for (double t0 : {0.5, 1.0, 2.0}) {
            RadialFunction psi = make_psi(K, r, t0);
            RadiusFunction inv = invert_profile(psi.profile);
            RadiusFunction p = psi_radius(r, t0);
            for (double t : {0.1, 0.5, 1.0, 1.7, 4.0})
                CHECK(inv(t) == doctest::Approx(p(t)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(make_psi(K, -0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_psi(K, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("transform_radial identities") {
    Rng rng(47u);
    for (int n : {1, 2}) {
        ConvexBody K = random_vpolytope(rng, n);
        RadialFunction norm = make_radial(K, profile_norm());
        double alpha = 1.7;

        RadialFunction pol = transform_radial(norm, TransformKind::Polarity, alpha);
        CHECK(bodies_equal(pol.body, polar(K), 1e-9));
        CHECK(pol.profile(1.0) == doctest::Approx(alpha));

        RadialFunction leg = transform_radial(norm, TransformKind::Legendre);
        CHECK(profiles_equal(leg.profile, profile_indicator(1.0), 1e-12));

        RadialFunction jn = transform_radial(norm, TransformKind::GaugeJ);
        CHECK(profiles_equal(jn.profile, profile_indicator(1.0), 1e-12));
        CHECK(bodies_equal(jn.body, K, 1e-9));
    }
}

TEST_CASE("mahler products") {
    for (int n : {1, 2, 3}) {
        ConvexBody B = ConvexBody::ball(n, 1.0);
        double vb = volume(B);
        for (double alpha : {1.0, 2.0, 4.0}) {
            double p = mahler_product_A(make_radial(B, profile_indicator(1.0)), alpha);
            CHECK(p == doctest::Approx(vb * vb).epsilon(1e-9));
            double pn = mahler_product_A(make_radial(B, profile_norm()), alpha);
            CHECK(pn == doctest::Approx(factorial_d(n) * vb * factorial_d(n) * vb /
                                        std::pow(alpha, n))
                            .epsilon(1e-9));
        }
    }
}

TEST_CASE("legendre product") {
    RadialFunction abs1 = make_radial(ConvexBody::box({1.0}), profile_norm());
    CHECK(legendre_product(abs1) == doctest::Approx(4.0));
    CHECK(legendre_product(abs1) <= 2 * std::numbers::pi);

    RadialFunction off = make_radial(ConvexBody::vpolytope({{-1.0}, {3.0}}),
                                     profile_norm());
    CHECK_THROWS_AS(legendre_product(off), std::invalid_argument);
}

TEST_CASE("barycenter") {
    RadialFunction sym = make_radial(ConvexBody::box({1.0, 2.0}), profile_norm());
    Vec b = barycenter(sym);
    CHECK(std::abs(b[0]) < 1e-14);
    CHECK(std::abs(b[1]) < 1e-14);

    RadialFunction ind13 =
        make_radial(ConvexBody::vpolytope({{-1.0}, {3.0}}), profile_indicator(1.0));
    CHECK(barycenter(ind13)[0] == doctest::Approx(1.0));

    RadialFunction norm13 =
        make_radial(ConvexBody::vpolytope({{-1.0}, {3.0}}), profile_norm());
    CHECK(barycenter(norm13)[0] == doctest::Approx(2.0));
}

TEST_CASE("level sets") {
    ConvexBody K = ConvexBody::box({1.0, 1.0});
    RadialFunction norm = make_radial(K, profile_norm());
    auto L = level_set(norm, 2.0);
    REQUIRE(L.has_value());
    CHECK(volume(*L) == doctest::Approx(16.0));
    auto L0 = level_set(norm, 0.0);
    CHECK(!L0.has_value());

    // L_s(A_alpha norm) = (s/alpha) K°
    double alpha = 2.0, s = 3.0;
    RadialFunction pol = transform_radial(norm, TransformKind::Polarity, alpha);
    auto Ls = level_set(pol, s);
    REQUIRE(Ls.has_value());
    CHECK(bodies_equal(*Ls, scale_body(polar(K), s / alpha), 1e-9));

    // paper inclusion at sampled (s, t): support test against the scaled polar.
    Rng rng(53u);
    RadialFunction phi = random_radial(rng, 2);
    for (double ss : {0.5, 1.0, 2.0}) {
        for (double tt : {0.5, 1.0, 2.0}) {
            auto La = level_set(transform_radial(phi, TransformKind::Polarity, alpha), ss);
            auto Lt = level_set(phi, tt);
            if (!La || !Lt) continue;
            double c = ss * tt / alpha + 1.0;
            for (int k = 0; k < 24; ++k) {
                double ang = 2 * std::numbers::pi * k / 24;
                Vec dir{std::cos(ang), std::sin(ang)};
                // support of La must stay below c * support of (Lt)°
                CHECK(support(*La, dir) <= c * gauge(*Lt, dir) + 1e-9);
            }
        }
    }
}

TEST_CASE("observation product identity") {
    Rng rng(59u);
    for (int n : {1, 2, 3}) {
        for (int t = 0; t < 34; ++t) {
            RadialFunction phi = random_radial(rng, n);
            double alpha = 0.5 + (t % 5) * 0.8;
            RadialFunction jphi = transform_radial(phi, TransformKind::JLeft, alpha);
            double prod = santalo_ratio(phi, alpha, Side::Left) *
                          santalo_ratio(jphi, alpha, Side::Left);
            CHECK(prod * std::pow(alpha, n) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("divergence and degenerate inputs") {
    ConvexBody K = ConvexBody::ball(1, 1.0);
    CHECK_THROWS_AS(integral_exp(make_radial(K, profile_zero())), std::domain_error);
    CHECK_THROWS_AS(integral_exp(make_radial(K, profile_origin_indicator())),
                    std::domain_error);
    CHECK_THROWS_AS(santalo_ratio(make_radial(K, profile_norm()), -1.0, Side::Left),
                    std::invalid_argument);
}
