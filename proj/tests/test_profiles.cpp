#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cdl/profile.hpp"

using namespace cdl;

namespace {

// Deterministic generator for random test profiles: 0-3 interior knots,
// sorted positive slopes, occasional zero set and bounded tails.
Profile random_profile(std::mt19937_64& rng) {
    auto uni = [&rng](double lo, double hi) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };
    int segments = 1 + static_cast<int>(rng() % 4);
    bool zero_start = rng() % 4 == 0;
    bool bounded = rng() % 4 == 0;
    std::vector<double> slopes;
    for (int i = 0; i < segments; ++i) slopes.push_back(uni(0.2, 3.0));
    std::sort(slopes.begin(), slopes.end());
    if (zero_start) slopes.insert(slopes.begin(), 0.0);
    std::vector<double> knots{0.0}, values{0.0};
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        double len = uni(0.2, 1.5);
        knots.push_back(knots.back() + len);
        values.push_back(values.back() + slopes[i] * len);
    }
    if (bounded) {
        double len = uni(0.2, 1.5);
        knots.push_back(knots.back() + len);
        values.push_back(values.back() + slopes.back() * len);
        return make_profile(knots, values, true);
    }
    return make_profile(knots, values, false, slopes.back());
}

double eval_sup_polarity(const Profile& u, double s) {
    // Direct oracle: sup over a dense r-grid of (rs-1)/u(r) with the division
    // conventions; log-spaced samples chase the tail limit.
    double best = 0.0;
    std::vector<double> rs;
    double upper = u.bounded ? u.knots.back() : u.knots.back() + 10.0;
    for (int i = 0; i <= 40000; ++i) rs.push_back(upper * i / 40000.0);
    if (!u.bounded)
        for (int i = 0; i <= 4000; ++i) rs.push_back(upper * std::pow(10.0, 8.0 * i / 4000.0));
    for (double r : rs) {
        double ur = u(r);
        double num = r * s - 1.0;
        if (!std::isfinite(ur)) continue;
        if (ur == 0.0) {
            if (num > 0.0) return std::numeric_limits<double>::infinity();
            continue;
        }
        best = std::max(best, num / ur);
    }
    return best;
}

double eval_sup_legendre(const Profile& u, double s) {
    double best = 0.0;
    double upper = u.bounded ? u.knots.back() : u.knots.back() + 60.0;
    for (int i = 0; i <= 40000; ++i) {
        double r = upper * i / 40000.0;
        double ur = u(r);
        if (!std::isfinite(ur)) continue;
        best = std::max(best, r * s - ur);
    }
    return best;
}

}  // namespace

TEST_CASE("legendre of basic profiles") {
    Profile id = profile_norm();
    Profile conj = transform_profile(id, TransformKind::Legendre);
    CHECK(conj.bounded);
    CHECK(conj.knots.back() == doctest::Approx(1.0));
    CHECK(conj(0.5) == 0.0);
    CHECK(conj(1.0) == 0.0);
    CHECK(conj(1.5) == std::numeric_limits<double>::infinity());

    Profile back = transform_profile(conj, TransformKind::Legendre);
    CHECK(profiles_equal(back, id, 1e-12));
}

TEST_CASE("polarity of the norm profile is the identity") {
    Profile id = profile_norm();
    Profile a = transform_profile(id, TransformKind::Polarity, 1.0);
    CHECK(profiles_equal(a, id, 1e-12));
    Profile a2 = transform_profile(id, TransformKind::Polarity, 2.0);
    CHECK(a2(1.0) == doctest::Approx(2.0));
}

TEST_CASE("gauge transform swaps norm and indicator") {
    Profile id = profile_norm();
    Profile j = transform_profile(id, TransformKind::GaugeJ);
    CHECK(profiles_equal(j, profile_indicator(1.0), 1e-12));
    Profile jj = transform_profile(j, TransformKind::GaugeJ);
    CHECK(profiles_equal(jj, id, 1e-12));
}

TEST_CASE("involutions and compositions on random profiles") {
    std::mt19937_64 rng(20240811u);
    for (int trial = 0; trial < 100; ++trial) {
        Profile u = random_profile(rng);
        CAPTURE(trial);
        Profile ll = transform_profile(transform_profile(u, TransformKind::Legendre),
                                       TransformKind::Legendre);
        CHECK(profiles_equal(ll, u, 1e-12));
        double alpha = 0.5 + (trial % 5);
        Profile aa = transform_profile(
            transform_profile(u, TransformKind::Polarity, alpha), TransformKind::Polarity,
            alpha);
        CHECK(profiles_equal(aa, u, 1e-12));
        Profile jj = transform_profile(transform_profile(u, TransformKind::GaugeJ),
                                       TransformKind::GaugeJ);
        CHECK(profiles_equal(jj, u, 1e-12));
        Profile j1 = transform_profile(u, TransformKind::GaugeJ);
        Profile j2 = transform_profile(transform_profile(u, TransformKind::Legendre),
                                       TransformKind::Polarity, 1.0);
        Profile j3 = transform_profile(transform_profile(u, TransformKind::Polarity, 1.0),
                                       TransformKind::Legendre);
        CHECK(profiles_equal(j1, j2, 1e-12));
        CHECK(profiles_equal(j1, j3, 1e-12));
    }
}

TEST_CASE("polarity matches the dense sup oracle") {
    std::mt19937_64 rng(7u);
    for (int trial = 0; trial < 20; ++trial) {
        Profile u = random_profile(rng);
        Profile a = transform_profile(u, TransformKind::Polarity, 1.0);
        for (double s : {0.1, 0.5, 1.0, 2.0, 5.0}) {
            double direct = eval_sup_polarity(u, s);
            double got = a(s);
            if (!std::isfinite(direct) || !std::isfinite(got)) {
                // Dense-grid oracle may sit on either side of the domain cap.
                continue;
            }
            CHECK(got == doctest::Approx(direct).epsilon(1e-3));
        }
    }
}

TEST_CASE("legendre matches the dense sup oracle") {
    std::mt19937_64 rng(11u);
    for (int trial = 0; trial < 20; ++trial) {
        Profile u = random_profile(rng);
        Profile l = transform_profile(u, TransformKind::Legendre);
        for (double s : {0.1, 0.5, 1.0, 1.9}) {
            if (s >= l.domain_end()) continue;
            CHECK(l(s) == doctest::Approx(eval_sup_legendre(u, s)).epsilon(1e-3));
        }
    }
}

TEST_CASE("inf convolution basics") {
    Profile id = profile_norm();
    CHECK(profiles_equal(inf_conv_profile(id, id), id, 1e-12));
    Profile shifted = inf_conv_profile(id, profile_indicator(1.0));
    CHECK(shifted(0.5) == 0.0);
    CHECK(shifted(2.0) == doctest::Approx(1.0));
    Profile steep = make_profile({0.0}, {0.0}, false, 2.0);
    CHECK(profiles_equal(inf_conv_profile(steep, id), id, 1e-12));
}

TEST_CASE("g-inf convolution") {
    Profile id = profile_norm();
    Profile g = g_inf_conv_profile(id, id);
    CHECK(g(1.0) == doctest::Approx(0.5));
    CHECK(g(3.0) == doctest::Approx(1.5));
    Profile ind = profile_indicator(1.0);
    CHECK(profiles_equal(g_inf_conv_profile(ind, ind), ind, 1e-12));

    // phi ⊡ phi <= phi pointwise.
    std::mt19937_64 rng(99u);
    for (int trial = 0; trial < 20; ++trial) {
        Profile u = random_profile(rng);
        Profile gu = g_inf_conv_profile(u, u);
        for (double r = 0.0; r < 4.0; r += 0.37) CHECK(gu(r) <= u(r) + 1e-10);
    }
}

TEST_CASE("g-inf convolution agrees with the direct max formula") {
    // (u ⊡ v)(x) = inf over t,y,z with (1-t)y+tz=x of max{(1-t)u(y), t v(z)}.
    std::mt19937_64 rng(123u);
    for (int trial = 0; trial < 10; ++trial) {
        Profile u = random_profile(rng);
        Profile v = random_profile(rng);
        Profile g = g_inf_conv_profile(u, v);
        for (double x : {0.3, 0.8, 1.7}) {
            double best = std::numeric_limits<double>::infinity();
            for (int ti = 1; ti < 1000; ++ti) {
                double t = ti / 1000.0;
                for (int yi = 0; yi <= 1200; ++yi) {
                    double y = 12.0 * (1.0 + x) * yi / 1200.0;
                    double z = (x - (1.0 - t) * y) / t;
                    if (z < 0.0) continue;
                    double a = (1.0 - t) * u(y);
                    double b = t * v(z);
                    best = std::min(best, std::max(a, b));
                }
            }
            if (!std::isfinite(best) || !std::isfinite(g(x))) continue;
            CHECK(g(x) <= best + 1e-9);           // g is the exact infimum
            CHECK(g(x) >= best - 0.02 * (1 + best));  // grid oracle overshoots
        }
    }
}

TEST_CASE("scaling identity of the gauge transform") {
    std::mt19937_64 rng(5u);
    for (int trial = 0; trial < 20; ++trial) {
        Profile u = random_profile(rng);
        double alpha = 0.5 + (trial % 4);
        Profile lhs = transform_profile(scale_values(u, alpha), TransformKind::GaugeJ);
        Profile rhs = transform_profile(u, TransformKind::GaugeJ);
        for (double x : {0.2, 0.7, 1.3, 2.9}) {
            double a = lhs(x);
            double b = rhs(alpha * x) / alpha;
            if (!std::isfinite(a) || !std::isfinite(b)) {
                CHECK(std::isfinite(a) == std::isfinite(b));
                continue;
            }
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("JLeft twice dilates the argument") {
    std::mt19937_64 rng(6u);
    for (int trial = 0; trial < 20; ++trial) {
        Profile u = random_profile(rng);
        double alpha = 1.5;
        Profile twice = transform_profile(
            transform_profile(u, TransformKind::JLeft, alpha), TransformKind::JLeft, alpha);
        for (double x : {0.1, 0.4, 0.9, 2.2}) {
            double a = twice(x);
            double b = u(alpha * x);
            if (!std::isfinite(a) || !std::isfinite(b)) {
                CHECK(std::isfinite(a) == std::isfinite(b));
                continue;
            }
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("order reversal and preservation") {
    std::mt19937_64 rng(8u);
    for (int trial = 0; trial < 10; ++trial) {
        Profile u = random_profile(rng);
        Profile v = add_profiles(u, random_profile(rng));  // v >= u
        Profile au = transform_profile(u, TransformKind::Polarity, 2.0);
        Profile av = transform_profile(v, TransformKind::Polarity, 2.0);
        Profile lu = transform_profile(u, TransformKind::Legendre);
        Profile lv = transform_profile(v, TransformKind::Legendre);
        Profile ju = transform_profile(u, TransformKind::GaugeJ);
        Profile jv = transform_profile(v, TransformKind::GaugeJ);
        for (double x : {0.2, 0.8, 1.6, 3.1}) {
            CHECK(au(x) >= av(x) - 1e-10);
            CHECK(lu(x) >= lv(x) - 1e-10);
            CHECK(ju(x) <= jv(x) + 1e-10);
        }
    }
}

TEST_CASE("commutation fails for alpha != 1") {
    Profile witness = make_profile({0.0, 1.0}, {0.0, 1.0}, false, 3.0);
    double alpha = 2.0;
    Profile al = transform_profile(transform_profile(witness, TransformKind::Legendre),
                                   TransformKind::Polarity, alpha);
    Profile la = transform_profile(
        transform_profile(witness, TransformKind::Polarity, alpha), TransformKind::Legendre);
    CHECK(!profiles_equal(al, la, 1e-6));
}

TEST_CASE("generalized inverse") {
    RadiusFunction rho = invert_profile(profile_norm());
    CHECK(rho(3.0) == doctest::Approx(3.0));
    RadiusFunction rind = invert_profile(profile_indicator(1.0));
    CHECK(rind(0.0) == doctest::Approx(1.0));
    CHECK(rind(9.0) == doctest::Approx(1.0));

    Profile psi = make_profile({0.0, 1.0}, {0.0, 1.0}, false, 2.0);
    RadiusFunction rp = invert_profile(psi);
    CHECK(rp(0.5) == doctest::Approx(0.5));
    CHECK(rp(3.0) == doctest::Approx(2.0));  // (t+1)/2

    std::mt19937_64 rng(12u);
    for (int trial = 0; trial < 40; ++trial) {
        Profile u = random_profile(rng);
        Profile closure = radius_to_profile(invert_profile(u));
        CHECK(profiles_equal(closure, u, 1e-12));
    }
}

TEST_CASE("level integrals in closed form") {
    RadiusFunction id = invert_profile(profile_norm());
    for (int n = 1; n <= 6; ++n) {
        double fact = 1.0;
        for (int i = 2; i <= n; ++i) fact *= i;
        CHECK(exp_level_integral(id, n, LevelWeight::Exp) == doctest::Approx(fact));
        CHECK(exp_level_integral(id, n, LevelWeight::JExp, 0.5 + n) ==
              doctest::Approx(1.0));
    }
    RadiusFunction one = invert_profile(profile_indicator(1.0));
    CHECK(exp_level_integral(one, 3, LevelWeight::Exp) == doctest::Approx(1.0));
}

TEST_CASE("exp integral against quadrature") {
    std::mt19937_64 rng(77u);
    for (int trial = 0; trial < 15; ++trial) {
        Profile u = random_profile(rng);
        RadiusFunction rho = invert_profile(u);
        for (int n = 1; n <= 3; ++n) {
            double closed = exp_level_integral(rho, n, LevelWeight::Exp);
            // Simpson quadrature with a generous cutoff.
            double upper = 60.0;
            int steps = 20000;
            double hstep = upper / steps;
            double acc = 0.0;
            for (int i = 0; i <= steps; ++i) {
                double t = hstep * i;
                double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
                acc += w * std::exp(-t) * std::pow(rho(t), n);
            }
            acc *= hstep / 3.0;
            CHECK(closed == doctest::Approx(acc).epsilon(1e-6));
        }
    }
}

TEST_CASE("profile moments") {
    // integral r^k e^-r dr = k!
    CHECK(profile_moment(profile_norm(), 0) == doctest::Approx(1.0));
    CHECK(profile_moment(profile_norm(), 3) == doctest::Approx(6.0));
    CHECK(profile_moment(profile_indicator(2.0), 1) == doctest::Approx(2.0));
}

TEST_CASE("sandwich between inf-conv and g-inf-conv") {
    std::mt19937_64 rng(31u);
    for (int trial = 0; trial < 50; ++trial) {
        Profile u = random_profile(rng);
        Profile v = random_profile(rng);
        Profile box = inf_conv_profile(u, v);
        Profile gbox = g_inf_conv_profile(u, v);
        for (int i = 1; i <= 20; ++i) {
            double x = 0.25 * i;
            double lhs = 2.0 * gbox(x / 2.0);
            double mid = box(x);
            double rhs = 2.0 * gbox(x);
            if (std::isfinite(mid)) {
                CHECK(lhs <= mid + 1e-9);
                CHECK(mid <= rhs + 1e-9);
            } else {
                CHECK(!std::isfinite(rhs));
            }
        }
    }
}
