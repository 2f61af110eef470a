#include "cdl/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "cdl/analysis.hpp"
#include "cdl/covering.hpp"
#include "cdl/grid.hpp"
#include "cdl/json_io.hpp"
#include "cdl/random_gen.hpp"

namespace cdl {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

struct Check {
    SuiteResult& res;
    void row(const std::string& check, int n, double alpha, std::uint64_t seed,
             double tol, double value, double reference, bool ok) {
        res.rows.push_back({check, fmt_int(n), fmt(alpha), fmt_int(static_cast<long long>(seed)),
                            fmt(tol), fmt(value), fmt(reference), ok ? "pass" : "FAIL"});
        if (!ok) res.pass = false;
    }
};

std::vector<ConvexBody> family_bodies(const std::string& family, int n, Rng& rng) {
    if (family == "box") {
        Vec h;
        for (int i = 0; i < n; ++i) h.push_back(1.0 + 0.25 * i);
        return {ConvexBody::box(h)};
    }
    if (family == "ball") return {ConvexBody::ball(n, 1.0)};
    if (family == "simplex") {
        std::vector<Vec> v;
        v.push_back(Vec(n, 0.0));
        for (int i = 0; i < n; ++i) {
            Vec e(n, 0.0);
            e[i] = 1.0;
            v.push_back(e);
        }
        return {ConvexBody::simplex(v, true)};
    }
    if (family == "random") {
        std::vector<ConvexBody> out;
        for (int k = 0; k < 3; ++k) out.push_back(random_vpolytope(rng, n));
        return out;
    }
    throw std::invalid_argument("unknown body family: " + family);
}

double rel_err(double value, double reference) {
    return std::abs(value - reference) / std::max(1e-300, std::abs(reference));
}

// ---------------------------------------------------------------- transforms

void suite_transforms(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    Rng rng(cfg.seed);
    double worst_inv = 0.0, worst_comp = 0.0;
    int profiles = 100;
    for (int t = 0; t < profiles; ++t) {
        Profile u = random_profile(rng);
        double alpha = 0.5 + static_cast<double>(t % 7) * 0.75;
        Profile ll = transform_profile(transform_profile(u, TransformKind::Legendre),
                                       TransformKind::Legendre);
        Profile aa = transform_profile(
            transform_profile(u, TransformKind::Polarity, alpha), TransformKind::Polarity,
            alpha);
        Profile jj = transform_profile(transform_profile(u, TransformKind::GaugeJ),
                                       TransformKind::GaugeJ);
        bool ok = profiles_equal(ll, u, 1e-12) && profiles_equal(aa, u, 1e-12) &&
                  profiles_equal(jj, u, 1e-12);
        if (!ok) worst_inv = 1.0;
        Profile j1 = transform_profile(u, TransformKind::GaugeJ);
        Profile j2 = transform_profile(transform_profile(u, TransformKind::Legendre),
                                       TransformKind::Polarity, 1.0);
        Profile j3 = transform_profile(transform_profile(u, TransformKind::Polarity, 1.0),
                                       TransformKind::Legendre);
        if (!profiles_equal(j1, j2, 1e-12) || !profiles_equal(j1, j3, 1e-12))
            worst_comp = 1.0;
    }
    ck.row("involutions_LL_AA_JJ", 0, 0.0, cfg.seed, 1e-12, worst_inv, 0.0,
           worst_inv == 0.0);
    ck.row("J_equals_LA_and_AL", 0, 0.0, cfg.seed, 1e-12, worst_comp, 0.0,
           worst_comp == 0.0);

    // Observation: R(J^l_a phi) R(phi) = alpha^-n on random radial functions.
    double worst_prod = 0.0;
    int count = 0;
    for (int n : cfg.ns) {
        if (n > 3) continue;
        for (int t = 0; t < 34; ++t) {
            RadialFunction phi = random_radial(rng, n);
            double alpha = 0.5 + static_cast<double>(t % 5);
            RadialFunction jphi = transform_radial(phi, TransformKind::JLeft, alpha);
            double prod = santalo_ratio(phi, alpha, Side::Left) *
                          santalo_ratio(jphi, alpha, Side::Left) * std::pow(alpha, n);
            worst_prod = std::max(worst_prod, std::abs(prod - 1.0));
            ++count;
        }
    }
    ck.row("observation_product_identity", 0, 0.0, cfg.seed, 1e-9, worst_prod, 0.0,
           worst_prod <= 1e-9 && count >= 100);

    // J scaling identity and the right-left relation on samples.
    double worst_scale = 0.0;
    for (int t = 0; t < 25; ++t) {
        Profile u = random_profile(rng);
        double alpha = 0.5 + 0.5 * (t % 6);
        Profile lhs = transform_profile(scale_values(u, alpha), TransformKind::GaugeJ);
        Profile rhs = transform_profile(u, TransformKind::GaugeJ);
        for (double x : {0.25, 0.75, 1.5, 2.5}) {
            double a = lhs(x), b = rhs(alpha * x) / alpha;
            if (std::isfinite(a) != std::isfinite(b)) worst_scale = 1.0;
            if (std::isfinite(a) && std::isfinite(b))
                worst_scale = std::max(worst_scale, std::abs(a - b));
        }
    }
    ck.row("J_scaling_identity", 0, 0.0, cfg.seed, 1e-9, worst_scale, 0.0,
           worst_scale <= 1e-9);

    // Right ratio through the transform route (independent of the alpha^n
    // shortcut inside santalo_ratio).
    double worst_rl = 0.0;
    for (int n : cfg.ns) {
        if (n > 3) continue;
        for (int t = 0; t < 10; ++t) {
            RadialFunction phi = random_radial(rng, n);
            double alpha = 1.0 + t * 0.4;
            RadialFunction jr = transform_radial(phi, TransformKind::JRight, alpha);
            double via_transform = integral_exp(jr) / integral_exp(phi);
            double right = santalo_ratio(phi, alpha, Side::Right);
            worst_rl = std::max(worst_rl, rel_err(right, via_transform));
        }
    }
    ck.row("right_ratio_via_transform", 0, 0.0, cfg.seed, 1e-9, worst_rl, 0.0,
           worst_rl <= 1e-9);

    res.summary["profiles_tested"] = profiles;
    res.summary["observation_pairs"] = count;
}

// ----------------------------------------------------------------- exact-jl

void suite_exact_jl(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    Rng rng(cfg.seed);
    std::vector<double> alphas =
        cfg.alphas.empty() ? std::vector<double>{0.5, 1.0, 2.0, 10.0} : cfg.alphas;

    for (int n : cfg.ns) {
        if (n > 3) continue;
        double fact = factorial(n);
        for (const std::string& family : cfg.families) {
            for (const ConvexBody& K : family_bodies(family, n, rng)) {
                RadialFunction norm = make_radial(K, profile_norm());
                for (double alpha : alphas) {
                    double r = santalo_ratio(norm, alpha, Side::Left);
                    ck.row("norm_ratio_" + family, n, alpha, cfg.seed, 1e-9, r * fact,
                           1.0, rel_err(r, 1.0 / fact) <= 1e-9);
                }
            }
        }

        // Regime: five alphas at and above the threshold.
        double thr = compute_rho(n) * (n + 2.0) * (n + 2.0);
        for (double mult : {1.0, 1.2, 1.8, 3.0, 6.0}) {
            double alpha = thr * mult;
            LambdaMax lm = lambda_max(n, alpha);
            bool ok = std::abs(lm.lambda - 1.0 / fact) <= 1e-8 && lm.r_star == 1.0;
            ck.row("lambda_max_exact_regime", n, alpha, cfg.seed, 1e-8, lm.lambda,
                   1.0 / fact, ok);

            double lo = fact / std::pow(alpha, n), hi = 1.0 / fact;
            double worst = 0.0;
            for (int t = 0; t < 8; ++t) {
                RadialFunction phi = random_radial(rng, n);
                double r = santalo_ratio(phi, alpha, Side::Left);
                worst = std::max({worst, lo - 1e-9 - r, r - hi - 1e-9});
            }
            ck.row("random_ratio_within_bounds", n, alpha, cfg.seed, 1e-9, worst, 0.0,
                   worst <= 0.0);

            // Equality witnesses: norms and indicators sit at the ends...
            RadialFunction norm = make_radial(ConvexBody::ball(n, 1.0), profile_norm());
            RadialFunction ind =
                make_radial(ConvexBody::ball(n, 1.0), profile_indicator(1.0));
            ck.row("norm_attains_upper", n, alpha, cfg.seed, 1e-9,
                   santalo_ratio(norm, alpha, Side::Left), hi,
                   rel_err(santalo_ratio(norm, alpha, Side::Left), hi) <= 1e-9);
            ck.row("indicator_attains_lower", n, alpha, cfg.seed, 1e-9,
                   santalo_ratio(ind, alpha, Side::Left), lo,
                   rel_err(santalo_ratio(ind, alpha, Side::Left), lo) <= 1e-9);

            // ...and visibly non-extremal functions stay away from both ends.
            double margin = 1e9;
            for (double rr : {0.0, 0.3, 0.6, 0.9}) {
                for (double t0 : {0.5, 1.0, 2.0}) {
                    double s = sigma(n, alpha, rr, t0);
                    margin = std::min({margin, hi - s, s - lo});
                }
            }
            ck.row("non_extremal_margin", n, alpha, cfg.seed, 1e-4, margin, 1e-4,
                   margin >= 1e-4);
        }
    }
}

// ----------------------------------------------------------------- tight-jl

void suite_tight_jl(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    double c_measured = std::numeric_limits<double>::infinity();
    double K_measured = 0.0;
    std::string sweep = "n,alpha,rho_n,lambda,r_star,t0_star,gamma\n";
    nlohmann::json reports = nlohmann::json::array();
    for (int n : cfg.ns) {
        if (n > 3) continue;
        double thr = compute_rho(n) * (n + 2.0) * (n + 2.0);
        std::vector<double> alphas = cfg.alphas;
        if (alphas.empty())
            for (int i = 1; i <= 10; ++i) alphas.push_back(1.0 + (thr - 1.0) * i / 11.0);
        for (double alpha : alphas) {
            if (alpha <= 1.0 || alpha >= thr) continue;
            RegimeReport rep = regime_report(n, alpha);
            bool gamma_above_one = rep.gamma > 1.0 + 1e-12;
            ck.row("gamma_above_one", n, alpha, cfg.seed, 1e-12, rep.gamma, 1.0,
                   gamma_above_one);
            ck.row("regime_is_tight", n, alpha, cfg.seed, 0.0,
                   rep.regime == "tight" ? 1.0 : 0.0, 1.0, rep.regime == "tight");
            ck.row("product_identity", n, alpha, cfg.seed, 1e-9,
                   rep.product_identity_ok ? 0.0 : 1.0, 0.0, rep.product_identity_ok);
            c_measured = std::min(c_measured, (rep.gamma - 1.0) * n);
            K_measured =
                std::max(K_measured, rep.gamma / (std::pow(n, 1.5) * std::exp(2.0 * alpha / n)));
            res.rows.push_back({"gamma_value", fmt_int(n), fmt(alpha),
                                fmt_int(static_cast<long long>(cfg.seed)), fmt(0.0),
                                fmt(rep.gamma), fmt(rep.lambda), "pass"});
            sweep += fmt_int(n) + "," + fmt(alpha) + "," + fmt(rep.rho_n) + "," +
                     fmt(rep.lambda) + "," + fmt(rep.r_star) + "," + fmt(rep.t0_star) +
                     "," + fmt(rep.gamma) + "\n";
            reports.push_back({{"n", rep.n},
                               {"alpha", rep.alpha},
                               {"rho_n", rep.rho_n},
                               {"threshold", rep.threshold},
                               {"lambda", rep.lambda},
                               {"r_star", rep.r_star},
                               {"t0_star", rep.t0_star},
                               {"gamma", rep.gamma},
                               {"delta", rep.delta},
                               {"regime", rep.regime},
                               {"alpha_above_one", rep.alpha_above_one},
                               {"product_identity_ok", rep.product_identity_ok},
                               {"upper_bound_ok", rep.upper_bound_ok},
                               {"measured_lower_c", rep.measured_lower_c}});
        }
    }
    ck.row("measured_c_positive", 0, 0.0, cfg.seed, 0.0, c_measured, 0.0,
           c_measured > 0.0);
    res.summary["measured_c"] = c_measured;
    res.summary["measured_K"] = K_measured;
    res.extra_files.emplace_back("tight_sweep.csv", sweep);
    res.extra_files.emplace_back("regime_reports.json", reports.dump(2) + "\n");
}

// ------------------------------------------------------------------- mahler

void suite_mahler(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    Rng rng(cfg.seed);
    double two_pi = 2.0 * std::numbers::pi;
    for (int n : cfg.ns) {
        if (n > 3) continue;
        double fact = factorial(n);
        double vb = unit_ball_volume(n);
        std::vector<double> alphas = cfg.alphas;
        if (alphas.empty()) alphas = {1.0, 2.0, static_cast<double>(n) * n};
        ConvexBody ball = ConvexBody::ball(n, 1.0);
        for (double alpha : alphas) {
            double p_ind = mahler_product_A(make_radial(ball, profile_indicator(1.0)), alpha);
            ck.row("mahler_ball_indicator", n, alpha, cfg.seed, 1e-6, p_ind, vb * vb,
                   rel_err(p_ind, vb * vb) <= 1e-6);
            double p_norm = mahler_product_A(make_radial(ball, profile_norm()), alpha);
            double expect = fact * vb * fact * vb / std::pow(alpha, n);
            ck.row("mahler_euclidean_norm", n, alpha, cfg.seed, 1e-6, p_norm, expect,
                   rel_err(p_norm, expect) <= 1e-6);
        }

        // Identity P_A(phi) = R(L phi) * (int e^-L phi int e^-phi) on random
        // symmetric functions, both sides through different kernels.
        double worst_id = 0.0;
        for (int t = 0; t < 17; ++t) {
            RadialFunction phi = random_radial(rng, n, /*symmetric=*/true);
            double alpha = 0.75 + 0.5 * (t % 5);
            double lhs = mahler_product_A(phi, alpha);
            RadialFunction lphi = transform_radial(phi, TransformKind::Legendre);
            double rhs = santalo_ratio(lphi, alpha, Side::Left) * integral_exp(lphi) *
                         integral_exp(phi);
            worst_id = std::max(worst_id, rel_err(lhs, rhs));
        }
        ck.row("mahler_factorization", n, 0.0, cfg.seed, 1e-8, worst_id, 0.0,
               worst_id <= 1e-8);

        // Even upper bound and the centered Legendre-product corridor.
        double root_fact = std::exp(std::lgamma(n + 1.0) / n);
        for (double alpha : alphas) {
            double bound = vb * vb * fact *
                           std::pow(1.0 / root_fact + root_fact / alpha, n);
            double worst = 0.0;
            for (int t = 0; t < 12; ++t) {
                RadialFunction phi = random_radial(rng, n, /*symmetric=*/true);
                worst = std::max(worst, mahler_product_A(phi, alpha) / bound);
            }
            RadialFunction norm = make_radial(ball, profile_norm());
            RadialFunction ind = make_radial(ball, profile_indicator(1.0));
            worst = std::max(worst, mahler_product_A(norm, alpha) / bound);
            worst = std::max(worst, mahler_product_A(ind, alpha) / bound);
            ck.row("even_upper_bound", n, alpha, cfg.seed, 1e-9, worst, 1.0,
                   worst <= 1.0 + 1e-9);
        }

        double worst_lp = 0.0;
        for (int t = 0; t < 10; ++t) {
            RadialFunction phi = random_radial(rng, n, /*symmetric=*/true);
            worst_lp = std::max(worst_lp, legendre_product(phi));
        }
        ck.row("legendre_product_upper", n, 0.0, cfg.seed, 1e-9, worst_lp,
               std::pow(two_pi, n), worst_lp <= std::pow(two_pi, n) * (1.0 + 1e-9));
    }

    // Off-center indicators blow the Mahler product up (barycenter remark).
    double prev = 0.0;
    bool monotone = true;
    for (double eps : {0.5, 0.25, 0.1, 0.05, 0.02}) {
        ConvexBody K = ConvexBody::vpolytope({{-eps}, {2.0 - eps}});
        double p = mahler_product_A(make_radial(K, profile_indicator(1.0)), 2.0);
        if (p <= prev) monotone = false;
        prev = p;
    }
    ck.row("offcenter_indicator_blowup", 1, 2.0, cfg.seed, 0.0, prev, 40.0,
           monotone && prev > 40.0);
}

// ---------------------------------------------------------------- rho-table

void suite_rho_table(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    std::vector<int> ns = cfg.ns;
    if (ns.size() <= 3) {
        ns.clear();
        for (int n = 1; n <= 10; ++n) ns.push_back(n);
    }
    for (int n : ns) {
        double rho = compute_rho(n);
        bool in_range = rho > 0.0 && rho < 0.25;
        ck.row("rho_in_range", n, 0.0, cfg.seed, 0.0, rho, 0.25, in_range);
        double q_err = std::abs(q_function(n, 4.0 * rho) - q_target(n));
        ck.row("q_matches_target", n, 0.0, cfg.seed, 1e-10, q_err, 0.0, q_err <= 1e-10);
        double ld = static_cast<double>(compute_rho_ld(n));
        ck.row("rho_vs_long_double", n, 0.0, cfg.seed, 2e-3, rho, ld,
               std::abs(rho - ld) <= 2e-3);
        res.rows.push_back({"rho_value", fmt_int(n), fmt(0.0),
                            fmt_int(static_cast<long long>(cfg.seed)), fmt(0.0), fmt(rho),
                            fmt(rho * (n + 2.0) * (n + 2.0)), "pass"});
    }
    ck.row("rho1_reference", 1, 0.0, cfg.seed, 2e-3, compute_rho(1), 0.1718,
           std::abs(compute_rho(1) - 0.1718) <= 2e-3);
}

// ----------------------------------------------------------------- covering

void suite_covering(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    Rng rng(cfg.seed);

    // Inf-convolution sandwich on 50 same-body pairs, 1000 sample points each.
    double worst_sandwich = 0.0;
    for (int t = 0; t < 50; ++t) {
        Profile u = random_profile(rng);
        Profile v = random_profile(rng);
        Profile box = inf_conv_profile(u, v);
        Profile gbox = g_inf_conv_profile(u, v);
        for (int i = 1; i <= 1000; ++i) {
            double x = 0.005 * i;
            double mid = box(x);
            if (!std::isfinite(mid)) continue;
            worst_sandwich = std::max(worst_sandwich, 2.0 * gbox(x / 2.0) - mid);
            worst_sandwich = std::max(worst_sandwich, mid - 2.0 * gbox(x));
        }
    }
    ck.row("inf_conv_sandwich", 0, 0.0, cfg.seed, 1e-9, worst_sandwich, 0.0,
           worst_sandwich <= 1e-9);

    // Square sandwich and Rogers-Shephard sweep.
    double rs_max_norm = 0.0;
    for (int n : cfg.ns) {
        if (n > 3) continue;
        double worst_square = 0.0;
        double rs_sweep = 0.0;
        for (int t = 0; t < 12; ++t) {
            RadialFunction phi = random_radial(rng, n, /*symmetric=*/true);
            KmSquare km = km_square_check(phi);
            worst_square = std::max({worst_square, km.a - km.b, km.b - km.c});
            rs_sweep = std::max(rs_sweep, rs_ratio(phi));
        }
        RadialFunction absn = make_radial(ConvexBody::ball(n, 1.0), profile_norm());
        rs_sweep = std::max(rs_sweep, rs_ratio(absn));
        RadialFunction ind = make_radial(ConvexBody::ball(n, 1.0), profile_indicator(1.0));
        rs_sweep = std::max(rs_sweep, rs_ratio(ind));
        ck.row("km_square_sandwich", n, 0.0, cfg.seed, 1e-12, worst_square, 0.0,
               worst_square <= 1e-12);
        ck.row("rs_ratio_below_8n", n, 0.0, cfg.seed, 0.0, rs_sweep, std::pow(8.0, n),
               rs_sweep <= std::pow(8.0, n));
        rs_max_norm = std::max(rs_max_norm, std::pow(rs_sweep, 1.0 / n));
        res.rows.push_back({"rs_sweep_max", fmt_int(n), fmt(0.0),
                            fmt_int(static_cast<long long>(cfg.seed)), fmt(0.0),
                            fmt(rs_sweep), fmt(std::pow(8.0, n)), "pass"});
    }
    res.summary["rs_sweep_max_root"] = rs_max_norm;

    // Exact small covers: N(1_[-2,2], 1_[-1,1]) = 2 at two grid resolutions.
    {
        ConvexBody seg = ConvexBody::box({1.0});
        RadialFunction f = make_radial(scale_body(seg, 2.0), profile_indicator(1.0));
        RadialFunction g = make_radial(seg, profile_indicator(1.0));
        double coarse = 0.0, fine = 0.0;
        for (double h : {1.0 / 8.0, 1.0 / 16.0}) {
            GridSpec spec = GridSpec::cube(1, 3.0, h);
            CoveringLpResult lp = covering_lp(sample(f, spec), sample(g, spec));
            (h == 1.0 / 8.0 ? coarse : fine) = lp.value;
        }
        ck.row("indicator_cover_value", 1, 0.0, cfg.seed, 1e-6, fine, 2.0,
               std::abs(fine - 2.0) <= 1e-6 && std::abs(coarse - 2.0) <= 1e-6);

        // LP inside the volume corridor with refinement slack.
        CoveringEstimate est = covering_volume_bounds(f, g);
        double slack = std::max(coarse / fine, fine / coarse);
        bool inside = fine >= est.lower_bound / 1.15 && fine <= est.upper_even * 1.15;
        ck.row("lp_in_volume_corridor", 1, 0.0, cfg.seed, 1.15, fine, est.upper_even,
               inside && slack <= 1.15);
        res.summary["indicator_refinement_slack"] = slack;
    }

    // A non-indicator pair: exponential covered by itself and by a wider one.
    {
        ConvexBody seg = ConvexBody::box({1.0});
        RadialFunction f = make_radial(seg, profile_norm());
        GridSpec spec = GridSpec::cube(1, 26.0, 1.0 / 4.0);
        GridFunction gf = sample(f, spec);
        CoveringLpResult self_cover = covering_lp(gf, gf);
        ck.row("self_cover_is_one", 1, 0.0, cfg.seed, 1e-9, self_cover.value, 1.0,
               std::abs(self_cover.value - 1.0) <= 1e-9);

        CoveringEstimate est = covering_volume_bounds(f, f);
        ck.row("self_cover_volume_lower", 1, 0.0, cfg.seed, 0.0, est.lower_bound, 1.0,
               est.lower_bound <= 1.0 + 1e-12);
    }

    // Monotonicity and sub-multiplicativity on nested indicators.
    {
        ConvexBody seg = ConvexBody::box({1.0});
        GridSpec spec = GridSpec::cube(1, 5.0, 1.0 / 8.0);
        auto ind = [&](double r) {
            return sample(make_radial(scale_body(seg, r), profile_indicator(1.0)), spec);
        };
        GridFunction f4 = ind(4.0), f2 = ind(2.0), f1 = ind(1.0);
        double n41 = covering_lp(f4, f1).value;
        double n42 = covering_lp(f4, f2).value;
        double n21 = covering_lp(f2, f1).value;
        ck.row("monotonicity", 1, 0.0, cfg.seed, 1e-9, n21, n41,
               n21 <= n41 + 1e-9);
        ck.row("submultiplicativity", 1, 0.0, cfg.seed, 1.1, n41, n42 * n21,
               n41 <= n42 * n21 * 1.1);
    }

    // Detail table for the n = 1 estimate pairs.
    {
        std::string detail =
            "pair_id,n,alpha,lower,upper_even,upper_infc,upper_ginf,lp,greedy,ratio\n";
        ConvexBody seg = ConvexBody::box({1.0});
        GridSpec spec = GridSpec::cube(1, 26.0, 1.0 / 4.0);
        std::vector<std::pair<RadialFunction, RadialFunction>> pairs;
        pairs.emplace_back(make_radial(scale_body(seg, 2.0), profile_indicator(1.0)),
                           make_radial(seg, profile_indicator(1.0)));
        pairs.emplace_back(make_radial(seg, profile_norm()),
                           make_radial(seg, profile_norm()));
        pairs.emplace_back(make_radial(seg, profile_norm()),
                           make_radial(seg, profile_indicator(1.0)));
        int id = 0;
        for (const auto& [f, g] : pairs) {
            CoveringEstimate est = covering_volume_bounds(f, g);
            CoveringLpResult lp = covering_lp(sample(f, spec), sample(g, spec));
            CoveringLpResult greedy =
                covering_lp(sample(f, spec), sample(g, spec), /*exact_limit=*/0);
            detail += fmt_int(id++) + ",1,1," + fmt(est.lower_bound) + "," +
                      fmt(est.upper_even) + "," + fmt(est.upper_infc) + "," +
                      fmt(est.upper_ginf) + "," + fmt(lp.value) + "," +
                      fmt(greedy.value) + "," + fmt(lp.value / est.lower_bound) + "\n";
            bool inside = lp.value >= est.lower_bound / 1.15 &&
                          lp.value <= est.upper_even * 1.15;
            ck.row("lp_pair_in_corridor", 1, 1.0, cfg.seed, 1.15, lp.value,
                   est.upper_even, inside);
            ck.row("greedy_is_upper_bound", 1, 1.0, cfg.seed, 1e-9, greedy.value,
                   lp.value, greedy.value >= lp.value - 1e-9);
        }
        res.extra_files.emplace_back("covering_estimates.csv", detail);
    }
}

// ------------------------------------------------------------------ duality

void suite_duality(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    Rng rng(cfg.seed);
    nlohmann::json reports = nlohmann::json::array();
    double corr_lo = std::numeric_limits<double>::infinity(), corr_hi = 0.0;
    int pair_id = 0;
    for (int n : cfg.ns) {
        if (n > 2) continue;
        double alpha = static_cast<double>(n) * n;
        ConvexBody ball = ConvexBody::ball(n, 1.0);
        ConvexBody cube = ConvexBody::box(Vec(n, 1.0));
        std::vector<std::pair<RadialFunction, RadialFunction>> pairs;
        pairs.emplace_back(make_radial(ball, profile_indicator(1.0)),
                           make_radial(cube, profile_indicator(1.0)));
        pairs.emplace_back(make_radial(ball, profile_norm()),
                           make_radial(ball, profile_indicator(1.0)));
        pairs.emplace_back(make_radial(cube, profile_norm()),
                           make_radial(cube, profile_norm()));
        pairs.emplace_back(make_psi(ball, 0.5, 1.0), make_radial(ball, profile_norm()));
        pairs.emplace_back(make_radial(scale_body(cube, 1.5), profile_indicator(1.0)),
                           make_radial(ball, profile_indicator(1.0)));
        for (int t = 0; t < 5; ++t) {
            ConvexBody K = random_vpolytope(rng, n, /*symmetric=*/true);
            pairs.emplace_back(make_radial(K, random_profile(rng)),
                               make_radial(K, random_profile(rng)));
        }
        for (auto& [phi, psi] : pairs) {
            GridSpec lp_spec = GridSpec::cube(n, 3.0, n == 1 ? 1.0 / 16.0 : 1.0 / 6.0);
            DualityReport rep;
            bool used_grid_lp = false;
            try {
                rep = duality_experiment(phi, psi, alpha, n <= 2 ? &lp_spec : nullptr);
                used_grid_lp = rep.used_lp;
            } catch (const std::exception&) {
                rep = duality_experiment(phi, psi, alpha, nullptr);
            }
            double root = std::pow(rep.ratio, 1.0 / n);
            corr_lo = std::min(corr_lo, root);
            corr_hi = std::max(corr_hi, root);
            res.rows.push_back({"duality_pair_" + fmt_int(pair_id), fmt_int(n),
                                fmt(alpha), fmt_int(static_cast<long long>(cfg.seed)),
                                fmt(0.0), fmt(rep.ratio),
                                used_grid_lp ? "lp" : "volume", "pass"});
            bool finite = std::isfinite(rep.ratio) && rep.ratio > 0.0;
            ck.row("ratio_positive_finite", n, alpha, cfg.seed, 0.0, rep.ratio, 0.0,
                   finite);
            reports.push_back({{"pair_id", pair_id},
                               {"n", rep.n},
                               {"alpha", rep.alpha},
                               {"primal_estimate", rep.primal_estimate},
                               {"dual_estimate", rep.dual_estimate},
                               {"ratio", rep.ratio},
                               {"ratio_lower", rep.ratio_lower},
                               {"ratio_upper", rep.ratio_upper},
                               {"used_lp", rep.used_lp}});
            ++pair_id;
        }
    }
    bool corridor_ok = corr_hi / corr_lo <= 8.0;
    ck.row("corridor_width", 0, 0.0, cfg.seed, 8.0, corr_hi / corr_lo, 8.0, corridor_ok);
    res.summary["corridor_lo_root"] = corr_lo;
    res.summary["corridor_hi_root"] = corr_hi;

    // Negative control: unscaled polarity on (ball indicator, euclidean
    // norm); the certified ratio corridor drifts down monotonically in n.
    double prev = std::numeric_limits<double>::infinity();
    bool drift = true;
    for (int n = 1; n <= 3; ++n) {
        ConvexBody ball = ConvexBody::ball(n, 1.0);
        RadialFunction phi = make_radial(ball, profile_indicator(1.0));
        RadialFunction psi = make_radial(ball, profile_norm());
        DualityReport rep = duality_experiment(phi, psi, 1.0, nullptr);
        if (rep.ratio_lower >= prev) drift = false;
        prev = rep.ratio_lower;
        res.rows.push_back({"negative_control", fmt_int(n), fmt(1.0),
                            fmt_int(static_cast<long long>(cfg.seed)), fmt(0.0),
                            fmt(rep.ratio_lower), fmt(rep.ratio_upper), "pass"});
    }
    ck.row("negative_control_drift", 0, 1.0, cfg.seed, 0.0, prev, 0.0, drift);
    res.extra_files.emplace_back("duality_reports.json", reports.dump(2) + "\n");
}

// ---------------------------------------------------------------- crosscheck

void suite_crosscheck(const ExperimentConfig& cfg, SuiteResult& res) {
    Check ck{res};
    double h = cfg.grid_h;
    double tol = 2.0 * h;

    // n = 1 at full range: norm, psi and indicator profiles. The sampling
    // window sees the restriction of phi to [-range, range]; polarity and
    // the gauge transform are window-sensitive, so their exact references
    // use the restricted profile (the window is a body homothet here).
    {
        ConvexBody seg = ConvexBody::box({1.0});
        std::vector<std::pair<std::string, RadialFunction>> funcs;
        funcs.emplace_back("abs", make_radial(seg, profile_norm()));
        funcs.emplace_back("psi_half", make_psi(seg, 0.5, 1.0));
        funcs.emplace_back("indicator", make_radial(seg, profile_indicator(1.0)));
        GridSpec spec = GridSpec::cube(1, cfg.grid_range, h);
        for (auto& [name, phi] : funcs) {
            GridFunction g = sample(phi, spec);
            RadialFunction windowed =
                make_radial(phi.body, restrict_profile(phi.profile, cfg.grid_range));

            double ie = integral_exp(phi);
            double ig = integral_grid(g);
            double itol = phi.profile.bounded ? h : 1e-3;  // O(h) at density jumps
            ck.row("integral_" + name, 1, 0.0, cfg.seed, itol, ig, ie,
                   rel_err(ig, ie) <= itol);

            for (TransformKind kind :
                 {TransformKind::Legendre, TransformKind::Polarity, TransformKind::GaugeJ}) {
                const RadialFunction& base =
                    (kind == TransformKind::Legendre) ? phi : windowed;
                RadialFunction exact = transform_radial(base, kind, 1.0);
                GridSpec out = spec;
                GridFunction gt = transform_grid(g, kind, 1.0, &out);
                double lvl = mass_level(exact, 0.99);
                double err = sup_error_vs_radial(gt, exact, lvl);
                std::string kname = kind == TransformKind::Legendre ? "legendre"
                                    : kind == TransformKind::Polarity ? "polarity"
                                                                      : "gauge_j";
                ck.row("transform_" + kname + "_" + name, 1, 0.0, cfg.seed, tol, err,
                       tol, err <= tol);
            }

            // Double transform returns the convex closure within 2h.
            GridFunction twice = transform_grid(
                transform_grid(g, TransformKind::Legendre, 1.0, &spec),
                TransformKind::Legendre, 1.0, &spec);
            double lvl = mass_level(phi, 0.99);
            double err2 = sup_error_vs_radial(twice, phi, lvl);
            ck.row("legendre_involution_" + name, 1, 0.0, cfg.seed, tol, err2, tol,
                   err2 <= tol);
        }
    }

    // n = 2 on a tighter window: box norm and ball indicator.
    {
        ConvexBody box2 = ConvexBody::box({1.0, 1.0});
        ConvexBody ball2 = ConvexBody::ball(2, 1.0);
        GridSpec spec = GridSpec::cube(2, 2.0, h);

        RadialFunction sup_norm = make_radial(box2, profile_norm());
        GridFunction g = sample(sup_norm, spec);
        RadialFunction exact_l = transform_radial(sup_norm, TransformKind::Legendre);
        GridFunction gl = transform_grid(g, TransformKind::Legendre, 1.0, &spec);
        double errl = sup_error_vs_radial(gl, exact_l, mass_level(exact_l, 0.99));
        ck.row("transform_legendre_boxnorm", 2, 0.0, cfg.seed, tol, errl, tol,
               errl <= tol);

        RadialFunction windowed = make_radial(box2, restrict_profile(profile_norm(), 2.0));
        RadialFunction exact_j = transform_radial(windowed, TransformKind::GaugeJ);
        GridFunction gj = transform_grid(g, TransformKind::GaugeJ, 1.0, &spec);
        double errj = sup_error_vs_radial(gj, exact_j, 0.999);
        ck.row("transform_gauge_j_boxnorm", 2, 0.0, cfg.seed, tol, errj, tol,
               errj <= tol);

        // Polarity on a bounded profile: the cube indicator maps to the
        // cross-polytope indicator.
        RadialFunction cube_ind = make_radial(box2, profile_indicator(1.0));
        GridFunction gi = sample(cube_ind, spec);
        RadialFunction exact_a = transform_radial(cube_ind, TransformKind::Polarity, 1.0);
        GridFunction ga = transform_grid(gi, TransformKind::Polarity, 1.0, &spec);
        double erra = sup_error_vs_radial(ga, exact_a, 0.5);
        ck.row("transform_polarity_cubeind", 2, 0.0, cfg.seed, tol, erra, tol,
               erra <= tol);

        // J consistency: GaugeJ == Legendre(Polarity(1)) within 2h.
        GridFunction via_la = transform_grid(
            transform_grid(gi, TransformKind::Polarity, 1.0, &spec),
            TransformKind::Legendre, 1.0, &spec);
        GridFunction via_j = transform_grid(gi, TransformKind::GaugeJ, 1.0, &spec);
        double wcons = 0.0;
        for (std::size_t i = 0; i < via_j.values.size(); ++i) {
            double a = via_j.values[i], b = via_la.values[i];
            Vec candidate = via_j.point_flat(i);
            double glen = gauge(box2, candidate);
            if (glen > 0.95) continue;  // compare inside the common domain
            if (std::isfinite(a) && std::isfinite(b))
                wcons = std::max(wcons, std::abs(a - b));
        }
        ck.row("gauge_j_consistency", 2, 0.0, cfg.seed, tol, wcons, tol, wcons <= tol);

        // Gaussian integral and level-set inclusion checks.
        GridFunction gauss = sample_gaussian(GridSpec::cube(2, 8.0, 1.0 / 16.0));
        double ig = integral_grid(gauss);
        ck.row("gaussian_integral", 2, 0.0, cfg.seed, 1e-2, ig, 2.0 * std::numbers::pi,
               std::abs(ig - 2.0 * std::numbers::pi) <= 1e-2);
        double lp2 = integral_grid(gauss) *
                     integral_grid(transform_grid(gauss, TransformKind::Legendre, 1.0,
                                                  &gauss.spec));
        ck.row("gaussian_legendre_product", 2, 0.0, cfg.seed, 5e-2, lp2,
               std::pow(2.0 * std::numbers::pi, 2),
               rel_err(lp2, std::pow(2.0 * std::numbers::pi, 2)) <= 5e-2);

        GridSpec lspec = GridSpec::cube(2, 2.0, 1.0 / 16.0);
        GridFunction gind = sample(cube_ind, lspec);
        InclusionCheck inc = level_inclusion_check(gind, 1.0, 1.0, 1.0);
        ck.row("level_inclusion", 2, 1.0, cfg.seed, 1e-9, inc.worst_slack, 0.0, inc.ok);
        // Small t makes the inclusion nearly tight, so an adversarial 0.9
        // shrink of the polar must be caught.
        InclusionCheck bad = level_inclusion_check(gind, 1.0, 1.0, 0.01, 0.9);
        ck.row("level_inclusion_selftest", 2, 1.0, cfg.seed, 0.0, bad.worst_slack, 0.0,
               !bad.ok);
    }

    // Convexity validator on sampled functions.
    {
        GridFunction g1 =
            sample(make_radial(ConvexBody::ball(3, 1.0), profile_norm()),
                   GridSpec::cube(3, 2.0, 1.0 / 8.0));
        double viol = discrete_convexity_violation(g1);
        ck.row("discrete_convexity", 3, 0.0, cfg.seed, 1e-9, viol, 0.0, viol <= 1e-9);
    }
}

}  // namespace

long double compute_rho_ld(int n) {
    auto q = [n](long double x) {
        long double s = sqrtl(1.0L - x);
        return (1.0L - s) * powl(x, -1.0L / (n + 2)) * expl(s);
    };
    long double fact = 1.0L;
    for (int i = 2; i <= n; ++i) fact *= i;
    long double target = powl(2.0L * powl(fact, 1.0L / n) / (n + 2),
                              static_cast<long double>(n) / (n + 2));
    long double lo = 1e-18L, hi = 1.0L;
    for (int it = 0; it < 400; ++it) {
        long double mid = 0.5L * (lo + hi);
        if (q(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5L * (lo + hi) / 4.0L;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    if (j.contains("suite")) cfg.suite = j.at("suite").get<std::string>();
    if (j.contains("n")) cfg.ns = j.at("n").get<std::vector<int>>();
    if (j.contains("alpha") && j.at("alpha").is_array())
        cfg.alphas = j.at("alpha").get<std::vector<double>>();
    if (j.contains("families"))
        cfg.families = j.at("families").get<std::vector<std::string>>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (g.contains("h")) cfg.grid_h = g.at("h").get<double>();
        if (g.contains("range")) cfg.grid_range = g.at("range").get<double>();
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (cfg.ns.empty()) throw std::invalid_argument("config: empty n list");
    return cfg;
}

SuiteResult run_suite(const ExperimentConfig& cfg) {
    SuiteResult res;
    res.name = cfg.suite;
    res.header = {"check", "n", "alpha", "seed", "tol", "value", "reference", "status"};
    res.summary["suite"] = cfg.suite;
    res.summary["seed"] = cfg.seed;
    if (cfg.suite == "transforms")
        suite_transforms(cfg, res);
    else if (cfg.suite == "exact-jl")
        suite_exact_jl(cfg, res);
    else if (cfg.suite == "tight-jl")
        suite_tight_jl(cfg, res);
    else if (cfg.suite == "mahler")
        suite_mahler(cfg, res);
    else if (cfg.suite == "rho-table")
        suite_rho_table(cfg, res);
    else if (cfg.suite == "covering")
        suite_covering(cfg, res);
    else if (cfg.suite == "duality")
        suite_duality(cfg, res);
    else if (cfg.suite == "crosscheck")
        suite_crosscheck(cfg, res);
    else
        throw std::invalid_argument("unknown suite: " + cfg.suite);
    res.summary["pass"] = res.pass;
    return res;
}

std::string write_suite_outputs(const SuiteResult& result, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string csv_path = out_dir + "/" + result.name + ".csv";
    std::vector<std::vector<std::string>> rows = result.rows;
    std::sort(rows.begin(), rows.end());
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path);
    for (std::size_t i = 0; i < result.header.size(); ++i)
        csv << result.header[i] << (i + 1 < result.header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            csv << row[i] << (i + 1 < row.size() ? "," : "\n");
    std::ofstream js(out_dir + "/" + result.name + "_summary.json");
    js << result.summary.dump(2) << "\n";
    for (const auto& [name, content] : result.extra_files) {
        std::ofstream extra(out_dir + "/" + name);
        extra << content;
    }
    return csv_path;
}

std::string export_plot_data(const std::string& kind, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::string path = cfg.out_dir + "/plot_" + kind + ".csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    if (kind == "h-curve") {
        int n = cfg.ns.at(0);
        double alpha = cfg.alphas.empty() ? 2.0 : cfg.alphas[0];
        out << "z,h_value,h_derivative\n";
        for (int i = 0; i <= 400; ++i) {
            double z = std::pow(10.0, -2.0 + 3.0 * i / 400.0);
            HValue hv = h_eval(n, alpha, z);
            out << fmt(z) << "," << fmt(hv.value) << "," << fmt(hv.derivative) << "\n";
        }
    } else if (kind == "lambda-vs-alpha") {
        out << "n,alpha,lambda,r_star,t0_star,gamma\n";
        for (int n : cfg.ns) {
            double thr = compute_rho(n) * (n + 2.0) * (n + 2.0);
            for (int i = 1; i <= 25; ++i) {
                double alpha = thr * (0.3 + 1.7 * i / 25.0);
                LambdaMax lm = lambda_max(n, alpha);
                double gamma = lm.lambda * std::pow(alpha, n) / factorial(n);
                out << n << "," << fmt(alpha) << "," << fmt(lm.lambda) << ","
                    << fmt(lm.r_star) << "," << fmt(lm.t0_star) << "," << fmt(gamma)
                    << "\n";
            }
        }
    } else if (kind == "gamma-vs-n") {
        out << "n,alpha,gamma\n";
        for (int n : cfg.ns) {
            double thr = compute_rho(n) * (n + 2.0) * (n + 2.0);
            double alpha = std::sqrt(thr);  // geometric middle of (1, thr)
            if (alpha <= 1.0) alpha = 0.5 * (1.0 + thr);
            LambdaMax lm = lambda_max(n, alpha);
            out << n << "," << fmt(alpha) << ","
                << fmt(lm.lambda * std::pow(alpha, n) / factorial(n)) << "\n";
        }
    } else if (kind == "covering-ratios") {
        std::ifstream in(cfg.out_dir + "/covering.csv");
        if (!in)
            throw std::runtime_error("covering-ratios: run the covering suite first");
        std::string line;
        std::getline(in, line);
        if (line.find("check") == std::string::npos)
            throw std::runtime_error("covering-ratios: missing columns");
        out << line << "\n";
        while (std::getline(in, line)) out << line << "\n";
    } else {
        throw std::invalid_argument("unknown export kind: " + kind);
    }
    return path;
}

}  // namespace cdl
