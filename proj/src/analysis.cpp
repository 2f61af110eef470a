#include "cdl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cdl/radial.hpp"

namespace cdl {

namespace {

constexpr double kRootTol = 1e-12;
constexpr int kMaxIter = 200;

double log_h(int n, double alpha, double z) {
    return std::log(alpha) + z - alpha / z - (n + 2) * std::log(z);
}

// Bisection for h(z) = lambda on a bracket where h - lambda changes sign.
double bisect_h(int n, double alpha, double lambda, double lo, double hi) {
    double llam = std::log(lambda);
    double flo = log_h(n, alpha, lo) - llam;
    double fhi = log_h(n, alpha, hi) - llam;
    if (flo * fhi > 0.0) throw std::runtime_error("bisect_h: bracket does not straddle");
    for (int it = 0; it < kMaxIter; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = log_h(n, alpha, mid) - llam;
        if (fm == 0.0 || (hi - lo) < kRootTol * (1.0 + mid)) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

HValue h_eval(int n, double alpha, double z) {
    if (z <= 0.0) throw std::invalid_argument("h_eval: z must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("h_eval: alpha must be positive");
    double v = std::exp(log_h(n, alpha, z));
    double d = v * (1.0 + alpha / (z * z) - (n + 2) / z);
    return {v, d};
}

std::optional<std::pair<double, double>> h_critical_points(int n, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("h_critical_points: alpha <= 0");
    double s = n + 2.0;
    double disc = 1.0 - 4.0 * alpha / (s * s);
    if (disc <= 0.0) return std::nullopt;
    double root = std::sqrt(disc);
    return std::make_pair(0.5 * s * (1.0 - root), 0.5 * s * (1.0 + root));
}

SignPattern classify_sign_pattern(int n, double alpha, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("classify_sign_pattern: lambda <= 0");
    auto crit = h_critical_points(n, alpha);
    SignPattern out;
    if (!crit || h_eval(n, alpha, crit->first).value <= lambda ||
        h_eval(n, alpha, crit->second).value >= lambda) {
        out.three_roots = false;
        // Single crossing from below; locate it on the relevant increasing
        // branch, doubling the bracket upward as needed.
        double lo, hi;
        if (!crit) {
            lo = 1e-8;
            hi = 1.0;
        } else if (h_eval(n, alpha, crit->second).value >= lambda) {
            lo = 1e-8;
            hi = crit->first;
        } else {
            lo = crit->second;
            hi = 2.0 * crit->second;
        }
        while (h_eval(n, alpha, hi).value < lambda) {
            hi *= 2.0;
            if (hi > 1e12) throw std::runtime_error("classify_sign_pattern: no crossing found");
        }
        if (h_eval(n, alpha, lo).value > lambda) {
            // Crossing lies below lo on the first branch.
            lo = 1e-8;
        }
        out.z0 = bisect_h(n, alpha, lambda, lo, hi);
        return out;
    }
    out.three_roots = true;
    double z1lo = 1e-10;
    while (h_eval(n, alpha, z1lo).value >= lambda) z1lo *= 0.5;
    out.z1 = bisect_h(n, alpha, lambda, z1lo, crit->first);
    out.z2 = bisect_h(n, alpha, lambda, crit->first, crit->second);
    double hi = 2.0 * crit->second;
    while (h_eval(n, alpha, hi).value < lambda) hi *= 2.0;
    out.z3 = bisect_h(n, alpha, lambda, crit->second, hi);
    return out;
}

double q_function(int n, double x) {
    if (x <= 0.0 || x > 1.0) throw std::invalid_argument("q_function: x must be in (0,1]");
    double s = std::sqrt(1.0 - x);
    return (1.0 - s) * std::pow(x, -1.0 / (n + 2)) * std::exp(s);
}

double q_target(int n) {
    double root = std::exp(std::lgamma(n + 1.0) / n);  // n!^{1/n}
    return std::pow(2.0 * root / (n + 2), static_cast<double>(n) / (n + 2));
}

double compute_rho(int n) {
    if (n < 1) throw std::invalid_argument("compute_rho: n < 1");
    double target = q_target(n);
    double lo = 1e-14, hi = 1.0;
    for (int it = 0; it < 240; ++it) {
        double mid = 0.5 * (lo + hi);
        if (q_function(n, mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi) / 4.0;
}

double sigma(int n, double alpha, double r, double t0) {
    RadiusFunction p = psi_radius(r, t0);
    double denom = exp_level_integral(p, n, LevelWeight::Exp);
    double numer = exp_level_integral(p, n, LevelWeight::JExp, alpha);
    return numer / denom;
}

LambdaMax lambda_max(int n, double alpha) {
    double inv_fact = 1.0 / factorial(n);
    SignPattern pattern = classify_sign_pattern(n, alpha, inv_fact);
    if (!pattern.three_roots) return {1.0, 1.0, inv_fact};

    // Maximize sigma over [0,1] x [z1,z2]: coarse grid scan followed by
    // per-coordinate golden-section refinement.
    const int grid = 256;
    double best = -1.0, br = 1.0, bt = pattern.z1;
    for (int i = 0; i <= grid; ++i) {
        double r = static_cast<double>(i) / grid;
        for (int j = 0; j <= grid; ++j) {
            double t0 = pattern.z1 + (pattern.z2 - pattern.z1) * j / grid;
            double v = sigma(n, alpha, r, t0);
            if (v > best) {
                best = v;
                br = r;
                bt = t0;
            }
        }
    }
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto golden = [&](auto f, double lo, double hi) {
        double c = hi - gr * (hi - lo);
        double d = lo + gr * (hi - lo);
        double fc = f(c), fd = f(d);
        for (int it = 0; it < 120 && hi - lo > 1e-11; ++it) {
            if (fc > fd) {
                hi = d;
                d = c;
                fd = fc;
                c = hi - gr * (hi - lo);
                fc = f(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + gr * (hi - lo);
                fd = f(d);
            }
        }
        return 0.5 * (lo + hi);
    };
    double span_r = 1.0 / grid, span_t = (pattern.z2 - pattern.z1) / grid;
    for (int round = 0; round < 30; ++round) {
        double r_prev = br, t_prev = bt;
        br = golden([&](double r) { return sigma(n, alpha, r, bt); },
                    std::max(0.0, br - span_r), std::min(1.0, br + span_r));
        bt = golden([&](double t) { return sigma(n, alpha, br, t); },
                    std::max(pattern.z1, bt - span_t), std::min(pattern.z2, bt + span_t));
        if (std::abs(br - r_prev) < 1e-11 && std::abs(bt - t_prev) < 1e-11) break;
    }
    best = sigma(n, alpha, br, bt);
    if (best < inv_fact) return {1.0, 1.0, inv_fact};
    return {br, bt, best};
}

PivotEnvelope pivot_construction(const RadiusFunction& psi, double z1, double z2,
                                 double z3) {
    if (!(0.0 < z1 && z1 < z2 && z2 < z3))
        throw std::invalid_argument("pivot_construction: need 0 < z1 < z2 < z3");
    double a = psi(z1) / z1;
    if (a <= 0.0)
        throw std::domain_error("pivot_construction: psi vanishes on (0, z1]");
    double b = (psi(z3) - psi(z2)) / (z3 - z2);
    double r = b / a;
    double t0;
    if (a - b < 1e-12 * a) {
        t0 = 0.5 * (z1 + z2);
        r = 1.0;
    } else {
        t0 = (psi(z2) - b * z2) / (a - b);
        t0 = std::clamp(t0, z1, z2);
    }
    return {a, r, t0};
}

RegimeReport regime_report(int n, double alpha) {
    RegimeReport rep;
    rep.n = n;
    rep.alpha = alpha;
    rep.rho_n = compute_rho(n);
    rep.threshold = rep.rho_n * (n + 2.0) * (n + 2.0);
    LambdaMax lm = lambda_max(n, alpha);
    rep.lambda = lm.lambda;
    rep.r_star = lm.r_star;
    rep.t0_star = lm.t0_star;
    rep.gamma = lm.lambda * std::pow(alpha, n) / factorial(n);
    rep.delta = std::pow(rep.gamma, 1.0 / n) - 1.0;
    rep.regime = (alpha >= rep.threshold) ? "exact" : "tight";
    rep.alpha_above_one = alpha > 1.0;

    // Product identity: the infimum is attained at the transform of the
    // maximizer; check inf * sup == alpha^{-n} through the exact pipeline.
    ConvexBody K = ConvexBody::ball(n, 1.0);
    RadialFunction top = make_psi(K, lm.r_star, lm.t0_star);
    double sup_ratio = santalo_ratio(top, alpha, Side::Left);
    RadialFunction bottom = transform_radial(top, TransformKind::JLeft, alpha);
    double inf_ratio = santalo_ratio(bottom, alpha, Side::Left);
    rep.product_identity_ok =
        std::abs(inf_ratio * sup_ratio * std::pow(alpha, n) - 1.0) < 1e-9;

    // Mahler corridor on a small centered family.
    double two_pi = 2.0 * std::numbers::pi;
    double upper = std::pow(two_pi, n) * rep.lambda;
    rep.upper_bound_ok = true;
    rep.measured_lower_c = std::numeric_limits<double>::infinity();
    std::vector<RadialFunction> tests;
    tests.push_back(make_radial(K, profile_norm()));
    tests.push_back(make_radial(K, profile_indicator(1.0)));
    tests.push_back(make_psi(K, 0.5, 1.0));
    for (const RadialFunction& phi : tests) {
        double p = mahler_product_A(phi, alpha);
        if (p > upper * (1.0 + 1e-9)) rep.upper_bound_ok = false;
        double c = std::pow(p, 1.0 / n) * alpha / std::exp(std::lgamma(n + 1.0) / n);
        rep.measured_lower_c = std::min(rep.measured_lower_c, c);
    }
    return rep;
}

}  // namespace cdl
