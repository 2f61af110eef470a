#pragma once

#include <optional>
#include <string>

#include "cdl/profile.hpp"

namespace cdl {

/// Kernel h_alpha(z) = alpha e^{z - alpha/z} / z^{n+2}, evaluated in
/// log space together with its derivative.
struct HValue {
    double value;
    double derivative;
};
HValue h_eval(int n, double alpha, double z);

/// Critical points of h (local max zeta1, local min zeta2); absent when
/// alpha >= (n+2)^2/4 and h is strictly increasing.
std::optional<std::pair<double, double>> h_critical_points(int n, double alpha);

/// Sign pattern of h_alpha - lambda on (0,inf).
struct SignPattern {
    bool three_roots = false;
    double z0 = 0.0;              // single crossing (one-crossing case)
    double z1 = 0.0, z2 = 0.0, z3 = 0.0;  // three-root case
};
SignPattern classify_sign_pattern(int n, double alpha, double lambda);

/// The unique rho_n in (0, 1/4) with q(4 rho_n) = (2 n!^{1/n}/(n+2))^{n/(n+2)},
/// where q(x) = (1 - sqrt(1-x)) x^{-1/(n+2)} e^{sqrt(1-x)}.
double compute_rho(int n);
double q_function(int n, double x);
double q_target(int n);

/// Santalo ratio of the two-slope family psi_{K,r,t0}: K-independent.
double sigma(int n, double alpha, double r, double t0);

/// Maximizer of the left Santalo ratio over all geometric convex functions;
/// reduces to maximizing sigma over [0,1] x [z1,z2] below the exact-regime
/// threshold.
struct LambdaMax {
    double r_star;
    double t0_star;
    double lambda;
};
LambdaMax lambda_max(int n, double alpha);

/// Two-line pivot envelope of a concave increasing psi against the
/// three-root pattern: a = psi(z1)/z1, slope ratio r = b/a, pivot abscissa
/// t0 with psi >= a p_{r,t0} on [0,z1] u [z2,z3] and <= elsewhere.
struct PivotEnvelope {
    double a;
    double r;
    double t0;
};
PivotEnvelope pivot_construction(const RadiusFunction& psi, double z1, double z2,
                                 double z3);

struct RegimeReport {
    int n;
    double alpha;
    double rho_n;
    double threshold;   // rho_n (n+2)^2
    double lambda;      // lambda_n(alpha)
    double r_star;
    double t0_star;
    double gamma;       // lambda alpha^n / n!
    double delta;       // gamma^{1/n} - 1
    std::string regime; // "exact" or "tight"
    bool alpha_above_one;      // alpha > 1
    bool product_identity_ok;  // inf * sup == alpha^{-n}
    bool upper_bound_ok;       // measured P_A <= (2 pi)^n lambda on test family
    double measured_lower_c;   // min over tests of (P_A)^{1/n} alpha / n!^{1/n}
};
RegimeReport regime_report(int n, double alpha);

double factorial(int n);

}  // namespace cdl
