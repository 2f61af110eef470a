#pragma once

#include <optional>
#include <vector>

namespace cdl {

/// One-dimensional geometric convex profile u : [0,inf) -> [0,inf].
///
/// Piecewise linear, convex, nondecreasing, u(0) = 0. Stored as knots
/// 0 = r_0 < r_1 < ... < r_m with values u(r_i), plus a tail: either a
/// final slope (function continues linearly forever) or a bounded domain
/// (u = +inf beyond the last knot, the stored last value being the left
/// limit). +inf never enters arithmetic; it exists only as the bounded
/// marker.
///
/// This class is closed under the Legendre transform, the polarity
/// transform, the gauge transform, and inf-convolution, so every
/// transform here is exact.
struct Profile {
    std::vector<double> knots;   // knots[0] == 0
    std::vector<double> values;  // values[0] == 0
    bool bounded = false;        // u = +inf beyond knots.back()
    double tail_slope = 0.0;     // used when !bounded

    double operator()(double r) const;

    // Slope of segment i (between knots i and i+1); i == segment_count()-1
    // refers to the tail for unbounded profiles.
    std::size_t segment_count() const;
    double segment_slope(std::size_t i) const;

    double domain_end() const;  // knots.back() if bounded, else +inf

    // Largest r with u(r) == 0; +inf for the identically-zero profile.
    double zero_set_end() const;

    bool is_zero() const;             // u == 0 on all of [0,inf)
    bool is_origin_indicator() const; // domain == {0}

    // 0 < integral(e^-u-induced mass) < inf; excludes the zero profile and
    // the origin indicator.
    bool integrable() const;
};

/// Level-radius function rho : [0,inf) -> [0,inf), piecewise linear,
/// concave, nondecreasing; rho(0) >= 0. rho(t) is the scale factor of the
/// t-sublevel set of the radial function built from the matching profile.
struct RadiusFunction {
    std::vector<double> knots;   // knots[0] == 0
    std::vector<double> values;  // rho(knots[i])
    double tail_slope = 0.0;     // slope beyond the last knot

    double operator()(double t) const;
    double segment_slope(std::size_t i) const;  // i in [0, knots.size()-1]; last = tail
};

// Validating factories; both canonicalize (merge collinear knots, snap
// tiny values, check convexity/concavity).
Profile make_profile(std::vector<double> knots, std::vector<double> values,
                     bool bounded, double tail_slope = 0.0);
RadiusFunction make_radius(std::vector<double> knots, std::vector<double> values,
                           double tail_slope);

Profile profile_norm();                          // u(r) = r
Profile profile_indicator(double radius);        // 0 on [0,radius], +inf after
Profile profile_zero();                          // u == 0
Profile profile_origin_indicator();              // domain {0}

enum class TransformKind { Legendre, Polarity, GaugeJ, JLeft, JRight };

/// Exact transform of a profile. `alpha` applies to Polarity/JLeft/JRight
/// and must be positive; it is ignored for Legendre and GaugeJ.
Profile transform_profile(const Profile& u, TransformKind kind, double alpha = 1.0);

// Pointwise algebra (exact on the PL class).
Profile scale_values(const Profile& u, double c);           // c*u
Profile scale_argument(const Profile& u, double c);         // r -> u(r/c)
Profile add_profiles(const Profile& u, const Profile& v);   // u + v
Profile inf_conv_profile(const Profile& u, const Profile& v);
Profile g_inf_conv_profile(const Profile& u, const Profile& v);

/// Restriction to [0, R]: equal to u there, +inf beyond (the view a finite
/// sampling window has of u).
Profile restrict_profile(const Profile& u, double R);

/// Generalized inverse rho(t) = sup{ r : u(r) <= t }. Throws for the
/// identically-zero profile (inverse is infinite).
RadiusFunction invert_profile(const Profile& u);

/// Inverse direction: u(r) = inf{ t : rho(t) >= r }, the lsc closure.
Profile radius_to_profile(const RadiusFunction& rho);

/// The level-radius of the scaled gauge transform: t -> (t/alpha) * rho(alpha/t).
RadiusFunction gauge_left_radius(const RadiusFunction& rho, double alpha);

enum class LevelWeight { Exp, JExp };

/// Closed-form level-set integrals of a radius function:
///   Exp       integral_0^inf e^{-t} rho(t)^n dt
///   JExp      integral_0^inf alpha e^{-alpha/z} z^{-(n+2)} rho(z)^n dz
/// Both evaluate per PL segment through incomplete-gamma kernels.
double exp_level_integral(const RadiusFunction& rho, int n, LevelWeight weight,
                          double alpha = 1.0);

/// integral_0^inf r^k e^{-u(r)} dr (radial moments; k >= 0).
double profile_moment(const Profile& u, int k);

/// Exact upper tail integral U_k(x) = integral_x^inf t^k e^{-t} dt for
/// integer k >= 0 (equals k! at x = 0).
double upper_gamma_int(int k, double x);

// Comparison helpers used by the involution suites: exact structural match
// of knots/values/tails within `tol`.
bool profiles_equal(const Profile& a, const Profile& b, double tol);

}  // namespace cdl
