#pragma once

#include <optional>

#include "cdl/bodies.hpp"
#include "cdl/profile.hpp"

namespace cdl {

/// phi(x) = u(||x||_K): a geometric convex function whose sublevel sets are
/// homothets of K, so every transform reduces exactly to the 1-D profile.
struct RadialFunction {
    ConvexBody body;
    Profile profile;

    double operator()(const Vec& x) const;
    int dim() const { return body.dim; }
};

RadialFunction make_radial(ConvexBody body, Profile profile);

/// The two-slope extremal family: slope 1 up to t0, slope 1/r beyond
/// (bounded at t0 when r = 0). r must lie in [0,1], t0 > 0.
RadialFunction make_psi(const ConvexBody& K, double r, double t0);

/// p_{r,t0}: the level radius of make_psi, independent of K.
RadiusFunction psi_radius(double r, double t0);

RadialFunction transform_radial(const RadialFunction& phi, TransformKind kind,
                                double alpha = 1.0);

/// integral e^{-phi} over R^n, exact.
double integral_exp(const RadialFunction& phi);

enum class Side { Left, Right };

/// Santalo ratio of the scaled gauge transform:
///   left:  integral e^{-J^l_alpha phi} / integral e^{-phi}
///   right: alpha^n times the left ratio.
double santalo_ratio(const RadialFunction& phi, double alpha, Side side);

/// Mahler product for the scaled polarity: integral e^{-phi} *
/// integral e^{-A_alpha phi}.
double mahler_product_A(const RadialFunction& phi, double alpha);

/// integral e^{-phi} * integral e^{-L phi}; requires the barycenter of
/// e^{-phi} at the origin (within 1e-9).
double legendre_product(const RadialFunction& phi);

/// Barycenter of e^{-phi} (first moment over mass).
Vec barycenter(const RadialFunction& phi);

/// Sublevel set {phi <= t} as a scaled copy of K; nullopt marks the
/// degenerate (zero-radius) level.
std::optional<ConvexBody> level_set(const RadialFunction& phi, double t);

}  // namespace cdl
