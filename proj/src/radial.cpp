#include "cdl/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace cdl {

double RadialFunction::operator()(const Vec& x) const { return profile(gauge(body, x)); }

RadialFunction make_radial(ConvexBody body, Profile profile) {
    return RadialFunction{std::move(body), std::move(profile)};
}

RadiusFunction psi_radius(double r, double t0) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("psi: r must be in [0,1]");
    if (t0 <= 0.0) throw std::invalid_argument("psi: t0 must be positive");
    return make_radius({0.0, t0}, {0.0, t0}, r);
}

RadialFunction make_psi(const ConvexBody& K, double r, double t0) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("psi: r must be in [0,1]");
    if (t0 <= 0.0) throw std::invalid_argument("psi: t0 must be positive");
    Profile u;
    if (r == 0.0) {
        u = make_profile({0.0, t0}, {0.0, t0}, true);
    } else {
        u = make_profile({0.0, t0}, {0.0, t0}, false, 1.0 / r);
    }
    return {K, std::move(u)};
}

RadialFunction transform_radial(const RadialFunction& phi, TransformKind kind,
                                double alpha) {
    Profile t = transform_profile(phi.profile, kind, alpha);
    switch (kind) {
        case TransformKind::Legendre:
        case TransformKind::Polarity:
            return {polar(phi.body), std::move(t)};
        case TransformKind::GaugeJ:
        case TransformKind::JLeft:
        case TransformKind::JRight:
            return {phi.body, std::move(t)};
    }
    throw std::logic_error("transform_radial: unknown kind");
}

double integral_exp(const RadialFunction& phi) {
    if (!phi.profile.integrable())
        throw std::domain_error("integral_exp: function outside the integrable class");
    RadiusFunction rho = invert_profile(phi.profile);
    return volume(phi.body) * exp_level_integral(rho, phi.dim(), LevelWeight::Exp);
}

double santalo_ratio(const RadialFunction& phi, double alpha, Side side) {
    if (alpha <= 0.0) throw std::invalid_argument("santalo_ratio: alpha <= 0");
    if (!phi.profile.integrable())
        throw std::domain_error("santalo_ratio: function outside the integrable class");
    RadiusFunction rho = invert_profile(phi.profile);
    int n = phi.dim();
    double denom = exp_level_integral(rho, n, LevelWeight::Exp);
    double numer = exp_level_integral(rho, n, LevelWeight::JExp, alpha);
    double left = numer / denom;
    return side == Side::Left ? left : std::pow(alpha, n) * left;
}

double mahler_product_A(const RadialFunction& phi, double alpha) {
    RadialFunction dual = transform_radial(phi, TransformKind::Polarity, alpha);
    return integral_exp(phi) * integral_exp(dual);
}

double legendre_product(const RadialFunction& phi) {
    Vec b = barycenter(phi);
    double len = 0.0;
    for (double c : b) len += c * c;
    if (std::sqrt(len) > 1e-9)
        throw std::invalid_argument("legendre_product: barycenter not at the origin");
    RadialFunction dual = transform_radial(phi, TransformKind::Legendre);
    return integral_exp(phi) * integral_exp(dual);
}

Vec barycenter(const RadialFunction& phi) {
    if (!phi.profile.integrable())
        throw std::domain_error("barycenter: function outside the integrable class");
    int n = phi.dim();
    // For mass density g(||x||_K): total = Vol(K) n M_{n-1}, first moment =
    // Vol(K) centroid(K) (n+1) M_n, with M_k the radial moments of e^{-u}.
    double mn = profile_moment(phi.profile, n);
    double mn1 = profile_moment(phi.profile, n - 1);
    Vec c = centroid(phi.body);
    double f = (n + 1) * mn / (n * mn1);
    for (double& x : c) x *= f;
    return c;
}

std::optional<ConvexBody> level_set(const RadialFunction& phi, double t) {
    if (t < 0.0) throw std::invalid_argument("level_set: t < 0");
    RadiusFunction rho = invert_profile(phi.profile);
    double r = rho(t);
    if (r <= 0.0) return std::nullopt;
    return scale_body(phi.body, r);
}

}  // namespace cdl
