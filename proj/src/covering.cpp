#include "cdl/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdl/simplex_lp.hpp"

namespace cdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_body(const RadialFunction& a, const RadialFunction& b) {
    return a.dim() == b.dim() && bodies_equal(a.body, b.body, 1e-9);
}

// Factor c with B = cA, probed on one support direction and verified.
std::optional<double> homothety_factor(const ConvexBody& A, const ConvexBody& B) {
    if (A.dim != B.dim) return std::nullopt;
    Vec e(A.dim, 0.0);
    e[0] = 1.0;
    double sa = support(A, e), sb = support(B, e);
    if (sa <= 0.0 || sb <= 0.0) return std::nullopt;
    double c = sb / sa;
    if (bodies_equal(scale_body(A, c), B, 1e-9)) return c;
    return std::nullopt;
}

// Rewrites psi on the body of phi when the two bodies are homothetic:
// v(||x||_{cK}) = v(||x||_K / c).
std::optional<RadialFunction> rebase_onto(const RadialFunction& phi,
                                          const RadialFunction& psi) {
    if (same_body(phi, psi)) return psi;
    auto c = homothety_factor(phi.body, psi.body);
    if (!c) return std::nullopt;
    return make_radial(phi.body, scale_argument(psi.profile, *c));
}

// Axis-aligned reach of the region holding essentially all of e^{-phi}.
double effective_radius(const RadialFunction& phi) {
    double t = mass_level(phi, 0.9999);
    double reach = invert_profile(phi.profile)(std::max(t, 1.0));
    double circ = 0.0;
    for (int a = 0; a < phi.dim(); ++a) {
        Vec e(phi.dim(), 0.0);
        e[a] = 1.0;
        circ = std::max(circ, support(phi.body, e));
        e[a] = -1.0;
        circ = std::max(circ, support(phi.body, e));
    }
    return reach * circ;
}

double integral_exp_scaled(const RadialFunction& phi, double scale) {
    return integral_exp(make_radial(phi.body, scale_values(phi.profile, scale)));
}

void check_aligned(const GridSpec& a, const GridSpec& b) {
    if (a.dim != b.dim || std::abs(a.h - b.h) > 1e-15)
        throw std::invalid_argument("covering_lp: grids not aligned (step mismatch)");
    for (int i = 0; i < a.dim; ++i) {
        for (double v : {a.lo[i], b.lo[i], a.hi[i], b.hi[i]}) {
            double q = v / a.h;
            if (std::abs(q - std::llround(q)) > 1e-9)
                throw std::invalid_argument("covering_lp: grids not lattice-aligned");
        }
    }
}

GridFunction add_grids(const GridFunction& f, const GridFunction& g) {
    if (f.spec.dim != g.spec.dim || f.values.size() != g.values.size())
        throw std::invalid_argument("add_grids: shape mismatch");
    GridFunction out = f;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        double a = f.values[i], b = g.values[i];
        out.values[i] = (std::isfinite(a) && std::isfinite(b)) ? a + b : kInf;
    }
    out.provenance = "sum";
    return out;
}

GridFunction grid_inf_conv(const GridFunction& f, const GridFunction& g,
                           const GridSpec& out) {
    GridFunction lf = transform_grid(f, TransformKind::Legendre, 1.0, &out);
    GridFunction lg = transform_grid(g, TransformKind::Legendre, 1.0, &out);
    GridFunction s = add_grids(lf, lg);
    return transform_grid(s, TransformKind::Legendre, 1.0, &out);
}

GridFunction grid_g_inf_conv(const GridFunction& f, const GridFunction& g,
                             const GridSpec& out) {
    GridFunction jf = transform_grid(f, TransformKind::GaugeJ, 1.0, &out);
    GridFunction jg = transform_grid(g, TransformKind::GaugeJ, 1.0, &out);
    GridFunction box = grid_inf_conv(jf, jg, out);
    return transform_grid(box, TransformKind::GaugeJ, 1.0, &out);
}

}  // namespace

RadialFunction reflect(const RadialFunction& phi) {
    return {negate_body(phi.body), phi.profile};
}

RadialFunction inf_conv(const RadialFunction& phi, const RadialFunction& psi) {
    auto reb = rebase_onto(phi, psi);
    if (!reb)
        throw std::invalid_argument("inf_conv: bodies differ (use the grid fallback)");
    return {phi.body, inf_conv_profile(phi.profile, reb->profile)};
}

RadialFunction g_inf_conv(const RadialFunction& phi, const RadialFunction& psi) {
    auto reb = rebase_onto(phi, psi);
    if (!reb)
        throw std::invalid_argument("g_inf_conv: bodies differ (use the grid fallback)");
    return {phi.body, g_inf_conv_profile(phi.profile, reb->profile)};
}

CoveringEstimate covering_volume_bounds(const RadialFunction& phi,
                                        const RadialFunction& psi,
                                        const GridSpec* fallback) {
    if (phi.dim() != psi.dim())
        throw std::invalid_argument("covering_volume_bounds: dimension mismatch");
    int n = phi.dim();
    CoveringEstimate est;

    double int_2phi = integral_exp_scaled(phi, 2.0);
    double int_2psi = integral_exp_scaled(psi, 2.0);  // = int e^{-2 psi^-}
    RadialFunction psi_ref = reflect(psi);

    double int_sum;
    if (auto reb = rebase_onto(phi, psi)) {
        int_sum = integral_exp(
            make_radial(phi.body, add_profiles(phi.profile, reb->profile)));
    } else if (fallback) {
        GridFunction gf = sample(phi, *fallback);
        GridFunction gg = sample(psi, *fallback);
        int_sum = integral_grid(add_grids(gf, gg));
    } else {
        throw std::invalid_argument(
            "covering_volume_bounds: mixed bodies need a grid fallback");
    }
    est.lower_bound = int_2phi / int_sum;
    est.upper_even = std::pow(2.0, n) * est.lower_bound;

    if (rebase_onto(phi, psi_ref)) {
        RadialFunction box = inf_conv(phi, psi_ref);
        RadialFunction gbox = g_inf_conv(phi, psi_ref);
        est.upper_infc = integral_exp(box) / int_2psi;
        est.upper_ginf = std::pow(2.0, n) * integral_exp(gbox) / int_2psi;
    } else if (fallback) {
        GridFunction gf = sample(phi, *fallback);
        GridFunction gg = sample(psi_ref, *fallback);
        GridFunction box = grid_inf_conv(gf, gg, *fallback);
        GridFunction gbox = grid_g_inf_conv(gf, gg, *fallback);
        est.upper_infc = integral_grid(box) / int_2psi;
        est.upper_ginf = std::pow(2.0, n) * integral_grid(gbox) / int_2psi;
        est.grid = *fallback;
    } else {
        throw std::invalid_argument(
            "covering_volume_bounds: mixed bodies need a grid fallback");
    }
    return est;
}

CoveringLpResult covering_lp(const GridFunction& f, const GridFunction& g,
                             std::size_t exact_limit) {
    check_aligned(f.spec, g.spec);
    int n = f.spec.dim;
    if (n > 2) throw std::invalid_argument("covering_lp: n <= 2 only");
    bool g_all_zero = true;
    for (double v : g.values)
        if (std::exp(-v) > 0.0) g_all_zero = false;
    if (g_all_zero) throw std::invalid_argument("covering_lp: g identically zero");

    // Constraint points: lattice points with non-negligible f-mass.
    std::vector<Vec> xs;
    std::vector<double> fs;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        double w = std::exp(-f.values[flat]);
        if (w >= 1e-12) {
            xs.push_back(f.point_flat(flat));
            fs.push_back(w);
        }
    }
    if (xs.empty()) throw std::invalid_argument("covering_lp: f has no mass");

    // Candidate atoms: the lattice covering supp(f) - supp(g).
    std::vector<long> ylo(n), yhi(n);
    for (int a = 0; a < n; ++a) {
        ylo[a] = std::llround((f.spec.lo[a] - g.spec.hi[a]) / f.spec.h);
        yhi[a] = std::llround((f.spec.hi[a] - g.spec.lo[a]) / f.spec.h);
    }
    std::vector<Vec> ys;
    {
        std::vector<long> idx(ylo);
        while (true) {
            Vec y(n);
            for (int a = 0; a < n; ++a) y[a] = idx[a] * f.spec.h;
            ys.push_back(y);
            int a = n - 1;
            while (a >= 0) {
                if (++idx[a] <= yhi[a]) break;
                idx[a] = ylo[a];
                --a;
            }
            if (a < 0) break;
        }
    }

    auto g_at = [&g, n](const Vec& d) {
        std::vector<std::size_t> idx(n);
        std::vector<std::size_t> np = g.spec.npoints();
        for (int a = 0; a < n; ++a) {
            double q = (d[a] - g.spec.lo[a]) / g.spec.h;
            long i = std::llround(q);
            if (std::abs(q - i) > 1e-6 || i < 0 || i >= static_cast<long>(np[a]))
                return 0.0;
            idx[a] = static_cast<std::size_t>(i);
        }
        return std::exp(-g.at(idx));
    };

    // Drop atoms with no effect on any constraint.
    std::vector<Vec> atoms;
    for (const Vec& y : ys) {
        bool useful = false;
        for (const Vec& x : xs) {
            Vec d(n);
            for (int a = 0; a < n; ++a) d[a] = x[a] - y[a];
            if (g_at(d) > 1e-14) {
                useful = true;
                break;
            }
        }
        if (useful) atoms.push_back(y);
    }
    if (atoms.empty()) throw std::domain_error("covering_lp: infeasible (no usable atoms)");

    std::size_t I = xs.size(), J = atoms.size();
    CoveringLpResult out;
    if (I <= exact_limit) {
        std::vector<double> G(I * J);
        for (std::size_t i = 0; i < I; ++i)
            for (std::size_t j = 0; j < J; ++j) {
                Vec d(n);
                for (int a = 0; a < n; ++a) d[a] = xs[i][a] - atoms[j][a];
                G[i * J + j] = g_at(d);
            }
        LpResult lp = covering_min(G, I, J, fs);
        if (lp.status == LpResult::Status::Infeasible)
            throw std::domain_error("covering_lp: infeasible");
        if (lp.status != LpResult::Status::Optimal)
            throw std::runtime_error("covering_lp: simplex did not converge");
        out.value = lp.value;
        out.exact = true;
        for (std::size_t j = 0; j < J; ++j)
            if (lp.x[j] > 1e-12) {
                out.measure.push_back(lp.x[j]);
                out.support.push_back(atoms[j]);
            }
        return out;
    }

    // Greedy cover: repeatedly drop mass at the most violated point.
    std::vector<double> cover(I, 0.0);
    std::vector<double> mu(I, 0.0);  // atoms placed at constraint points
    for (std::size_t step = 0; step < I + 8; ++step) {
        std::size_t worst = I;
        double deficit = 1e-12;
        for (std::size_t i = 0; i < I; ++i) {
            double d = fs[i] - cover[i];
            if (d > deficit) {
                deficit = d;
                worst = i;
            }
        }
        if (worst == I) break;
        double g0 = g_at(Vec(n, 0.0));
        if (g0 <= 0.0) throw std::domain_error("covering_lp: greedy needs g(0) > 0");
        double add = deficit / g0;
        mu[worst] += add;
        for (std::size_t i = 0; i < I; ++i) {
            Vec d(n);
            for (int a = 0; a < n; ++a) d[a] = xs[i][a] - xs[worst][a];
            cover[i] += add * g_at(d);
        }
    }
    out.exact = false;
    out.value = 0.0;
    for (std::size_t i = 0; i < I; ++i)
        if (mu[i] > 0.0) {
            out.value += mu[i];
            out.measure.push_back(mu[i]);
            out.support.push_back(xs[i]);
        }
    return out;
}

double rs_ratio(const RadialFunction& phi) {
    RadialFunction ref = reflect(phi);
    if (same_body(phi, ref)) {
        RadialFunction g = g_inf_conv(phi, ref);
        return integral_exp(g) / integral_exp(phi);
    }
    // Mixed-body route: grid pipeline sized from the mass support.
    double t99 = mass_level(phi, 0.9999);
    RadiusFunction rho = invert_profile(phi.profile);
    double reach = rho(t99) * 3.0 + 1.0;
    GridSpec spec = GridSpec::cube(phi.dim(), std::ceil(reach), 1.0 / 32.0);
    GridFunction gf = sample(phi, spec);
    GridFunction gg = sample(ref, spec);
    GridFunction gbox = grid_g_inf_conv(gf, gg, spec);
    return integral_grid(gbox) / integral_exp(phi);
}

KmSquare km_square_check(const RadialFunction& phi) {
    double a = integral_exp_scaled(phi, 2.0);
    double b = integral_exp(phi);
    double c = std::pow(2.0, phi.dim()) * a;
    if (!(a <= b * (1 + 1e-12) && b <= c * (1 + 1e-12)))
        throw std::runtime_error("km_square_check: sandwich violated");
    return {a, b, c};
}

DualityReport duality_experiment(const RadialFunction& phi, const RadialFunction& psi,
                                 double alpha, const GridSpec* lp_grid) {
    if (alpha <= 0.0) throw std::invalid_argument("duality_experiment: alpha <= 0");
    auto centered = [](const RadialFunction& f, double a) {
        auto len = [](const Vec& v) {
            double s = 0.0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        };
        if (len(barycenter(f)) <= 1e-9) return true;
        RadialFunction dual = transform_radial(f, TransformKind::Polarity, a);
        return len(barycenter(dual)) <= 1e-9;
    };
    if (!centered(phi, alpha) || !centered(psi, alpha))
        throw std::invalid_argument(
            "duality_experiment: needs a centered function or centered transform");

    RadialFunction dphi = transform_radial(psi, TransformKind::Polarity, alpha);
    RadialFunction dpsi = transform_radial(phi, TransformKind::Polarity, alpha);

    // Fallback windows sized from the pairs themselves: inf-convolutions
    // spread supports additively, and the truncated conjugates continue
    // linearly past the support, so leave an absolute margin for decay.
    auto window = [](const RadialFunction& a, const RadialFunction& b) {
        double r = 1.25 * (effective_radius(a) + effective_radius(b)) + 2.0;
        return GridSpec::cube(a.dim(), std::max(3.0, std::ceil(r * 16.0) / 16.0),
                              1.0 / 16.0);
    };
    GridSpec fb_primal = window(phi, psi);
    GridSpec fb_dual = window(dphi, dpsi);
    CoveringEstimate primal = covering_volume_bounds(phi, psi, &fb_primal);
    CoveringEstimate dual = covering_volume_bounds(dphi, dpsi, &fb_dual);

    DualityReport rep;
    rep.n = phi.dim();
    rep.alpha = alpha;
    double half = rep.n / 2.0;
    rep.primal_estimate = primal.lower_bound * std::pow(2.0, half);
    rep.dual_estimate = dual.lower_bound * std::pow(2.0, half);
    rep.ratio_lower = primal.lower_bound / dual.upper_even;
    rep.ratio_upper = primal.upper_even / dual.lower_bound;

    if (lp_grid && phi.dim() <= 2) {
        GridFunction f1 = sample(phi, *lp_grid);
        GridFunction g1 = sample(psi, *lp_grid);
        CoveringLpResult lp_primal = covering_lp(f1, g1);
        GridFunction f2 = sample(dphi, *lp_grid);
        GridFunction g2 = sample(dpsi, *lp_grid);
        CoveringLpResult lp_dual = covering_lp(f2, g2);
        if (lp_primal.exact && lp_dual.exact) {
            rep.primal_estimate = lp_primal.value;
            rep.dual_estimate = lp_dual.value;
            rep.used_lp = true;
        }
    }
    rep.ratio = rep.primal_estimate / rep.dual_estimate;
    return rep;
}

}  // namespace cdl
