#include "cdl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t flat_index(const std::vector<std::size_t>& idx,
                       const std::vector<std::size_t>& np) {
    std::size_t f = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) f = f * np[a] + idx[a];
    return f;
}

// Deterministic chunked parallelism: each worker owns a disjoint output
// slice, so the result is independent of scheduling.
template <typename F>
void run_chunked(std::size_t total, F&& worker) {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::size_t nthreads = std::min<std::size_t>(hw, 8);
    if (total < 4096 || nthreads == 1) {
        worker(0, total);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (total + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back(worker, t * chunk, std::min(total, (t + 1) * chunk));
    for (auto& th : pool) th.join();
}

// Run over all lattice points, invoking fn(flat, idx).
template <typename F>
void for_each_index(const std::vector<std::size_t>& np, F&& fn) {
    std::vector<std::size_t> idx(np.size(), 0);
    std::size_t total = 1;
    for (std::size_t n : np) total *= n;
    for (std::size_t f = 0; f < total; ++f) {
        fn(f, idx);
        for (std::size_t a = np.size(); a-- > 0;) {
            if (++idx[a] < np[a]) break;
            idx[a] = 0;
        }
    }
}

}  // namespace

std::vector<std::size_t> GridSpec::npoints() const {
    std::vector<std::size_t> np(dim);
    for (int a = 0; a < dim; ++a) {
        double span = (hi[a] - lo[a]) / h;
        np[a] = static_cast<std::size_t>(std::llround(span)) + 1;
    }
    return np;
}

std::size_t GridSpec::total_points() const {
    std::size_t t = 1;
    for (std::size_t n : npoints()) t *= n;
    return t;
}

GridSpec GridSpec::cube(int dim, double half_range, double h) {
    GridSpec s;
    s.dim = dim;
    s.h = h;
    s.lo.assign(dim, -half_range);
    s.hi.assign(dim, half_range);
    return s;
}

double GridFunction::at(const std::vector<std::size_t>& idx) const {
    return values[flat_index(idx, spec.npoints())];
}

Vec GridFunction::point(const std::vector<std::size_t>& idx) const {
    Vec x(spec.dim);
    for (int a = 0; a < spec.dim; ++a) x[a] = spec.lo[a] + spec.h * idx[a];
    return x;
}

Vec GridFunction::point_flat(std::size_t flat) const {
    std::vector<std::size_t> np = spec.npoints();
    std::vector<std::size_t> idx(np.size());
    for (std::size_t a = np.size(); a-- > 0;) {
        idx[a] = flat % np[a];
        flat /= np[a];
    }
    return point(idx);
}

double GridFunction::interpolate(const Vec& x) const {
    // Kuhn-simplex interpolation: piecewise linear, exact on axis- and
    // diagonal-aligned kinks (a bilinear blend would overshoot there and
    // break the monotonicity the gauge-transform bisection relies on).
    std::vector<std::size_t> np = spec.npoints();
    std::vector<std::size_t> base(spec.dim);
    Vec w(spec.dim);
    for (int a = 0; a < spec.dim; ++a) {
        double t = (x[a] - spec.lo[a]) / spec.h;
        if (t < -1e-9 || t > static_cast<double>(np[a] - 1) + 1e-9) return kInf;
        t = std::clamp(t, 0.0, static_cast<double>(np[a] - 1));
        if (np[a] == 1) {
            base[a] = 0;
            w[a] = 0.0;
        } else {
            std::size_t i = std::min(static_cast<std::size_t>(t), np[a] - 2);
            base[a] = i;
            w[a] = t - static_cast<double>(i);
        }
    }
    std::vector<int> order(spec.dim);
    for (int a = 0; a < spec.dim; ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&w](int a, int b) { return w[a] > w[b]; });
    std::vector<std::size_t> idx = base;
    double prev = at(idx);
    if (!std::isfinite(prev)) return kInf;
    double acc = prev;
    for (int a : order) {
        if (w[a] == 0.0) continue;
        idx[a] = std::min(base[a] + 1, np[a] - 1);
        double cur = at(idx);
        if (!std::isfinite(cur)) return kInf;
        acc += w[a] * (cur - prev);
        prev = cur;
    }
    return acc;
}

namespace {

GridFunction sample_impl(const std::function<double(const Vec&)>& f, const GridSpec& spec,
                         std::string provenance) {
    GridFunction g;
    g.spec = spec;
    g.provenance = std::move(provenance);
    std::vector<std::size_t> np = spec.npoints();
    g.values.resize(spec.total_points());
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        Vec x(spec.dim);
        bool boundary = false;
        for (int a = 0; a < spec.dim; ++a) {
            x[a] = spec.lo[a] + spec.h * idx[a];
            boundary = boundary || idx[a] == 0 || idx[a] + 1 == np[a];
        }
        double v = f(x);
        g.values[flat] = v;
        if (boundary && std::exp(-v) > 1e-12) g.truncation_warning = true;
    });
    return g;
}

}  // namespace

GridFunction sample(const RadialFunction& phi, const GridSpec& spec) {
    if (spec.dim != phi.dim()) throw std::invalid_argument("sample: dimension mismatch");
    return sample_impl([&phi](const Vec& x) { return phi(x); }, spec, "radial");
}

GridFunction sample_gaussian(const GridSpec& spec) {
    return sample_impl(
        [](const Vec& x) {
            double s = 0.0;
            for (double c : x) s += c * c;
            return s / 2.0;
        },
        spec, "gaussian");
}

GridFunction sample_quadratic(const std::vector<double>& Q, const GridSpec& spec) {
    int n = spec.dim;
    if (Q.size() != static_cast<std::size_t>(n * n))
        throw std::invalid_argument("sample_quadratic: bad matrix");
    return sample_impl(
        [&Q, n](const Vec& x) {
            double s = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) s += x[i] * Q[i * n + j] * x[j];
            return s / 2.0;
        },
        spec, "quadratic");
}

GridFunction sample_custom(const std::function<double(const Vec&)>& f,
                           const GridSpec& spec) {
    return sample_impl(f, spec, "custom");
}

double discrete_convexity_violation(const GridFunction& f) {
    std::vector<std::size_t> np = f.spec.npoints();
    int n = f.spec.dim;
    // Directions with entries in {-1,0,1}, one representative per +-pair.
    std::vector<std::vector<int>> dirs;
    std::vector<int> d(n, -1);
    while (true) {
        bool nonzero = false, leading_pos = false;
        for (int a = 0; a < n; ++a) {
            if (d[a] != 0 && !nonzero) {
                nonzero = true;
                leading_pos = d[a] > 0;
            }
        }
        if (nonzero && leading_pos) dirs.push_back(d);
        int a = n - 1;
        while (a >= 0 && d[a] == 1) d[a--] = -1;
        if (a < 0) break;
        ++d[a];
    }
    double worst = 0.0;
    for_each_index(np, [&](std::size_t, const std::vector<std::size_t>& idx) {
        for (const auto& dir : dirs) {
            std::vector<std::size_t> lo = idx, hi = idx;
            bool ok = true;
            for (int a = 0; a < n && ok; ++a) {
                int il = static_cast<int>(idx[a]) - dir[a];
                int ih = static_cast<int>(idx[a]) + dir[a];
                if (il < 0 || ih < 0 || il >= static_cast<int>(np[a]) ||
                    ih >= static_cast<int>(np[a]))
                    ok = false;
                else {
                    lo[a] = static_cast<std::size_t>(il);
                    hi[a] = static_cast<std::size_t>(ih);
                }
            }
            if (!ok) continue;
            double a0 = f.at(lo), a1 = f.at(idx), a2 = f.at(hi);
            if (!std::isfinite(a0) || !std::isfinite(a2)) continue;
            if (!std::isfinite(a1)) {
                worst = std::max(worst, kInf);  // infinite pocket between finite values
                continue;
            }
            double second = a0 - 2.0 * a1 + a2;
            worst = std::max(worst, -second / (f.spec.h * f.spec.h));
        }
    });
    return worst;
}

namespace {

// 1-D discrete conjugate: g(y) = max_j (x_j y - f_j) for ascending ys.
// -inf input entries are skipped; an all-infinite line conjugates to -inf.
void conjugate_line(const std::vector<double>& xs, const std::vector<double>& fs,
                    const std::vector<double>& ys, std::vector<double>& out) {
    std::size_t m = xs.size();
    // Lower hull of (x, f) as lines with slope x: classic monotone stack.
    std::vector<std::size_t> hull;
    for (std::size_t j = 0; j < m; ++j) {
        if (!std::isfinite(fs[j])) continue;
        while (hull.size() >= 2) {
            std::size_t b = hull[hull.size() - 1], a = hull[hull.size() - 2];
            // Drop b if it is never the argmax: crossing of a and j at or
            // before crossing of a and b.
            double lhs = (fs[j] - fs[a]) * (xs[b] - xs[a]);
            double rhs = (fs[b] - fs[a]) * (xs[j] - xs[a]);
            if (lhs <= rhs)
                hull.pop_back();
            else
                break;
        }
        if (hull.size() == 1) {
            std::size_t a = hull[0];
            if (xs[j] == xs[a]) {
                if (fs[j] < fs[a]) hull.pop_back();
                else continue;
            }
        }
        hull.push_back(j);
    }
    if (hull.empty()) {
        out.assign(ys.size(), -kInf);
        return;
    }
    out.resize(ys.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        double y = ys[i];
        while (k + 1 < hull.size()) {
            std::size_t a = hull[k], b = hull[k + 1];
            // advance while line b beats line a at y
            if (xs[b] * y - fs[b] >= xs[a] * y - fs[a]) ++k;
            else break;
        }
        out[i] = xs[hull[k]] * y - fs[hull[k]];
    }
}

std::vector<double> axis_coords(const GridSpec& spec, int a) {
    std::vector<double> xs;
    std::size_t n = spec.npoints()[a];
    for (std::size_t i = 0; i < n; ++i) xs.push_back(spec.lo[a] + spec.h * i);
    return xs;
}

GridFunction legendre_grid(const GridFunction& f, const GridSpec& out_spec) {
    // Separable pass: axis a rewrites x_a -> y_a with
    // g(y) = sup_{x_a} (x_a y - prev). Intermediates may hold -inf.
    if (std::abs(out_spec.h - f.spec.h) > 1e-15)
        throw std::invalid_argument("legendre_grid: output step must match input");
    GridFunction cur = f;
    for (int a = 0; a < f.spec.dim; ++a) {
        GridSpec next_spec = cur.spec;
        next_spec.lo[a] = out_spec.lo[a];
        next_spec.hi[a] = out_spec.hi[a];
        next_spec.h = out_spec.h;
        // When steps differ per axis mid-pass, keep axis coords explicit.
        std::vector<double> xs = axis_coords(cur.spec, a);
        std::vector<double> ys = axis_coords(next_spec, a);
        std::vector<std::size_t> np_in = cur.spec.npoints();
        std::vector<std::size_t> np_out = np_in;
        np_out[a] = ys.size();
        GridFunction next;
        next.spec = next_spec;
        next.values.assign([&] {
            std::size_t t = 1;
            for (std::size_t v : np_out) t *= v;
            return t;
        }(), -kInf);

        // Iterate over all lines along axis a.
        std::vector<std::size_t> shape_rest;
        std::vector<int> rest_axes;
        for (int b = 0; b < cur.spec.dim; ++b)
            if (b != a) {
                shape_rest.push_back(np_in[b]);
                rest_axes.push_back(b);
            }
        std::vector<double> fline(xs.size()), gline;
        std::vector<std::size_t> idx_in(np_in.size(), 0), idx_out(np_in.size(), 0);
        std::vector<std::size_t> rest(shape_rest.size(), 0);
        bool done = shape_rest.empty();
        while (true) {
            for (std::size_t r = 0; r < rest_axes.size(); ++r) {
                idx_in[rest_axes[r]] = rest[r];
                idx_out[rest_axes[r]] = rest[r];
            }
            for (std::size_t i = 0; i < xs.size(); ++i) {
                idx_in[a] = i;
                double v = cur.values[flat_index(idx_in, np_in)];
                // Later passes take sup(x y + prev) = sup(x y - (-prev));
                // negation also turns empty (-inf) entries into skipped +inf.
                fline[i] = (a > 0) ? -v : v;
            }
            conjugate_line(xs, fline, ys, gline);
            for (std::size_t i = 0; i < ys.size(); ++i) {
                idx_out[a] = i;
                next.values[flat_index(idx_out, np_out)] = gline[i];
            }
            if (done) break;
            std::size_t r = rest.size();
            while (r-- > 0) {
                if (++rest[r] < shape_rest[r]) break;
                rest[r] = 0;
                if (r == 0) done = true;
            }
            if (done && rest == std::vector<std::size_t>(rest.size(), 0)) break;
        }
        cur = std::move(next);
    }
    bool any_finite = false;
    for (double v : cur.values)
        if (std::isfinite(v)) any_finite = true;
    if (!any_finite) throw std::domain_error("legendre_grid: empty effective domain");
    for (double& v : cur.values)
        if (v == -kInf) v = kInf;
    cur.provenance = "legendre";
    return cur;
}

GridFunction polarity_grid(const GridFunction& f, double alpha, const GridSpec& out_spec) {
    if (alpha <= 0.0) throw std::invalid_argument("polarity_grid: alpha <= 0");
    // Collect finite sample points once.
    std::vector<double> px;  // packed coordinates
    std::vector<double> pv;  // values
    std::vector<std::size_t> np = f.spec.npoints();
    int n = f.spec.dim;
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        double v = f.values[flat];
        if (!std::isfinite(v)) return;
        for (int a = 0; a < n; ++a) px.push_back(f.spec.lo[a] + f.spec.h * idx[a]);
        pv.push_back(v);
    });
    std::size_t m = pv.size();
    GridFunction out;
    out.spec = out_spec;
    out.values.assign(out_spec.total_points(), 0.0);
    out.provenance = "polarity";
    std::size_t total = out.values.size();

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t flat = begin; flat < end; ++flat) {
            Vec y = out.point_flat(flat);
            double best = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                double d = 0.0;
                for (int a = 0; a < n; ++a) d += px[j * n + a] * y[a];
                double num = d - 1.0;
                if (num <= 0.0) continue;
                double fv = pv[j];
                if (fv == 0.0) {
                    best = kInf;
                    break;
                }
                best = std::max(best, num / fv);
            }
            out.values[flat] = alpha * best;
        }
    };
    run_chunked(total, worker);
    return out;
}

GridFunction gauge_j_grid(const GridFunction& f, const GridSpec& out_spec) {
    // J phi(y) = inf{ z > 0 : z phi(y/z) <= 1 }; z -> z phi(y/z) is
    // nonincreasing, so the set is a ray and bisection applies.
    GridFunction out;
    out.spec = out_spec;
    out.values.assign(out_spec.total_points(), 0.0);
    out.provenance = "gauge_j";
    // The acceptance threshold carries a slack of half a step: simplex
    // interpolation can overshoot a convex kink by up to (slope jump)*h/2,
    // and along gauge-boundary rays z*phi(y/z) is constant, so the raw
    // comparison would otherwise flip on interpolation noise. The slack
    // biases values by at most a relative h/2.
    auto m_of = [&f](const Vec& y, double z) {
        Vec p(y.size());
        for (std::size_t a = 0; a < y.size(); ++a) p[a] = y[a] / z;
        double v = f.interpolate(p);
        return std::isfinite(v) ? z * v : kInf;
    };
    const double kLevelTol = 1.0 + std::max(1e-9, 0.5 * f.spec.h);
    std::size_t total = out.values.size();
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t flat = begin; flat < end; ++flat) {
            Vec y = out.point_flat(flat);
            double ylen = 0.0;
            for (double c : y) ylen += std::abs(c);
            if (ylen == 0.0) {
                out.values[flat] = 0.0;
                continue;
            }
            double hi = 1.0;
            int guard = 0;
            while (m_of(y, hi) > kLevelTol && guard++ < 64) hi *= 2.0;
            if (m_of(y, hi) > kLevelTol) {
                out.values[flat] = kInf;
                continue;
            }
            double lo = hi;
            guard = 0;
            while (m_of(y, lo) <= kLevelTol && lo > 1e-14 && guard++ < 64) lo *= 0.5;
            if (m_of(y, lo) <= kLevelTol) {
                out.values[flat] = 0.0;
                continue;
            }
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (m_of(y, mid) <= kLevelTol)
                    hi = mid;
                else
                    lo = mid;
            }
            out.values[flat] = hi;
        }
    };
    run_chunked(total, worker);
    return out;
}

GridSpec default_out_spec(const GridFunction& f, TransformKind kind) {
    GridSpec s = f.spec;
    if (kind == TransformKind::GaugeJ) return s;
    // Dual range from the largest finite coordinate, with a safety factor.
    double g = 0.0;
    std::vector<std::size_t> np = f.spec.npoints();
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        if (!std::isfinite(f.values[flat])) return;
        for (int a = 0; a < f.spec.dim; ++a)
            g = std::max(g, std::abs(f.spec.lo[a] + f.spec.h * idx[a]));
    });
    double range = std::max(1.0, 1.5 * g);
    // Snap to a multiple of h so grids stay aligned.
    range = std::ceil(range / f.spec.h) * f.spec.h;
    for (int a = 0; a < s.dim; ++a) {
        s.lo[a] = -range;
        s.hi[a] = range;
    }
    return s;
}

}  // namespace

GridFunction transform_grid(const GridFunction& f, TransformKind kind, double alpha,
                            const GridSpec* out_spec) {
    auto run = [&](const GridSpec& spec) {
        switch (kind) {
            case TransformKind::Legendre:
                return legendre_grid(f, spec);
            case TransformKind::Polarity:
                return polarity_grid(f, alpha, spec);
            case TransformKind::GaugeJ:
                return gauge_j_grid(f, spec);
            default:
                throw std::invalid_argument("transform_grid: unsupported kind");
        }
    };
    if (out_spec) return run(*out_spec);
    // Auto-sized mode: the window overflows when it clips the output's
    // bottom level set (boundary values within half a unit of the minimum).
    auto clipped = [](const GridFunction& g) {
        std::vector<std::size_t> np = g.spec.npoints();
        double lo = kInf, edge = kInf;
        for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
            double v = g.values[flat];
            lo = std::min(lo, v);
            for (std::size_t a = 0; a < np.size(); ++a)
                if (idx[a] == 0 || idx[a] + 1 == np[a]) {
                    edge = std::min(edge, v);
                    break;
                }
        });
        return edge <= lo + 0.5;
    };
    GridSpec spec = default_out_spec(f, kind);
    GridFunction out = run(spec);
    if (!clipped(out)) return out;
    for (int a = 0; a < spec.dim; ++a) {
        spec.lo[a] *= 2.0;
        spec.hi[a] *= 2.0;
    }
    out = run(spec);
    if (clipped(out)) throw std::domain_error("transform_grid: output range overflow");
    return out;
}

double mass_leakage(const GridFunction& f, double scale) {
    std::vector<std::size_t> np = f.spec.npoints();
    double total = 0.0, boundary = 0.0;
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        double w = std::exp(-scale * f.values[flat]);
        total += w;
        for (std::size_t a = 0; a < np.size(); ++a)
            if (idx[a] == 0 || idx[a] + 1 == np[a]) {
                boundary += w;
                break;
            }
    });
    if (total <= 0.0) return 1.0;
    return boundary / total;
}

double integral_grid(const GridFunction& f, double scale) {
    if (scale <= 0.0) throw std::invalid_argument("integral_grid: scale <= 0");
    double leak = mass_leakage(f, scale);
    if (leak > 1e-3)
        throw std::domain_error("integral_grid: mass leakage beyond tolerance");
    double sum = 0.0;
    for (double v : f.values) sum += std::exp(-scale * v);
    return sum * std::pow(f.spec.h, f.spec.dim);
}

InclusionCheck level_inclusion_check(const GridFunction& f, double alpha, double s,
                                     double t, double polar_shrink) {
    GridFunction af = transform_grid(f, TransformKind::Polarity, alpha);
    std::vector<Vec> level_a;
    for (std::size_t flat = 0; flat < af.values.size(); ++flat)
        if (af.values[flat] <= s) level_a.push_back(af.point_flat(flat));
    std::vector<Vec> level_f;
    for (std::size_t flat = 0; flat < f.values.size(); ++flat)
        if (f.values[flat] <= t) level_f.push_back(f.point_flat(flat));
    if (level_a.empty() || level_f.empty())
        throw std::domain_error("level_inclusion_check: degenerate level set");
    double c = (s * t / alpha + 1.0) * polar_shrink;
    double worst = -kInf;
    for (const Vec& y : level_a) {
        double sup = 0.0;
        for (const Vec& x : level_f) {
            double d = 0.0;
            for (std::size_t a = 0; a < y.size(); ++a) d += x[a] * y[a];
            sup = std::max(sup, d);
        }
        worst = std::max(worst, sup / c - 1.0);
    }
    return {worst <= 1e-9, worst};
}

double sup_error_vs_radial(const GridFunction& f, const RadialFunction& exact,
                           double level_cap) {
    std::vector<std::size_t> np = f.spec.npoints();
    double worst = 0.0;
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        Vec x = f.point(idx);
        double ref = exact(x);
        if (!(ref <= level_cap)) return;
        double got = f.values[flat];
        double err = std::isfinite(got) ? std::abs(got - ref) : kInf;
        worst = std::max(worst, err);
    });
    return worst;
}

double mass_level(const RadialFunction& phi, double fraction) {
    double total = integral_exp(phi);
    RadiusFunction rho = invert_profile(phi.profile);
    int n = phi.dim();
    double volk = volume(phi.body);
    double lo = 0.0, hi = 1.0;
    auto mass_below = [&](double T) {
        // integral over {phi <= T} of e^{-phi} = Vol(K) * (int_0^T e^-t rho^n dt
        // + e^-T rho(T)^n), which is the Exp integral of rho capped at T.
        std::vector<double> k, v;
        for (std::size_t i = 0; i < rho.knots.size() && rho.knots[i] < T; ++i) {
            k.push_back(rho.knots[i]);
            v.push_back(rho.values[i]);
        }
        k.push_back(T);
        v.push_back(rho(T));
        RadiusFunction capped = make_radius(k, v, 0.0);
        return volk * exp_level_integral(capped, n, LevelWeight::Exp);
    };
    while (mass_below(hi) < fraction * total && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mass_below(mid) < fraction * total)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

void write_grid_csv(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
    for (int a = 0; a < f.spec.dim; ++a) out << "x" << a << ",";
    out << "value\n";
    std::vector<std::size_t> np = f.spec.npoints();
    for_each_index(np, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
        char buf[64];
        for (int a = 0; a < f.spec.dim; ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", f.spec.lo[a] + f.spec.h * idx[a]);
            out << buf << ",";
        }
        double v = f.values[flat];
        if (std::isfinite(v)) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf << "\n";
        } else {
            out << "inf\n";
        }
    });
}

// Binary layout: magic "CDLG", u32 version=1, u32 dim, then per axis
// f64 lo, f64 hi; f64 h; u64 value count; row-major f64 values with IEEE
// +inf as the out-of-domain sentinel.
void write_grid_binary(const GridFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_grid_binary: cannot open " + path);
    out.write("CDLG", 4);
    std::uint32_t version = 1, dim = static_cast<std::uint32_t>(f.spec.dim);
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&dim), 4);
    for (int a = 0; a < f.spec.dim; ++a) {
        out.write(reinterpret_cast<const char*>(&f.spec.lo[a]), 8);
        out.write(reinterpret_cast<const char*>(&f.spec.hi[a]), 8);
    }
    out.write(reinterpret_cast<const char*>(&f.spec.h), 8);
    std::uint64_t count = f.values.size();
    out.write(reinterpret_cast<const char*>(&count), 8);
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(count * 8));
}

GridFunction read_grid_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_grid_binary: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (std::memcmp(magic, "CDLG", 4) != 0)
        throw std::runtime_error("read_grid_binary: bad magic");
    std::uint32_t version = 0, dim = 0;
    in.read(reinterpret_cast<char*>(&version), 4);
    in.read(reinterpret_cast<char*>(&dim), 4);
    if (version != 1 || dim < 1 || dim > 3)
        throw std::runtime_error("read_grid_binary: unsupported header");
    GridFunction f;
    f.spec.dim = static_cast<int>(dim);
    f.spec.lo.resize(dim);
    f.spec.hi.resize(dim);
    for (std::uint32_t a = 0; a < dim; ++a) {
        in.read(reinterpret_cast<char*>(&f.spec.lo[a]), 8);
        in.read(reinterpret_cast<char*>(&f.spec.hi[a]), 8);
    }
    in.read(reinterpret_cast<char*>(&f.spec.h), 8);
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&count), 8);
    f.values.resize(count);
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(count * 8));
    if (!in) throw std::runtime_error("read_grid_binary: truncated file");
    f.provenance = "file:" + path;
    return f;
}

}  // namespace cdl
