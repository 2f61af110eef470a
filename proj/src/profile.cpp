#include "cdl/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKnotTol = 1e-12;

double snap_zero(double v) { return std::abs(v) <= 1e-14 ? 0.0 : v; }

// Upper envelope of lines y = slope*x + intercept over [0, cap], clipped
// below at 0. All slopes must be >= 0. Returns a canonical profile.
struct Line {
    double slope;
    double intercept;
};

Profile envelope_profile(std::vector<Line> lines, double cap) {
    lines.push_back({0.0, 0.0});
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return a.slope < b.slope || (a.slope == b.slope && a.intercept < b.intercept);
    });
    // Keep the highest intercept per slope, then build the usual stack of
    // envelope segments with increasing crossing abscissas.
    std::vector<Line> hull;
    std::vector<double> from;  // abscissa where hull[i] starts to lead
    for (const Line& l : lines) {
        if (!hull.empty() && l.slope - hull.back().slope < 1e-15 * (1.0 + std::abs(l.slope))) {
            if (l.intercept <= hull.back().intercept) continue;
            hull.pop_back();
            from.pop_back();
        }
        while (!hull.empty()) {
            double x = (hull.back().intercept - l.intercept) / (l.slope - hull.back().slope);
            if (x <= from.back()) {
                hull.pop_back();
                from.pop_back();
            } else {
                from.push_back(x);
                break;
            }
        }
        if (hull.empty()) from.push_back(-kInf);
        hull.push_back(l);
    }

    std::vector<double> knots{0.0}, values{0.0};
    double tail = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        double start = std::max(from[i], 0.0);
        double end = (i + 1 < hull.size()) ? from[i + 1] : kInf;
        if (end <= 0.0 || start >= cap) continue;
        end = std::min(end, cap);
        if (start > knots.back() + kKnotTol) {
            knots.push_back(start);
            values.push_back(hull[i].slope * start + hull[i].intercept);
        }
        if (std::isfinite(end)) {
            knots.push_back(end);
            values.push_back(hull[i].slope * end + hull[i].intercept);
        } else {
            tail = hull[i].slope;
        }
    }
    bool bounded = std::isfinite(cap);
    if (bounded && knots.back() < cap - kKnotTol) {
        // Envelope was flat out to the cap.
        knots.push_back(cap);
        values.push_back(values.back());
    }
    return make_profile(std::move(knots), std::move(values), bounded, tail);
}

}  // namespace

double Profile::operator()(double r) const {
    if (r < 0.0) throw std::invalid_argument("Profile: negative argument");
    if (r > knots.back()) {
        if (bounded) return kInf;
        return values.back() + tail_slope * (r - knots.back());
    }
    auto it = std::upper_bound(knots.begin(), knots.end(), r);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i == knots.size()) return values.back();
    if (i == 0) return values[0];
    double w = (r - knots[i - 1]) / (knots[i] - knots[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

std::size_t Profile::segment_count() const {
    return knots.size() - 1 + (bounded ? 0 : 1);
}

double Profile::segment_slope(std::size_t i) const {
    if (i + 1 < knots.size())
        return (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
    return tail_slope;
}

double Profile::domain_end() const { return bounded ? knots.back() : kInf; }

double Profile::zero_set_end() const {
    if (is_zero()) return kInf;
    double end = 0.0;
    for (std::size_t i = 0; i < knots.size(); ++i)
        if (values[i] == 0.0) end = knots[i];
    return end;
}

bool Profile::is_zero() const {
    if (bounded || tail_slope != 0.0) return false;
    for (double v : values)
        if (v != 0.0) return false;
    return true;
}

bool Profile::is_origin_indicator() const {
    return bounded && knots.size() == 1;
}

bool Profile::integrable() const { return !is_zero() && !is_origin_indicator(); }

double RadiusFunction::operator()(double t) const {
    if (t < 0.0) throw std::invalid_argument("RadiusFunction: negative argument");
    if (t >= knots.back()) return values.back() + tail_slope * (t - knots.back());
    auto it = std::upper_bound(knots.begin(), knots.end(), t);
    std::size_t i = static_cast<std::size_t>(it - knots.begin());
    if (i == 0) return values[0];
    double w = (t - knots[i - 1]) / (knots[i] - knots[i - 1]);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

double RadiusFunction::segment_slope(std::size_t i) const {
    if (i + 1 < knots.size())
        return (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
    return tail_slope;
}

Profile make_profile(std::vector<double> knots, std::vector<double> values,
                     bool bounded, double tail_slope) {
    if (knots.empty() || knots.size() != values.size())
        throw std::invalid_argument("Profile: knot/value size mismatch");
    if (std::abs(knots[0]) > kKnotTol || std::abs(values[0]) > 1e-12)
        throw std::invalid_argument("Profile: must start at (0,0)");
    knots[0] = 0.0;
    values[0] = 0.0;
    for (double& v : values) v = snap_zero(v);

    // Drop zero-length segments, keep knots strictly increasing.
    std::vector<double> k{0.0}, v{0.0};
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i] < knots[i - 1] - kKnotTol)
            throw std::invalid_argument("Profile: knots not increasing");
        if (knots[i] - k.back() <= kKnotTol * (1.0 + std::abs(knots[i]))) {
            if (std::abs(values[i] - v.back()) > 1e-9 * (1.0 + std::abs(values[i])))
                throw std::invalid_argument("Profile: duplicate knot with different values");
            continue;
        }
        k.push_back(knots[i]);
        v.push_back(values[i]);
    }

    // Convexity and monotonicity.
    double prev = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        double s = (v[i + 1] - v[i]) / (k[i + 1] - k[i]);
        if (s < -1e-12) throw std::invalid_argument("Profile: decreasing segment");
        if (s < prev - 1e-9 * (1.0 + prev))
            throw std::invalid_argument("Profile: slopes not nondecreasing");
        prev = std::max(prev, s);
    }
    if (!bounded) {
        if (tail_slope < prev - 1e-9 * (1.0 + prev))
            throw std::invalid_argument("Profile: tail slope breaks convexity");
        tail_slope = std::max(tail_slope, prev);
    } else {
        tail_slope = 0.0;
    }

    // Merge collinear interior knots.
    std::vector<double> k2{0.0}, v2{0.0};
    for (std::size_t i = 1; i < k.size(); ++i) {
        double next_slope = (i + 1 < k.size())
                                ? (v[i + 1] - v[i]) / (k[i + 1] - k[i])
                                : (bounded ? kInf : tail_slope);
        double prev_slope = (v[i] - v2.back()) / (k[i] - k2.back());
        bool last = (i + 1 == k.size());
        if (!last || !bounded) {
            if (std::abs(next_slope - prev_slope) <= 1e-12 * (1.0 + std::abs(prev_slope)))
                continue;
        }
        k2.push_back(k[i]);
        v2.push_back(v[i]);
    }
    Profile out;
    out.knots = std::move(k2);
    out.values = std::move(v2);
    out.bounded = bounded;
    out.tail_slope = bounded ? 0.0 : tail_slope;
    return out;
}

RadiusFunction make_radius(std::vector<double> knots, std::vector<double> values,
                           double tail_slope) {
    if (knots.empty() || knots.size() != values.size())
        throw std::invalid_argument("RadiusFunction: size mismatch");
    if (std::abs(knots[0]) > kKnotTol)
        throw std::invalid_argument("RadiusFunction: first knot must be 0");
    knots[0] = 0.0;
    for (double& v : values) {
        v = snap_zero(v);
        if (v < 0.0) throw std::invalid_argument("RadiusFunction: negative value");
    }
    std::vector<double> k{0.0}, v{values[0]};
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (knots[i] - k.back() <= kKnotTol * (1.0 + std::abs(knots[i]))) continue;
        k.push_back(knots[i]);
        v.push_back(values[i]);
    }
    double prev = kInf;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
        double s = (v[i + 1] - v[i]) / (k[i + 1] - k[i]);
        if (s < -1e-12) throw std::invalid_argument("RadiusFunction: decreasing");
        if (s > prev + 1e-9 * (1.0 + prev))
            throw std::invalid_argument("RadiusFunction: slopes not nonincreasing");
        prev = s;
    }
    if (tail_slope < -1e-14 || tail_slope > prev + 1e-9 * (1.0 + prev))
        throw std::invalid_argument("RadiusFunction: bad tail slope");
    tail_slope = std::max(tail_slope, 0.0);

    // Merge collinear knots.
    std::vector<double> k2{0.0}, v2{v[0]};
    for (std::size_t i = 1; i < k.size(); ++i) {
        double next_slope =
            (i + 1 < k.size()) ? (v[i + 1] - v[i]) / (k[i + 1] - k[i]) : tail_slope;
        double prev_slope = (v[i] - v2.back()) / (k[i] - k2.back());
        if (std::abs(next_slope - prev_slope) <= 1e-12 * (1.0 + std::abs(prev_slope)))
            continue;
        k2.push_back(k[i]);
        v2.push_back(v[i]);
    }
    RadiusFunction out;
    out.knots = std::move(k2);
    out.values = std::move(v2);
    out.tail_slope = tail_slope;
    return out;
}

Profile profile_norm() { return make_profile({0.0}, {0.0}, false, 1.0); }

Profile profile_indicator(double radius) {
    if (radius < 0.0) throw std::invalid_argument("indicator radius < 0");
    if (radius == 0.0) return profile_origin_indicator();
    return make_profile({0.0, radius}, {0.0, 0.0}, true);
}

Profile profile_zero() { return make_profile({0.0}, {0.0}, false, 0.0); }

Profile profile_origin_indicator() { return make_profile({0.0}, {0.0}, true); }

namespace {

Profile legendre(const Profile& u) {
    if (u.is_zero()) return profile_origin_indicator();
    if (u.is_origin_indicator()) return profile_zero();

    std::vector<double> knots{0.0}, values{0.0};
    double s_prev = 0.0, val = 0.0;
    std::size_t nseg = u.knots.size() - 1;
    for (std::size_t i = 0; i < nseg; ++i) {
        double slope = (u.values[i + 1] - u.values[i]) / (u.knots[i + 1] - u.knots[i]);
        // Conjugate has slope u.knots[i] on [s_prev, slope].
        if (slope > s_prev + kKnotTol) {
            val += (slope - s_prev) * u.knots[i];
            knots.push_back(slope);
            values.push_back(val);
            s_prev = slope;
        }
    }
    if (u.bounded) {
        // Conjugate continues with slope = domain end forever.
        return make_profile(std::move(knots), std::move(values), false, u.knots.back());
    }
    // Conjugate ends at s = tail_slope; last stretch has slope = last knot.
    if (u.tail_slope > s_prev + kKnotTol) {
        val += (u.tail_slope - s_prev) * u.knots.back();
        knots.push_back(u.tail_slope);
        values.push_back(val);
    }
    return make_profile(std::move(knots), std::move(values), true);
}

Profile polarity(const Profile& u, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("polarity: alpha must be positive");
    if (u.is_zero()) return profile_origin_indicator();
    if (u.is_origin_indicator()) return profile_zero();

    double rz = u.zero_set_end();
    double cap = rz > 0.0 ? 1.0 / rz : kInf;
    std::vector<Line> lines;
    for (std::size_t i = 0; i < u.knots.size(); ++i) {
        if (u.values[i] > 0.0)
            lines.push_back({u.knots[i] / u.values[i], -1.0 / u.values[i]});
    }
    if (!u.bounded && u.tail_slope > 0.0) lines.push_back({1.0 / u.tail_slope, 0.0});
    Profile env = envelope_profile(std::move(lines), cap);
    return scale_values(env, alpha);
}

Profile gauge_j(const Profile& u) {
    if (u.is_zero()) return profile_zero();            // J = L∘A fixes the zero function
    if (u.is_origin_indicator()) return profile_origin_indicator();
    RadiusFunction rho = invert_profile(u);
    return radius_to_profile(gauge_left_radius(rho, 1.0));
}

}  // namespace

Profile transform_profile(const Profile& u, TransformKind kind, double alpha) {
    switch (kind) {
        case TransformKind::Legendre:
            return legendre(u);
        case TransformKind::Polarity:
            return polarity(u, alpha);
        case TransformKind::GaugeJ:
            return gauge_j(u);
        case TransformKind::JLeft:
            if (alpha <= 0.0) throw std::invalid_argument("JLeft: alpha must be positive");
            return scale_values(gauge_j(u), alpha);
        case TransformKind::JRight: {
            if (alpha <= 0.0) throw std::invalid_argument("JRight: alpha must be positive");
            return scale_values(scale_argument(gauge_j(u), alpha), alpha);
        }
    }
    throw std::logic_error("unknown transform kind");
}

Profile scale_values(const Profile& u, double c) {
    if (c <= 0.0) throw std::invalid_argument("scale_values: factor must be positive");
    Profile out = u;
    for (double& v : out.values) v *= c;
    out.tail_slope *= c;
    return out;
}

Profile scale_argument(const Profile& u, double c) {
    if (c <= 0.0) throw std::invalid_argument("scale_argument: factor must be positive");
    Profile out = u;
    for (double& k : out.knots) k *= c;
    out.tail_slope /= c;
    return out;
}

Profile add_profiles(const Profile& u, const Profile& v) {
    std::vector<double> merged = u.knots;
    merged.insert(merged.end(), v.knots.begin(), v.knots.end());
    double end = std::min(u.domain_end(), v.domain_end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](double a, double b) { return std::abs(a - b) <= kKnotTol; }),
                 merged.end());
    std::vector<double> knots, values;
    for (double r : merged) {
        if (r > end + kKnotTol) break;
        knots.push_back(r);
        values.push_back(u(std::min(r, end)) + v(std::min(r, end)));
    }
    bool bounded = std::isfinite(end);
    if (bounded && knots.back() < end - kKnotTol) {
        knots.push_back(end);
        values.push_back(u(end) + v(end));
    }
    return make_profile(std::move(knots), std::move(values), bounded,
                        bounded ? 0.0 : u.tail_slope + v.tail_slope);
}

Profile inf_conv_profile(const Profile& u, const Profile& v) {
    // Epigraph sum: chain all segments in increasing slope order. A tail is
    // an infinite segment; everything steeper than the first infinite
    // segment is unreachable.
    struct Seg {
        double slope;
        double length;  // +inf for tails
    };
    std::vector<Seg> segs;
    auto collect = [&segs](const Profile& p) {
        for (std::size_t i = 0; i + 1 < p.knots.size(); ++i)
            segs.push_back({p.segment_slope(i), p.knots[i + 1] - p.knots[i]});
        if (!p.bounded) segs.push_back({p.tail_slope, kInf});
    };
    collect(u);
    collect(v);
    std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
        return a.slope < b.slope || (a.slope == b.slope && a.length > b.length);
    });
    std::vector<double> knots{0.0}, values{0.0};
    bool bounded = true;
    double tail = 0.0;
    for (const Seg& s : segs) {
        if (!std::isfinite(s.length)) {
            bounded = false;
            tail = s.slope;
            break;
        }
        knots.push_back(knots.back() + s.length);
        values.push_back(values.back() + s.slope * s.length);
    }
    return make_profile(std::move(knots), std::move(values), bounded, tail);
}

Profile g_inf_conv_profile(const Profile& u, const Profile& v) {
    Profile ju = transform_profile(u, TransformKind::GaugeJ);
    Profile jv = transform_profile(v, TransformKind::GaugeJ);
    return transform_profile(inf_conv_profile(ju, jv), TransformKind::GaugeJ);
}

Profile restrict_profile(const Profile& u, double R) {
    if (R <= 0.0) throw std::invalid_argument("restrict_profile: R <= 0");
    if (u.bounded && u.knots.back() <= R) return u;
    std::vector<double> knots, values;
    for (std::size_t i = 0; i < u.knots.size() && u.knots[i] < R - kKnotTol; ++i) {
        knots.push_back(u.knots[i]);
        values.push_back(u.values[i]);
    }
    knots.push_back(R);
    values.push_back(u(R));
    return make_profile(std::move(knots), std::move(values), true);
}

RadiusFunction invert_profile(const Profile& u) {
    if (u.is_zero())
        throw std::domain_error("invert_profile: zero profile has infinite level sets");
    if (u.is_origin_indicator()) return make_radius({0.0}, {0.0}, 0.0);

    double rz = u.zero_set_end();
    std::vector<double> knots{0.0}, values{rz};
    for (std::size_t i = 0; i + 1 < u.knots.size(); ++i) {
        double s = u.segment_slope(i);
        if (s <= 0.0) continue;  // zero-set segment, already folded into rho(0)
        knots.push_back(u.values[i + 1]);
        values.push_back(u.knots[i + 1]);
    }
    double tail;
    if (u.bounded) {
        tail = 0.0;  // levels saturate at the domain end
    } else if (u.tail_slope > 0.0) {
        tail = 1.0 / u.tail_slope;
    } else {
        // Unbounded profile that is eventually flat can only be the zero
        // profile, handled above.
        throw std::domain_error("invert_profile: flat unbounded profile");
    }
    return make_radius(std::move(knots), std::move(values), tail);
}

Profile radius_to_profile(const RadiusFunction& rho) {
    std::vector<double> knots{0.0}, values{0.0};
    if (rho.values[0] > 0.0) {
        knots.push_back(rho.values[0]);
        values.push_back(0.0);
    }
    for (std::size_t i = 0; i + 1 < rho.knots.size(); ++i) {
        double s = rho.segment_slope(i);
        if (s <= 0.0) continue;
        if (rho.values[i + 1] > knots.back() + kKnotTol) {
            knots.push_back(rho.values[i + 1]);
            values.push_back(rho.knots[i + 1]);
        }
    }
    if (rho.tail_slope > 0.0)
        return make_profile(std::move(knots), std::move(values), false,
                            1.0 / rho.tail_slope);
    if (knots.size() == 1 && rho.values.back() == 0.0) return profile_origin_indicator();
    return make_profile(std::move(knots), std::move(values), true);
}

RadiusFunction gauge_left_radius(const RadiusFunction& rho, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("gauge_left_radius: alpha <= 0");
    // New value at t is (t/alpha) * rho(alpha/t); each knot z > 0 of rho maps
    // to the knot alpha/z with value rho(z)/z. The limit at t -> 0 is the
    // tail slope of rho; rho(0)/alpha becomes the new tail slope.
    std::vector<double> knots{0.0}, values{rho.tail_slope};
    for (std::size_t i = rho.knots.size(); i-- > 0;) {
        double z = rho.knots[i];
        if (z <= 0.0) break;
        knots.push_back(alpha / z);
        values.push_back(rho.values[i] / z);
    }
    return make_radius(std::move(knots), std::move(values), rho.values[0] / alpha);
}

double upper_gamma_int(int k, double x) {
    if (k < 0) throw std::invalid_argument("upper_gamma_int: k < 0");
    if (!std::isfinite(x)) return 0.0;
    // U_k(x) = e^{-x} sum_{j=0..k} (k!/j!) x^j, exact for integer k.
    std::vector<double> c(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] = 1.0;
    for (int j = k; j > 0; --j)
        c[static_cast<std::size_t>(j - 1)] = c[static_cast<std::size_t>(j)] * j;
    double sum = 0.0, pw = 1.0;
    for (int j = 0; j <= k; ++j) {
        sum += c[static_cast<std::size_t>(j)] * pw;
        pw *= x;
    }
    return std::exp(-x) * sum;
}

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// integral_a^b e^{-t} (c + d t)^n dt with b possibly +inf.
double segment_exp_integral(double a, double b, double c, double d, int n) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
        double w = binom(n, k) * std::pow(c, n - k) * std::pow(d, k);
        if (w == 0.0) continue;
        total += w * (upper_gamma_int(k, a) - upper_gamma_int(k, b));
    }
    return total;
}

}  // namespace

double exp_level_integral(const RadiusFunction& rho, int n, LevelWeight weight,
                          double alpha) {
    if (n < 1) throw std::invalid_argument("exp_level_integral: n < 1");
    if (weight == LevelWeight::JExp) {
        if (alpha <= 0.0) throw std::invalid_argument("exp_level_integral: alpha <= 0");
        return exp_level_integral(gauge_left_radius(rho, alpha), n, LevelWeight::Exp);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < rho.knots.size(); ++i) {
        double a = rho.knots[i];
        double b = (i + 1 < rho.knots.size()) ? rho.knots[i + 1] : kInf;
        double d = rho.segment_slope(i);
        double c = rho.values[i] - d * a;
        total += segment_exp_integral(a, b, c, d, n);
    }
    if (!std::isfinite(total))
        throw std::domain_error("exp_level_integral: divergent integral");
    return total;
}

double profile_moment(const Profile& u, int k) {
    if (k < 0) throw std::invalid_argument("profile_moment: k < 0");
    if (u.is_zero()) throw std::domain_error("profile_moment: divergent (zero profile)");
    double total = 0.0;
    std::size_t nseg = u.segment_count();
    for (std::size_t i = 0; i < nseg; ++i) {
        double a = u.knots[i];
        double b = (i + 1 < u.knots.size()) ? u.knots[i + 1] : kInf;
        double s = u.segment_slope(i);
        double off = u.values[std::min(i, u.values.size() - 1)] - s * a;
        if (s == 0.0) {
            if (!std::isfinite(b))
                throw std::domain_error("profile_moment: divergent tail");
            total += std::exp(-off) * (std::pow(b, k + 1) - std::pow(a, k + 1)) / (k + 1);
        } else {
            // e^{-off} s^{-(k+1)} * integral_{sa}^{sb} w^k e^{-w} dw
            double hi = std::isfinite(b) ? s * b : kInf;
            total += std::exp(-off) / std::pow(s, k + 1) *
                     (upper_gamma_int(k, s * a) - upper_gamma_int(k, hi));
        }
    }
    return total;
}

bool profiles_equal(const Profile& a, const Profile& b, double tol) {
    if (a.bounded != b.bounded) return false;
    if (a.knots.size() != b.knots.size()) return false;
    for (std::size_t i = 0; i < a.knots.size(); ++i) {
        if (std::abs(a.knots[i] - b.knots[i]) > tol * (1.0 + std::abs(a.knots[i])))
            return false;
        if (std::abs(a.values[i] - b.values[i]) > tol * (1.0 + std::abs(a.values[i])))
            return false;
    }
    if (!a.bounded &&
        std::abs(a.tail_slope - b.tail_slope) > tol * (1.0 + std::abs(a.tail_slope)))
        return false;
    return true;
}

}  // namespace cdl
