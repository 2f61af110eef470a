#include "cdl/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cdl/simplex_lp.hpp"

namespace cdl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGeomTol = 1e-9;

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scaled(const Vec& a, double c) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Vec cross3(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - 1e-12) return true;
        if (a[i] > b[i] + 1e-12) return false;
    }
    return false;
}

void check_dim(const ConvexBody& K, const Vec& x) {
    if (static_cast<int>(x.size()) != K.dim)
        throw std::invalid_argument("ConvexBody: dimension mismatch");
}

// det and inverse for 1x1..3x3 row-major matrices.
double det_n(const std::vector<double>& m, int n) {
    if (n == 1) return m[0];
    if (n == 2) return m[0] * m[3] - m[1] * m[2];
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

std::vector<double> inverse_n(const std::vector<double>& m, int n) {
    double d = det_n(m, n);
    if (std::abs(d) < 1e-14) throw std::domain_error("matrix not invertible");
    if (n == 1) return {1.0 / m[0]};
    if (n == 2) return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
    std::vector<double> r(9);
    r[0] = (m[4] * m[8] - m[5] * m[7]) / d;
    r[1] = (m[2] * m[7] - m[1] * m[8]) / d;
    r[2] = (m[1] * m[5] - m[2] * m[4]) / d;
    r[3] = (m[5] * m[6] - m[3] * m[8]) / d;
    r[4] = (m[0] * m[8] - m[2] * m[6]) / d;
    r[5] = (m[2] * m[3] - m[0] * m[5]) / d;
    r[6] = (m[3] * m[7] - m[4] * m[6]) / d;
    r[7] = (m[1] * m[6] - m[0] * m[7]) / d;
    r[8] = (m[0] * m[4] - m[1] * m[3]) / d;
    return r;
}

// Solve n x n system by Gaussian elimination; returns nullopt when nearly
// singular.
std::optional<Vec> solve_n(std::vector<double> A, Vec b, int n) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
        if (std::abs(A[piv * n + col]) < 1e-10) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A[piv * n + j], A[col * n + j]);
            std::swap(b[piv], b[col]);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = A[r * n + col] / A[col * n + col];
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / A[i * n + i];
    return x;
}

// Separation LP: largest <p,a> - b over |a|_inf <= 1, <v_j,a> <= b. Positive
// optimum means p lies strictly outside conv(points).
double separation_margin(const Vec& p, const std::vector<Vec>& points) {
    std::size_t n = p.size();
    std::size_t m = points.size();
    if (m == 0) return norm(p) > 0 ? 1.0 : 0.0;
    // Variables: a+ (n), a- (n), b+ (1), b- (1).
    std::size_t cols = 2 * n + 2;
    std::size_t rows = m + 2 * n;
    std::vector<double> A(rows * cols, 0.0);
    std::vector<double> b(rows, 0.0);
    std::vector<double> c(cols, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            A[j * cols + i] = points[j][i];
            A[j * cols + n + i] = -points[j][i];
        }
        A[j * cols + 2 * n] = -1.0;
        A[j * cols + 2 * n + 1] = 1.0;
        b[j] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        A[(m + i) * cols + i] = 1.0;
        b[m + i] = 1.0;
        A[(m + n + i) * cols + n + i] = 1.0;
        b[m + n + i] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = p[i];
        c[n + i] = -p[i];
    }
    c[2 * n] = -1.0;
    c[2 * n + 1] = 1.0;
    LpResult r = simplex_max(A, rows, cols, b, c);
    if (r.status != LpResult::Status::Optimal)
        throw std::runtime_error("separation LP failed");
    return r.value;
}

std::vector<Vec> extreme_points(std::vector<Vec> pts) {
    // Dedupe first.
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec& a, const Vec& b) {
                              return !lex_less(a, b) && !lex_less(b, a);
                          }),
              pts.end());
    std::vector<Vec> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (separation_margin(pts[i], others) > kGeomTol) out.push_back(pts[i]);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

// Supporting hyperplanes of conv(vertices), outward-oriented and normalized
// to |normal| = 1, deduped.
std::vector<Halfspace> hull_facets(const std::vector<Vec>& v, int n) {
    std::vector<Halfspace> out;
    auto add = [&out](Vec normal, double offset) {
        double len = norm(normal);
        if (len < 1e-12) return;
        normal = scaled(normal, 1.0 / len);
        offset /= len;
        for (const Halfspace& h : out) {
            double diff = 0.0;
            for (std::size_t i = 0; i < normal.size(); ++i)
                diff += std::abs(h.normal[i] - normal[i]);
            if (diff < 1e-9 && std::abs(h.offset - offset) < 1e-9) return;
        }
        out.push_back({std::move(normal), offset});
    };
    auto try_plane = [&](Vec normal, const Vec& base) {
        double len = norm(normal);
        if (len < 1e-12) return;
        double off = dot(normal, base);
        double lo = 0.0, hi = 0.0;
        for (const Vec& p : v) {
            double s = dot(normal, p) - off;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        double scale = len * (1.0 + norm(base));
        if (hi <= kGeomTol * scale) add(normal, off);
        if (lo >= -kGeomTol * scale) add(scaled(normal, -1.0), -off);
    };
    std::size_t m = v.size();
    if (n == 1) {
        double mn = v[0][0], mx = v[0][0];
        for (const Vec& p : v) {
            mn = std::min(mn, p[0]);
            mx = std::max(mx, p[0]);
        }
        out.push_back({{1.0}, mx});
        out.push_back({{-1.0}, -mn});
        return out;
    }
    if (n == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                Vec e = sub(v[j], v[i]);
                try_plane({e[1], -e[0]}, v[i]);
            }
        return out;
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k)
                try_plane(cross3(sub(v[j], v[i]), sub(v[k], v[i])), v[i]);
    return out;
}

// Vertices of a facet polygon, ordered counterclockwise around the outward
// normal.
std::vector<Vec> facet_polygon(const std::vector<Vec>& verts, const Halfspace& h) {
    std::vector<Vec> on;
    for (const Vec& p : verts)
        if (std::abs(dot(h.normal, p) - h.offset) < 1e-8 * (1.0 + std::abs(h.offset)) + 1e-9)
            on.push_back(p);
    if (on.size() < 3) return on;
    Vec c(on[0].size(), 0.0);
    for (const Vec& p : on)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i] / on.size();
    Vec e1 = sub(on[0], c);
    e1 = scaled(e1, 1.0 / norm(e1));
    Vec e2 = cross3(h.normal, e1);
    std::sort(on.begin(), on.end(), [&](const Vec& a, const Vec& b) {
        Vec da = sub(a, c), db = sub(b, c);
        return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
    });
    return on;
}

struct VolumeCentroid {
    double vol;
    Vec centroid;
};

VolumeCentroid polytope_volume_centroid(const std::vector<Vec>& verts, int n) {
    if (verts.empty()) throw std::invalid_argument("polytope with no vertices");
    if (n == 1) {
        double mn = verts[0][0], mx = verts[0][0];
        for (const Vec& p : verts) {
            mn = std::min(mn, p[0]);
            mx = std::max(mx, p[0]);
        }
        return {mx - mn, {(mn + mx) / 2.0}};
    }
    if (n == 2) {
        // Order extreme points around their mean, then fan from the origin.
        std::vector<Vec> v = verts;
        Vec c(2, 0.0);
        for (const Vec& p : v) {
            c[0] += p[0] / v.size();
            c[1] += p[1] / v.size();
        }
        std::sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
            return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
        });
        double vol = 0.0;
        Vec cen(2, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec& a = v[i];
            const Vec& b = v[(i + 1) % v.size()];
            double s = (a[0] * b[1] - a[1] * b[0]) / 2.0;
            vol += s;
            cen[0] += s * (a[0] + b[0]) / 3.0;
            cen[1] += s * (a[1] + b[1]) / 3.0;
        }
        if (std::abs(vol) < 1e-15) throw std::domain_error("degenerate polytope");
        return {std::abs(vol), {cen[0] / vol, cen[1] / vol}};
    }
    std::vector<Halfspace> facets = hull_facets(verts, 3);
    double vol = 0.0;
    Vec cen(3, 0.0);
    for (const Halfspace& h : facets) {
        std::vector<Vec> poly = facet_polygon(verts, h);
        if (poly.size() < 3) continue;
        for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
            const Vec& a = poly[0];
            const Vec& b = poly[i];
            const Vec& d = poly[i + 1];
            double s = dot(a, cross3(b, d)) / 6.0;  // signed tetra volume with 0
            vol += s;
            for (int j = 0; j < 3; ++j) cen[j] += s * (a[j] + b[j] + d[j]) / 4.0;
        }
    }
    if (std::abs(vol) < 1e-15) throw std::domain_error("degenerate polytope");
    return {std::abs(vol), {cen[0] / vol, cen[1] / vol, cen[2] / vol}};
}

std::vector<Vec> enumerate_h_vertices(const std::vector<Halfspace>& planes, int n) {
    std::size_t m = planes.size();
    std::vector<Vec> pts;
    auto feasible = [&](const Vec& p) {
        for (const Halfspace& h : planes)
            if (dot(h.normal, p) > h.offset + 1e-8 * (1.0 + std::abs(h.offset)))
                return false;
        return true;
    };
    auto consider = [&](const std::vector<std::size_t>& idx) {
        std::vector<double> A(n * n);
        Vec b(n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) A[r * n + c] = planes[idx[r]].normal[c];
            b[r] = planes[idx[r]].offset;
        }
        auto x = solve_n(A, b, n);
        if (x && feasible(*x)) pts.push_back(*x);
    };
    if (n == 1) {
        for (std::size_t i = 0; i < m; ++i) consider({i});
    } else if (n == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) consider({i, j});
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k) consider({i, j, k});
    }
    return extreme_points(std::move(pts));
}

Vec all_zero(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

}  // namespace

ConvexBody ConvexBody::ball(int dim, double radius) {
    if (dim < 1 || radius <= 0.0) throw std::invalid_argument("ball: bad parameters");
    ConvexBody K;
    K.dim = dim;
    K.kind = ShapeKind::Ball;
    K.radius = radius;
    return K;
}

ConvexBody ConvexBody::ellipsoid(int dim, std::vector<double> matrix) {
    if (dim < 1 || dim > 3 || matrix.size() != static_cast<std::size_t>(dim * dim))
        throw std::invalid_argument("ellipsoid: bad matrix");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (std::abs(matrix[i * dim + j] - matrix[j * dim + i]) > 1e-12)
                throw std::invalid_argument("ellipsoid: matrix not symmetric");
    if (det_n(matrix, dim) <= 0.0)
        throw std::invalid_argument("ellipsoid: matrix not positive definite");
    ConvexBody K;
    K.dim = dim;
    K.kind = ShapeKind::Ellipsoid;
    K.matrix = std::move(matrix);
    return K;
}

ConvexBody ConvexBody::box(Vec half_widths) {
    if (half_widths.empty()) throw std::invalid_argument("box: empty");
    for (double h : half_widths)
        if (h <= 0.0) throw std::invalid_argument("box: half widths must be positive");
    ConvexBody K;
    K.dim = static_cast<int>(half_widths.size());
    K.kind = ShapeKind::Box;
    K.half_widths = std::move(half_widths);
    return K;
}

ConvexBody ConvexBody::vpolytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw std::invalid_argument("vpolytope: no vertices");
    int dim = static_cast<int>(vertices[0].size());
    if (dim < 1 || dim > 3) throw std::invalid_argument("vpolytope: dim must be 1..3");
    for (const Vec& v : vertices)
        if (static_cast<int>(v.size()) != dim)
            throw std::invalid_argument("vpolytope: mixed dimensions");
    ConvexBody K;
    K.dim = dim;
    K.kind = ShapeKind::VPolytope;
    K.vertices = extreme_points(std::move(vertices));
    if (K.vertices.size() < static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("vpolytope: degenerate (no interior)");
    return K;
}

ConvexBody ConvexBody::hpolytope(int dim, std::vector<Halfspace> planes) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("hpolytope: dim must be 1..3");
    for (const Halfspace& h : planes) {
        if (static_cast<int>(h.normal.size()) != dim)
            throw std::invalid_argument("hpolytope: normal dimension mismatch");
        if (h.offset <= 0.0)
            throw std::invalid_argument("hpolytope: offsets must be positive (0 interior)");
    }
    // Canonical form: normalize offsets to 1, drop redundant planes via the
    // polar's extreme points, sort.
    std::vector<Vec> polar_pts;
    for (const Halfspace& h : planes) polar_pts.push_back(scaled(h.normal, 1.0 / h.offset));
    polar_pts = extreme_points(std::move(polar_pts));
    std::vector<Halfspace> canon;
    for (Vec& p : polar_pts) canon.push_back({std::move(p), 1.0});
    ConvexBody K;
    K.dim = dim;
    K.kind = ShapeKind::HPolytope;
    K.planes = std::move(canon);
    // Bounded iff the origin is interior to the hull of the scaled normals.
    std::vector<Vec> polar_hull;
    for (const Halfspace& h : K.planes) polar_hull.push_back(h.normal);
    if (polar_hull.size() < static_cast<std::size_t>(dim) + 1)
        throw std::invalid_argument("hpolytope: unbounded");
    for (const Halfspace& f : hull_facets(polar_hull, dim))
        if (f.offset <= kGeomTol) throw std::invalid_argument("hpolytope: unbounded");
    return K;
}

ConvexBody ConvexBody::simplex(std::vector<Vec> vertices, bool centered) {
    if (vertices.empty()) throw std::invalid_argument("simplex: no vertices");
    std::size_t n = vertices[0].size();
    if (vertices.size() != n + 1) throw std::invalid_argument("simplex: needs dim+1 vertices");
    if (centered) {
        Vec c(n, 0.0);
        for (const Vec& v : vertices)
            for (std::size_t i = 0; i < n; ++i) c[i] += v[i] / vertices.size();
        for (Vec& v : vertices)
            for (std::size_t i = 0; i < n; ++i) v[i] -= c[i];
    }
    return vpolytope(std::move(vertices));
}

double gauge(const ConvexBody& K, const Vec& x) {
    check_dim(K, x);
    switch (K.kind) {
        case ShapeKind::Ball:
            return norm(x) / K.radius;
        case ShapeKind::Ellipsoid: {
            double q = 0.0;
            for (int i = 0; i < K.dim; ++i)
                for (int j = 0; j < K.dim; ++j) q += x[i] * K.matrix[i * K.dim + j] * x[j];
            return std::sqrt(std::max(q, 0.0));
        }
        case ShapeKind::Box: {
            double g = 0.0;
            for (int i = 0; i < K.dim; ++i) g = std::max(g, std::abs(x[i]) / K.half_widths[i]);
            return g;
        }
        case ShapeKind::HPolytope: {
            double g = 0.0;
            for (const Halfspace& h : K.planes) g = std::max(g, dot(h.normal, x) / h.offset);
            return g;
        }
        case ShapeKind::VPolytope: {
            if (norm(x) == 0.0) return 0.0;
            // gauge_K(x) = sup{ <x,y> : <v_j,y> <= 1 } (support of the polar),
            // solved as a small LP with y split into positive parts.
            std::size_t n = x.size(), m = K.vertices.size();
            std::size_t cols = 2 * n;
            std::vector<double> A(m * cols), b(m, 1.0), c(cols);
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < n; ++i) {
                    A[j * cols + i] = K.vertices[j][i];
                    A[j * cols + n + i] = -K.vertices[j][i];
                }
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = x[i];
                c[n + i] = -x[i];
            }
            LpResult r = simplex_max(A, m, cols, b, c);
            if (r.status == LpResult::Status::Unbounded)
                throw std::domain_error("gauge: origin not interior to polytope");
            if (r.status != LpResult::Status::Optimal)
                throw std::runtime_error("gauge: LP failed");
            return std::max(r.value, 0.0);
        }
    }
    throw std::logic_error("gauge: unknown shape");
}

double support(const ConvexBody& K, const Vec& y) {
    check_dim(K, y);
    switch (K.kind) {
        case ShapeKind::Ball:
            return K.radius * norm(y);
        case ShapeKind::Ellipsoid: {
            std::vector<double> inv = inverse_n(K.matrix, K.dim);
            double q = 0.0;
            for (int i = 0; i < K.dim; ++i)
                for (int j = 0; j < K.dim; ++j) q += y[i] * inv[i * K.dim + j] * y[j];
            return std::sqrt(std::max(q, 0.0));
        }
        case ShapeKind::Box: {
            double s = 0.0;
            for (int i = 0; i < K.dim; ++i) s += K.half_widths[i] * std::abs(y[i]);
            return s;
        }
        case ShapeKind::VPolytope: {
            double s = -kInf;
            for (const Vec& v : K.vertices) s = std::max(s, dot(v, y));
            return s;
        }
        case ShapeKind::HPolytope: {
            double s = -kInf;
            for (const Vec& v : enumerate_h_vertices(K.planes, K.dim)) s = std::max(s, dot(v, y));
            return s;
        }
    }
    throw std::logic_error("support: unknown shape");
}

ConvexBody polar(const ConvexBody& K) {
    switch (K.kind) {
        case ShapeKind::Ball:
            return ConvexBody::ball(K.dim, 1.0 / K.radius);
        case ShapeKind::Ellipsoid:
            return ConvexBody::ellipsoid(K.dim, inverse_n(K.matrix, K.dim));
        case ShapeKind::Box: {
            std::vector<Vec> v;
            for (int i = 0; i < K.dim; ++i) {
                Vec e = all_zero(K.dim);
                e[i] = 1.0 / K.half_widths[i];
                v.push_back(e);
                e[i] = -e[i];
                v.push_back(e);
            }
            return ConvexBody::vpolytope(std::move(v));
        }
        case ShapeKind::VPolytope: {
            // Requires 0 interior: every facet offset positive.
            std::vector<Halfspace> facets = hull_facets(K.vertices, K.dim);
            for (const Halfspace& h : facets)
                if (h.offset <= kGeomTol)
                    throw std::domain_error("polar: origin not interior");
            std::vector<Halfspace> planes;
            for (const Vec& v : K.vertices) planes.push_back({v, 1.0});
            return ConvexBody::hpolytope(K.dim, std::move(planes));
        }
        case ShapeKind::HPolytope: {
            std::vector<Vec> v;
            for (const Halfspace& h : K.planes) v.push_back(scaled(h.normal, 1.0 / h.offset));
            return ConvexBody::vpolytope(std::move(v));
        }
    }
    throw std::logic_error("polar: unknown shape");
}

double volume(const ConvexBody& K) {
    switch (K.kind) {
        case ShapeKind::Ball:
            return unit_ball_volume(K.dim) * std::pow(K.radius, K.dim);
        case ShapeKind::Ellipsoid:
            return unit_ball_volume(K.dim) / std::sqrt(det_n(K.matrix, K.dim));
        case ShapeKind::Box: {
            double v = 1.0;
            for (double h : K.half_widths) v *= 2.0 * h;
            return v;
        }
        case ShapeKind::VPolytope:
            return polytope_volume_centroid(K.vertices, K.dim).vol;
        case ShapeKind::HPolytope:
            return polytope_volume_centroid(enumerate_h_vertices(K.planes, K.dim), K.dim).vol;
    }
    throw std::logic_error("volume: unknown shape");
}

Vec centroid(const ConvexBody& K) {
    switch (K.kind) {
        case ShapeKind::Ball:
        case ShapeKind::Ellipsoid:
        case ShapeKind::Box:
            return all_zero(K.dim);
        case ShapeKind::VPolytope:
            return polytope_volume_centroid(K.vertices, K.dim).centroid;
        case ShapeKind::HPolytope:
            return polytope_volume_centroid(enumerate_h_vertices(K.planes, K.dim), K.dim)
                .centroid;
    }
    throw std::logic_error("centroid: unknown shape");
}

ConvexBody difference_body(const ConvexBody& K) {
    switch (K.kind) {
        case ShapeKind::Ball:
            return ConvexBody::ball(K.dim, 2.0 * K.radius);
        case ShapeKind::Box: {
            Vec h = K.half_widths;
            for (double& x : h) x *= 2.0;
            return ConvexBody::box(std::move(h));
        }
        case ShapeKind::VPolytope: {
            std::vector<Vec> sums;
            for (const Vec& a : K.vertices)
                for (const Vec& b : K.vertices) sums.push_back(sub(a, b));
            return ConvexBody::vpolytope(std::move(sums));
        }
        default:
            throw std::invalid_argument("difference_body: unsupported shape variant");
    }
}

ConvexBody scale_body(const ConvexBody& K, double c) {
    if (c <= 0.0) throw std::invalid_argument("scale_body: factor must be positive");
    ConvexBody out = K;
    switch (K.kind) {
        case ShapeKind::Ball:
            out.radius *= c;
            break;
        case ShapeKind::Ellipsoid:
            for (double& m : out.matrix) m /= c * c;
            break;
        case ShapeKind::Box:
            for (double& h : out.half_widths) h *= c;
            break;
        case ShapeKind::VPolytope:
            for (Vec& v : out.vertices) v = scaled(v, c);
            break;
        case ShapeKind::HPolytope:
            for (Halfspace& h : out.planes) h.offset *= c;
            break;
    }
    return out;
}

ConvexBody negate_body(const ConvexBody& K) {
    ConvexBody out = K;
    switch (K.kind) {
        case ShapeKind::Ball:
        case ShapeKind::Ellipsoid:
        case ShapeKind::Box:
            return out;
        case ShapeKind::VPolytope: {
            std::vector<Vec> v;
            for (const Vec& p : K.vertices) v.push_back(scaled(p, -1.0));
            return ConvexBody::vpolytope(std::move(v));
        }
        case ShapeKind::HPolytope: {
            std::vector<Halfspace> planes;
            for (const Halfspace& h : K.planes)
                planes.push_back({scaled(h.normal, -1.0), h.offset});
            return ConvexBody::hpolytope(K.dim, std::move(planes));
        }
    }
    throw std::logic_error("negate_body: unknown shape");
}

bool body_is_symmetric(const ConvexBody& K, double tol) {
    switch (K.kind) {
        case ShapeKind::Ball:
        case ShapeKind::Ellipsoid:
        case ShapeKind::Box:
            return true;
        case ShapeKind::VPolytope:
        case ShapeKind::HPolytope:
            return bodies_equal(K, negate_body(K), tol);
    }
    return false;
}

std::vector<Vec> body_vertices(const ConvexBody& K) {
    switch (K.kind) {
        case ShapeKind::Box: {
            std::vector<Vec> v;
            std::size_t n = K.half_widths.size();
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                Vec p(n);
                for (std::size_t i = 0; i < n; ++i)
                    p[i] = (mask >> i & 1) ? K.half_widths[i] : -K.half_widths[i];
                v.push_back(p);
            }
            return v;
        }
        case ShapeKind::VPolytope:
            return K.vertices;
        case ShapeKind::HPolytope:
            return enumerate_h_vertices(K.planes, K.dim);
        default:
            throw std::invalid_argument("body_vertices: not a polytope");
    }
}

bool bodies_equal(const ConvexBody& A, const ConvexBody& B, double tol) {
    if (A.dim != B.dim) return false;
    bool a_poly = A.kind == ShapeKind::Box || A.kind == ShapeKind::VPolytope ||
                  A.kind == ShapeKind::HPolytope;
    bool b_poly = B.kind == ShapeKind::Box || B.kind == ShapeKind::VPolytope ||
                  B.kind == ShapeKind::HPolytope;
    if (a_poly != b_poly) return false;
    if (!a_poly) {
        if (A.kind != B.kind) return false;
        if (A.kind == ShapeKind::Ball) return std::abs(A.radius - B.radius) <= tol;
        for (std::size_t i = 0; i < A.matrix.size(); ++i)
            if (std::abs(A.matrix[i] - B.matrix[i]) > tol) return false;
        return true;
    }
    std::vector<Vec> va = extreme_points(body_vertices(A));
    std::vector<Vec> vb = extreme_points(body_vertices(B));
    if (va.size() != vb.size()) return false;
    for (std::size_t i = 0; i < va.size(); ++i)
        for (std::size_t j = 0; j < va[i].size(); ++j)
            if (std::abs(va[i][j] - vb[i][j]) > tol) return false;
    return true;
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n < 1");
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

}  // namespace cdl
