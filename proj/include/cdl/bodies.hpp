#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cdl {

using Vec = std::vector<double>;

/// Halfspace <normal, x> <= offset.
struct Halfspace {
    Vec normal;
    double offset = 0.0;
};

enum class ShapeKind { Ball, Ellipsoid, Box, HPolytope, VPolytope };

/// A convex body in R^n (n <= 3 for polytopes) with the origin inside or on
/// the boundary. Immutable value type; polytope representations are
/// canonicalized at construction (extreme points only / irredundant
/// halfspaces, lexicographically sorted).
struct ConvexBody {
    int dim = 0;
    ShapeKind kind = ShapeKind::Ball;

    double radius = 0.0;              // Ball
    std::vector<double> matrix;       // Ellipsoid: SPD dim x dim, row-major
    Vec half_widths;                  // Box
    std::vector<Vec> vertices;        // VPolytope
    std::vector<Halfspace> planes;    // HPolytope

    static ConvexBody ball(int dim, double radius);
    static ConvexBody ellipsoid(int dim, std::vector<double> matrix);
    static ConvexBody box(Vec half_widths);
    static ConvexBody vpolytope(std::vector<Vec> vertices);
    static ConvexBody hpolytope(int dim, std::vector<Halfspace> planes);
    /// dim+1 affinely independent vertices; `centered` translates the
    /// simplex by minus its centroid so the origin becomes interior.
    static ConvexBody simplex(std::vector<Vec> vertices, bool centered);
};

/// Minkowski functional ||x||_K = inf{ t > 0 : x in tK }.
double gauge(const ConvexBody& K, const Vec& x);

/// Support function h_K(y) = sup_{x in K} <x,y>; equals gauge(polar(K), y).
double support(const ConvexBody& K, const Vec& y);

/// Polar body K° = { y : <x,y> <= 1 for all x in K }. Requires the origin
/// strictly inside K.
ConvexBody polar(const ConvexBody& K);

double volume(const ConvexBody& K);
Vec centroid(const ConvexBody& K);

/// K + (-K). Supported for V-polytopes, boxes and balls.
ConvexBody difference_body(const ConvexBody& K);

ConvexBody scale_body(const ConvexBody& K, double c);
ConvexBody negate_body(const ConvexBody& K);

bool body_is_symmetric(const ConvexBody& K, double tol = 1e-9);
bool bodies_equal(const ConvexBody& A, const ConvexBody& B, double tol = 1e-9);

/// Extreme points of the body (polytopal kinds only).
std::vector<Vec> body_vertices(const ConvexBody& K);

double unit_ball_volume(int n);

}  // namespace cdl
