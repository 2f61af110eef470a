#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cdl/profile.hpp"
#include "cdl/radial.hpp"

namespace cdl {

/// Regular lattice spec: symmetric per-axis ranges [lo, hi] with uniform
/// step h per axis (all axes share h in practice).
struct GridSpec {
    int dim = 1;
    std::vector<double> lo;
    std::vector<double> hi;
    double h = 1.0 / 64.0;

    std::vector<std::size_t> npoints() const;
    std::size_t total_points() const;
    static GridSpec cube(int dim, double half_range, double h);
};

/// Sampled convex function on a lattice; +inf marks points outside the
/// effective domain and never enters arithmetic.
struct GridFunction {
    GridSpec spec;
    std::vector<double> values;  // row-major, +inf allowed
    std::string provenance;
    bool truncation_warning = false;  // e^-f above 1e-12 somewhere on the boundary

    double at(const std::vector<std::size_t>& idx) const;
    Vec point(const std::vector<std::size_t>& idx) const;
    Vec point_flat(std::size_t flat) const;
    double value_flat(std::size_t flat) const { return values[flat]; }

    /// Kuhn-simplex (piecewise linear) interpolation; +inf outside the box
    /// or when the containing simplex touches an infinite corner.
    double interpolate(const Vec& x) const;
};

GridFunction sample(const RadialFunction& phi, const GridSpec& spec);
GridFunction sample_gaussian(const GridSpec& spec);
GridFunction sample_quadratic(const std::vector<double>& Q, const GridSpec& spec);
GridFunction sample_custom(const std::function<double(const Vec&)>& f,
                           const GridSpec& spec);

/// Largest negative second difference (scaled by 1/h^2) over axis and
/// diagonal directions; ~0 for convex samples.
double discrete_convexity_violation(const GridFunction& f);

/// Discrete transforms. Legendre runs the per-axis fast conjugate; Polarity
/// is the direct sup with the profile-module division conventions; GaugeJ
/// inverts the epigraph map F(x,z) = (x/z, 1/z) pointwise.
GridFunction transform_grid(const GridFunction& f, TransformKind kind,
                            double alpha = 1.0, const GridSpec* out_spec = nullptr);

/// Riemann sum of e^{-scale f} h^n. Throws when the estimated boundary mass
/// exceeds 1e-3 of the total.
double integral_grid(const GridFunction& f, double scale = 1.0);

/// Relative boundary-layer mass of e^{-f} (truncation estimate).
double mass_leakage(const GridFunction& f, double scale = 1.0);

struct InclusionCheck {
    bool ok;
    double worst_slack;  // max over points of support/c - 1 (<= 0 passes)
};

/// Verifies L_s(A_alpha f) subset of (st/alpha + 1) (L_t f)^polar via a
/// support-function test on the lattice hulls. `polar_shrink` < 1 shrinks
/// the target adversarially (harness self-test).
InclusionCheck level_inclusion_check(const GridFunction& f, double alpha, double s,
                                     double t, double polar_shrink = 1.0);

/// Sup-norm distance to an exact radial reference over the region where the
/// reference stays below `level_cap`.
double sup_error_vs_radial(const GridFunction& f, const RadialFunction& exact,
                           double level_cap);

/// Smallest level T whose sublevel region holds `fraction` of the mass of
/// e^{-phi}.
double mass_level(const RadialFunction& phi, double fraction);

void write_grid_csv(const GridFunction& f, const std::string& path);
void write_grid_binary(const GridFunction& f, const std::string& path);
GridFunction read_grid_binary(const std::string& path);

}  // namespace cdl
