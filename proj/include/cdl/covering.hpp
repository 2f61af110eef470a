#pragma once

#include <optional>

#include "cdl/grid.hpp"
#include "cdl/radial.hpp"

namespace cdl {

RadialFunction reflect(const RadialFunction& phi);

/// Exact inf-convolution for same-body pairs; throws on body mismatch
/// (mixed pairs take the grid route).
RadialFunction inf_conv(const RadialFunction& phi, const RadialFunction& psi);
RadialFunction g_inf_conv(const RadialFunction& phi, const RadialFunction& psi);

/// The four volume bounds on N(e^-phi, e^-psi):
///   lower        int e^{-2 phi} / int e^{-(phi+psi)}
///   upper_even   2^n * lower
///   upper_infc   int e^{-phi □ psi^-} / int e^{-2 psi^-}
///   upper_ginf   2^n int e^{-phi ⊡ psi^-} / int e^{-2 psi^-}
struct CoveringEstimate {
    double lower_bound = 0.0;
    double upper_even = 0.0;
    double upper_infc = 0.0;
    double upper_ginf = 0.0;
    std::optional<double> lp_value;
    std::optional<double> greedy_value;
    double lp_slack = 0.0;  // grid-refinement ratio for the LP value
    GridSpec grid;
};

/// Bounds from exact radial integrals; convolution bounds need phi and
/// psi^- on the same body (symmetric bodies qualify), otherwise they fall
/// back to the grid pipeline on `fallback` when provided.
CoveringEstimate covering_volume_bounds(const RadialFunction& phi,
                                        const RadialFunction& psi,
                                        const GridSpec* fallback = nullptr);

struct CoveringLpResult {
    double value = 0.0;
    bool exact = false;             // dense simplex (vs greedy upper bound)
    std::vector<double> measure;    // atom weights
    std::vector<Vec> support;       // atom locations
};

/// Covering number N(e^-f, e^-g) over grid-supported measures with
/// constraints at the lattice points where e^-f is non-negligible. Exact
/// dense-simplex solve up to 512 constraints, greedy cover beyond.
CoveringLpResult covering_lp(const GridFunction& f, const GridFunction& g,
                             std::size_t exact_limit = 512);

/// Ratio int e^{-phi ⊡ phi^-} / int e^{-phi} (qualitative Rogers-Shephard).
double rs_ratio(const RadialFunction& phi);

/// (int e^{-2 phi}, int e^{-phi}, 2^n int e^{-2 phi}); a <= b <= c.
struct KmSquare {
    double a, b, c;
};
KmSquare km_square_check(const RadialFunction& phi);

struct DualityReport {
    int n = 0;
    double alpha = 0.0;
    double primal_estimate = 0.0;  // sqrt(lower*upper_even), or LP when exact
    double dual_estimate = 0.0;
    double ratio = 0.0;            // primal / dual estimate
    double ratio_lower = 0.0;      // certified corridor from the volume bounds
    double ratio_upper = 0.0;
    bool used_lp = false;
};

/// Covering-number duality experiment for the scaled polarity: compares
/// N(e^-phi, e^-psi) against N(e^-A_alpha psi, e^-A_alpha phi).
DualityReport duality_experiment(const RadialFunction& phi, const RadialFunction& psi,
                                 double alpha, const GridSpec* lp_grid = nullptr);

}  // namespace cdl
