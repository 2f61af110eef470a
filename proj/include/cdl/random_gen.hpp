#pragma once

#include <cstdint>
#include <random>

#include "cdl/bodies.hpp"
#include "cdl/profile.hpp"
#include "cdl/radial.hpp"

namespace cdl {

/// Deterministic RNG used by every experiment: mt19937_64 with explicit
/// mappings (never std distributions) so identical seeds give identical
/// streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    double normal() {
        // Box-Muller; cache the second sample.
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(1e-16, 1.0);
        double u2 = uniform(0.0, 1.0);
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t integer(std::uint64_t bound) { return engine_() % bound; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Random convex PL profile: 3-8 breakpoints, sorted positive slopes, with
/// occasional flat starts and bounded tails. Always integrable.
Profile random_profile(Rng& rng);

/// Random V-polytope with vertices on a sphere around a small random shift
/// (keeps the origin interior). `symmetric` reflects the vertex set instead.
ConvexBody random_vpolytope(Rng& rng, int dim, bool symmetric = false);

RadialFunction random_radial(Rng& rng, int dim, bool symmetric_body = false);

}  // namespace cdl
