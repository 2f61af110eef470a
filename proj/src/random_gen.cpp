#include "cdl/random_gen.hpp"

#include <algorithm>
#include <cmath>

namespace cdl {

Profile random_profile(Rng& rng) {
    int segments = 2 + static_cast<int>(rng.integer(6));  // 3-8 breakpoints
    bool zero_start = rng.integer(4) == 0;
    bool bounded = rng.integer(4) == 0;
    std::vector<double> slopes;
    for (int i = 0; i < segments; ++i) slopes.push_back(rng.uniform(0.2, 3.0));
    std::sort(slopes.begin(), slopes.end());
    if (zero_start) slopes.insert(slopes.begin(), 0.0);
    std::vector<double> knots{0.0}, values{0.0};
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        double len = rng.uniform(0.2, 1.2);
        knots.push_back(knots.back() + len);
        values.push_back(values.back() + slopes[i] * len);
    }
    if (bounded) {
        double len = rng.uniform(0.2, 1.2);
        knots.push_back(knots.back() + len);
        values.push_back(values.back() + slopes.back() * len);
        return make_profile(knots, values, true);
    }
    return make_profile(knots, values, false, slopes.back());
}

ConvexBody random_vpolytope(Rng& rng, int dim, bool symmetric) {
    if (dim == 1) {
        double a = rng.uniform(0.3, 2.0), b = rng.uniform(0.3, 2.0);
        if (symmetric) b = a;
        return ConvexBody::vpolytope({{-a}, {b}});
    }
    int count = dim + 2 + static_cast<int>(rng.integer(5));
    Vec shift(dim, 0.0);
    if (!symmetric)
        for (int a = 0; a < dim; ++a) shift[a] = rng.uniform(-0.25, 0.25);
    std::vector<Vec> verts;
    for (int v = 0; v < count; ++v) {
        Vec p(dim);
        double len = 0.0;
        for (int a = 0; a < dim; ++a) {
            p[a] = rng.normal();
            len += p[a] * p[a];
        }
        len = std::sqrt(len);
        if (len < 1e-9) {
            --v;
            continue;
        }
        double r = rng.uniform(0.8, 1.4);
        for (int a = 0; a < dim; ++a) p[a] = shift[a] + r * p[a] / len;
        verts.push_back(p);
        if (symmetric) {
            Vec q = p;
            for (double& c : q) c = -c;
            verts.push_back(q);
        }
    }
    // Guarantee the origin is interior: add a small cross if needed.
    for (int a = 0; a < dim; ++a) {
        Vec e(dim, 0.0);
        e[a] = 0.45;
        verts.push_back(e);
        e[a] = -0.45;
        verts.push_back(e);
    }
    return ConvexBody::vpolytope(std::move(verts));
}

RadialFunction random_radial(Rng& rng, int dim, bool symmetric_body) {
    return make_radial(random_vpolytope(rng, dim, symmetric_body), random_profile(rng));
}

}  // namespace cdl
