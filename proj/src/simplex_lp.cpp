#include "cdl/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdl {

namespace {
constexpr double kEps = 1e-9;
constexpr double kPivTol = 1e-9;

// Deterministic jitter used to perturb the right-hand side: covering
// instances are heavily degenerate (0/1 matrices) and the perturbed
// program is simple for Dantzig pricing; the exact solution is recovered
// from the final basis afterwards.
double jitter(std::size_t i) {
    std::uint64_t x = (i + 1) * 0x9E3779B97F4A7C15ull;
    x ^= x >> 29;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 32;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}
}  // namespace

LpResult simplex_max(const std::vector<double>& A, std::size_t rows, std::size_t cols,
                     const std::vector<double>& b, const std::vector<double>& c,
                     std::size_t max_iter) {
    if (A.size() != rows * cols || b.size() != rows || c.size() != cols)
        throw std::invalid_argument("simplex_max: dimension mismatch");
    double bmax = 1.0;
    for (double bi : b) {
        if (bi < -kEps) throw std::invalid_argument("simplex_max: requires b >= 0");
        bmax = std::max(bmax, std::abs(bi));
    }

    // Tableau: rows x (cols + rows + 1); slack basis start; rhs perturbed.
    const std::size_t W = cols + rows + 1;
    const double eta = 1e-7 * bmax;
    std::vector<double> T(rows * W, 0.0);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) T[i * W + j] = A[i * cols + j];
        T[i * W + cols + i] = 1.0;
        T[i * W + W - 1] = std::max(b[i], 0.0) + eta * (1.0 + jitter(i));
        basis[i] = cols + i;
    }
    std::vector<double> z(W, 0.0);  // reduced costs
    for (std::size_t j = 0; j < cols; ++j) z[j] = c[j];

    LpResult res;
    std::size_t iter = 0;
    const std::size_t bland_after = max_iter / 2;
    while (true) {
        if (++iter > max_iter) {
            res.status = LpResult::Status::IterationLimit;
            return res;
        }
        std::size_t enter = W;
        if (iter < bland_after) {
            double best = kEps;
            for (std::size_t j = 0; j + 1 < W; ++j)
                if (z[j] > best) {
                    best = z[j];
                    enter = j;
                }
        } else {  // Bland
            for (std::size_t j = 0; j + 1 < W; ++j)
                if (z[j] > kEps) {
                    enter = j;
                    break;
                }
        }
        if (enter == W) break;  // optimal

        // Min-ratio row; near-ties resolved toward the largest pivot
        // element for numerical stability.
        double theta = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < rows; ++i) {
            double a = T[i * W + enter];
            if (a <= kPivTol) continue;
            theta = std::min(theta, std::max(T[i * W + W - 1], 0.0) / a);
        }
        if (!std::isfinite(theta)) {
            res.status = LpResult::Status::Unbounded;
            return res;
        }
        std::size_t leave = rows;
        double bestpiv = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double a = T[i * W + enter];
            if (a <= kPivTol) continue;
            double ratio = std::max(T[i * W + W - 1], 0.0) / a;
            if (ratio <= theta + 1e-9 * (1.0 + theta) && a > bestpiv) {
                bestpiv = a;
                leave = i;
            }
        }

        double piv = T[leave * W + enter];
        for (std::size_t j = 0; j < W; ++j) T[leave * W + j] /= piv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == leave) continue;
            double f = T[i * W + enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < W; ++j) T[i * W + j] -= f * T[leave * W + j];
            if (T[i * W + W - 1] < 0.0 && T[i * W + W - 1] > -1e-9)
                T[i * W + W - 1] = 0.0;
        }
        double fz = z[enter];
        if (fz != 0.0)
            for (std::size_t j = 0; j < W; ++j) z[j] -= fz * T[leave * W + j];
        basis[leave] = enter;
    }

    // Undo the perturbation: the slack block holds the basis inverse, so
    // the basic solution for the original rhs is (B^-1 b) componentwise.
    res.status = LpResult::Status::Optimal;
    res.x.assign(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] >= cols) continue;
        double v = 0.0;
        for (std::size_t k = 0; k < rows; ++k)
            v += T[i * W + cols + k] * std::max(b[k], 0.0);
        res.x[basis[i]] = std::max(v, 0.0);
    }
    res.value = 0.0;
    for (std::size_t j = 0; j < cols; ++j) res.value += c[j] * res.x[j];
    res.dual.assign(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) res.dual[i] = -z[cols + i];
    return res;
}

LpResult covering_min(const std::vector<double>& G, std::size_t rows, std::size_t cols,
                      const std::vector<double>& f) {
    if (G.size() != rows * cols || f.size() != rows)
        throw std::invalid_argument("covering_min: dimension mismatch");
    // Dual packing LP: variables y_i (one per covering constraint),
    // constraints sum_i y_i G[i][j] <= 1 for each measure atom j.
    std::vector<double> At(cols * rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) At[j * rows + i] = G[i * cols + j];
    std::vector<double> ones(cols, 1.0);
    LpResult dual = simplex_max(At, cols, rows, ones, f);
    LpResult res;
    res.status = dual.status;
    if (dual.status == LpResult::Status::Unbounded)
        res.status = LpResult::Status::Infeasible;  // unbounded dual = infeasible primal
    if (res.status != LpResult::Status::Optimal) return res;
    // Covering optimum = packing optimum; report the measure (packing
    // duals) and its total mass, which agree with the packing value by
    // strong duality.
    res.x = dual.dual;
    for (double& v : res.x) v = std::max(v, 0.0);
    res.value = 0.0;
    for (double v : res.x) res.value += v;
    res.dual = dual.x;
    return res;
}

}  // namespace cdl
