#pragma once

#include <cstddef>
#include <vector>

namespace cdl {

/// Result of a dense simplex solve.
struct LpResult {
    enum class Status { Optimal, Unbounded, Infeasible, IterationLimit };
    Status status = Status::Optimal;
    double value = 0.0;
    std::vector<double> x;     // primal solution
    std::vector<double> dual;  // one multiplier per row
};

/// maximize c'x  subject to  A x <= b, x >= 0, with b >= 0.
/// Dense tableau simplex; Dantzig pricing with a Bland fallback. `A` is
/// row-major with `rows` x `cols` entries.
LpResult simplex_max(const std::vector<double>& A, std::size_t rows, std::size_t cols,
                     const std::vector<double>& b, const std::vector<double>& c,
                     std::size_t max_iter = 200000);

/// minimize sum(mu)  subject to  G mu >= f, mu >= 0, f >= 0.
/// Solved through the packing dual max f'y : G'y <= 1, y >= 0; the measure
/// mu is read off the dual multipliers. G is row-major `rows` x `cols`.
LpResult covering_min(const std::vector<double>& G, std::size_t rows, std::size_t cols,
                      const std::vector<double>& f);

}  // namespace cdl
