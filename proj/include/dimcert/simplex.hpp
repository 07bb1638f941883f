#pragma once

#include <vector>

#include "dimcert/errors.hpp"

namespace dimcert::lp {

struct Phase1Options {
    double feas_tol = 1e-9;   // objective threshold below which the system counts as feasible
    double pivot_tol = 1e-9;  // reduced-cost threshold for entering candidates
    bool bland = false;       // Bland's rule: anti-cycling, used on retry
    int max_iterations = 0;   // 0 = automatic
    int refactor_every = 64;  // rebuild the basis inverse periodically
};

struct Phase1Result {
    bool feasible = false;
    std::vector<double> x; // structural solution (size = number of columns), valid when feasible
    std::vector<double> y; // Farkas row certificate (size = number of rows), valid when infeasible:
                           // y . A_j <= ~0 for every column j and y . b > 0
    double objective = 0.0;
    int iterations = 0;
};

/// Dense revised phase-1 simplex for { x >= 0 : A x = b }.  `columns` is
/// column-major (columns[j][i] = A_ij).  Throws SolverError on numerical
/// breakdown (singular basis, iteration cap, unbounded direction).
Phase1Result phase1_feasibility(const std::vector<std::vector<double>>& columns, const std::vector<double>& b,
                                const Phase1Options& opts = {});

} // namespace dimcert::lp
