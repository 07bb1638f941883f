#pragma once

#include <map>
#include <optional>
#include <vector>

#include "dimcert/scenario.hpp"

namespace dimcert {

/// Linear witness sum_xy w_xy * E_xy with optional cached per-dimension
/// bounds.  The cache is advisory; certification paths recompute.
struct Witness {
    struct Bounds {
        std::optional<double> classical; // C_d
        std::optional<double> quantum;   // Q_d
    };

    Scenario scenario;
    std::vector<double> coeffs; // row-major N x m
    std::map<int, Bounds> bounds;

    Witness() = default;
    Witness(const Scenario& sc, std::vector<double> c);

    double at(int x, int y) const { return coeffs[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }
    double& at(int x, int y) { return coeffs[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }

    void validate() const;
};

/// The I_N witness on the (N, m = N-1) scenario: first row all +1, and
/// alpha_ij = +1 below the anti-diagonal i+j = N+1, -1 on it, 0 beyond.
/// Coefficients are exact small integers.
Witness build_IN(int n);

/// Classical bound L_d = N(N-3)/2 + 2d - 1 of I_N, valid for 1 <= d <= N.
double bound_LN(int n, int d);

/// sum_xy w_xy E_xy.
double evaluate(const Witness& w, const CorrelationMatrix& cm);

/// sum_xy |w_xy|, the value with every correlator at its extreme sign.
double algebraic_max(const Witness& w);

/// |asin E_11 + asin E_12 + asin E_21 - asin E_22 - asin E_31| on the (3,2)
/// scenario.  Entries within `clamp_tol` of +/-1 are clamped; larger
/// excursions are validation errors.
double evaluate_J3(const CorrelationMatrix& cm, double clamp_tol = 1e-9);

} // namespace dimcert
