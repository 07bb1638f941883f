#include "dimcert/witness.hpp"

#include <cmath>
#include <cstdlib>

namespace dimcert {

Witness::Witness(const Scenario& sc, std::vector<double> c) : scenario(sc), coeffs(std::move(c)) {
    validate();
}

void Witness::validate() const {
    scenario.validate();
    const std::size_t n = static_cast<std::size_t>(scenario.n_preparations) * scenario.n_measurements;
    if (coeffs.size() != n)
        throw ValidationError("witness: expected " + std::to_string(n) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    for (double v : coeffs)
        if (!std::isfinite(v)) throw ValidationError("witness: non-finite coefficient");
}

Witness build_IN(int n) {
    if (n < 3) throw ValidationError("build_IN: N must be >= 3, got " + std::to_string(n));
    const int m = n - 1;
    Witness w;
    w.scenario = Scenario(n, m);
    w.coeffs.assign(static_cast<std::size_t>(n) * m, 0.0);
    for (int j = 0; j < m; ++j) w.at(0, j) = 1.0;
    for (int i = 1; i < n; ++i) {
        // rows are 0-based here; the anti-diagonal condition reads i+j = N-1
        for (int j = 0; j <= n - 1 - i - 1 && j < m; ++j) w.at(i, j) = 1.0;
        const int j_diag = n - 1 - i;
        if (j_diag >= 0 && j_diag < m) w.at(i, j_diag) = -1.0;
    }
    return w;
}

double bound_LN(int n, int d) {
    if (n < 3) throw ValidationError("bound_LN: N must be >= 3");
    if (d < 1 || d > n)
        throw ValidationError("bound_LN: d must satisfy 1 <= d <= N, got d = " + std::to_string(d) +
                              " for N = " + std::to_string(n));
    return static_cast<double>(n) * (n - 3) / 2.0 + 2.0 * d - 1.0;
}

double evaluate(const Witness& w, const CorrelationMatrix& cm) {
    w.validate();
    cm.validate();
    if (!(w.scenario == cm.scenario))
        throw ValidationError("evaluate: witness scenario " + w.scenario.str() + " does not match matrix scenario " +
                              cm.scenario.str());
    double sum = 0.0;
    for (std::size_t i = 0; i < w.coeffs.size(); ++i) sum += w.coeffs[i] * cm.e[i];
    return sum;
}

double algebraic_max(const Witness& w) {
    w.validate();
    double sum = 0.0;
    for (double v : w.coeffs) sum += std::abs(v);
    return sum;
}

double evaluate_J3(const CorrelationMatrix& cm, double clamp_tol) {
    // Shape check only: an entry an ulp past +/-1 is floating noise here,
    // handled by the clamp below rather than the strict range invariant.
    cm.scenario.validate();
    if (cm.scenario.n_preparations != 3 || cm.scenario.n_measurements != 2)
        throw ValidationError("evaluate_J3: requires the (N=3, m=2) scenario, got " + cm.scenario.str());
    if (cm.e.size() != 6) throw ValidationError("evaluate_J3: malformed matrix");
    auto term = [&](int x, int y) {
        double v = cm.at(x, y);
        if (v > 1.0 + clamp_tol || v < -1.0 - clamp_tol)
            throw ValidationError("evaluate_J3: entry beyond the asin domain at (x=" + std::to_string(x + 1) +
                                  ", y=" + std::to_string(y + 1) + ")");
        v = std::min(1.0, std::max(-1.0, v));
        return std::asin(v);
    };
    const double t = term(0, 0) + term(0, 1) + term(1, 0) - term(1, 1) - term(2, 0);
    return std::abs(t);
}

} // namespace dimcert
