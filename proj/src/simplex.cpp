#include "dimcert/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

// Phase-1 of the textbook two-phase method, in revised form with an explicit
// dense basis inverse.  Instances here are tiny (rows = N*m + 1 <= ~21,
// columns = vertex count), so the emphasis is on determinism and a clean
// Farkas certificate rather than sparse machinery.

namespace dimcert::lp {

namespace {

class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& columns, const std::vector<double>& b,
            const Phase1Options& opts)
        : cols_(columns), opts_(opts), m_(b.size()), k_(columns.size()) {
        for (const auto& c : cols_)
            if (c.size() != m_) throw SolverError("simplex: ragged column matrix");
        sigma_.resize(m_);
        b_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            sigma_[i] = b[i] < 0.0 ? -1.0 : 1.0;
            b_[i] = sigma_[i] * b[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = k_ + i; // artificial start
        binv_.assign(m_, std::vector<double>(m_, 0.0));
        for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1.0;
        xb_ = b_;
    }

    // A column of the sign-flipped system.
    double entry(std::size_t j, std::size_t i) const {
        return j < k_ ? sigma_[i] * cols_[j][i] : (j - k_ == i ? 1.0 : 0.0);
    }

    bool is_artificial(std::size_t j) const { return j >= k_; }

    double objective() const {
        double z = 0.0;
        for (std::size_t r = 0; r < m_; ++r)
            if (is_artificial(basis_[r])) z += xb_[r];
        return z;
    }

    std::vector<double> dual_row() const {
        // y = c_B^T B^{-1} with c = 1 on artificials.
        std::vector<double> y(m_, 0.0);
        for (std::size_t r = 0; r < m_; ++r)
            if (is_artificial(basis_[r]))
                for (std::size_t i = 0; i < m_; ++i) y[i] += binv_[r][i];
        return y;
    }

    // Returns the entering column or SIZE_MAX at optimality.
    std::size_t price(const std::vector<double>& y) const {
        std::size_t best = SIZE_MAX;
        double best_red = -opts_.pivot_tol;
        for (std::size_t j = 0; j < k_; ++j) {
            if (in_basis_[j]) continue;
            double yj = 0.0;
            for (std::size_t i = 0; i < m_; ++i) yj += y[i] * entry(j, i);
            const double reduced = -yj; // c_j = 0 for structurals
            if (opts_.bland) {
                if (reduced < -opts_.pivot_tol) return j; // smallest index wins
            } else if (reduced < best_red) {
                best_red = reduced;
                best = j;
            }
        }
        return best;
    }

    std::vector<double> direction(std::size_t j) const {
        std::vector<double> d(m_, 0.0);
        for (std::size_t r = 0; r < m_; ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) s += binv_[r][i] * entry(j, i);
            d[r] = s;
        }
        return d;
    }

    // Leaving row by minimum ratio.  Ties: under Bland's rule strictly the
    // smallest variable index (termination guarantee); otherwise prefer
    // driving an artificial out, then the smallest index.
    std::size_t ratio_test(const std::vector<double>& d) const {
        constexpr double kRatioTol = 1e-10;
        std::size_t row = SIZE_MAX;
        double best = 0.0;
        for (std::size_t r = 0; r < m_; ++r) {
            if (d[r] <= kRatioTol) continue;
            const double ratio = xb_[r] / d[r];
            if (row == SIZE_MAX || ratio < best - 1e-12) {
                row = r;
                best = ratio;
            } else if (ratio <= best + 1e-12) {
                if (opts_.bland) {
                    if (basis_[r] < basis_[row]) row = r;
                } else {
                    const bool cand_art = is_artificial(basis_[r]);
                    const bool curr_art = is_artificial(basis_[row]);
                    if ((cand_art && !curr_art) || (cand_art == curr_art && basis_[r] < basis_[row])) row = r;
                }
            }
        }
        return row;
    }

    void pivot(std::size_t enter, std::size_t row, const std::vector<double>& d) {
        const double piv = d[row];
        const double t = xb_[row] / piv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == row) continue;
            xb_[r] -= d[r] * t;
            if (xb_[r] < 0.0 && xb_[r] > -1e-12) xb_[r] = 0.0;
        }
        xb_[row] = t;
        for (std::size_t i = 0; i < m_; ++i) binv_[row][i] /= piv;
        for (std::size_t r = 0; r < m_; ++r) {
            if (r == row) continue;
            const double f = d[r];
            if (f == 0.0) continue;
            for (std::size_t i = 0; i < m_; ++i) binv_[r][i] -= f * binv_[row][i];
        }
        if (basis_[row] < k_) in_basis_[basis_[row]] = false;
        basis_[row] = enter;
        if (enter < k_) in_basis_[enter] = true;
    }

    void refactor() {
        // Gauss-Jordan inverse of the current basis matrix.
        std::vector<std::vector<double>> a(m_, std::vector<double>(2 * m_, 0.0));
        for (std::size_t r = 0; r < m_; ++r) {
            for (std::size_t i = 0; i < m_; ++i) a[i][r] = entry(basis_[r], i);
            a[r][m_ + r] = 1.0;
        }
        for (std::size_t col = 0; col < m_; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m_; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < 1e-13) throw SolverError("simplex: singular basis during refactorization");
            std::swap(a[col], a[piv]);
            const double p = a[col][col];
            for (std::size_t i = 0; i < 2 * m_; ++i) a[col][i] /= p;
            for (std::size_t r = 0; r < m_; ++r) {
                if (r == col) continue;
                const double f = a[r][col];
                if (f == 0.0) continue;
                for (std::size_t i = 0; i < 2 * m_; ++i) a[r][i] -= f * a[col][i];
            }
        }
        for (std::size_t r = 0; r < m_; ++r)
            for (std::size_t i = 0; i < m_; ++i) binv_[r][i] = a[r][m_ + i];
        for (std::size_t r = 0; r < m_; ++r) {
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) s += binv_[r][i] * b_[i];
            xb_[r] = std::max(s, 0.0);
        }
    }

    Phase1Result run() {
        in_basis_.assign(k_, false);
        const int cap = opts_.max_iterations > 0
                            ? opts_.max_iterations
                            : static_cast<int>(200 + 20 * (m_ + std::min<std::size_t>(k_, 10000)));
        int it = 0;
        for (; it < cap; ++it) {
            if (opts_.refactor_every > 0 && it > 0 && it % opts_.refactor_every == 0) refactor();
            const auto y = dual_row();
            const std::size_t enter = price(y);
            if (enter == SIZE_MAX) break;
            const auto d = direction(enter);
            const std::size_t row = ratio_test(d);
            if (row == SIZE_MAX)
                throw SolverError("simplex: unbounded pivot direction in phase 1 (numerical breakdown)");
            pivot(enter, row, d);
        }
        if (it >= cap) throw SolverError("simplex: iteration cap reached after " + std::to_string(it) + " pivots");

        refactor(); // tighten the final solution before reporting
        Phase1Result res;
        res.iterations = it;
        res.objective = objective();
        if (res.objective <= opts_.feas_tol) {
            res.feasible = true;
            res.x.assign(k_, 0.0);
            for (std::size_t r = 0; r < m_; ++r)
                if (basis_[r] < k_) res.x[basis_[r]] = std::max(xb_[r], 0.0);
        } else {
            res.feasible = false;
            const auto y = dual_row();
            res.y.resize(m_);
            for (std::size_t i = 0; i < m_; ++i) res.y[i] = sigma_[i] * y[i]; // undo the row flips
        }
        return res;
    }

private:
    const std::vector<std::vector<double>>& cols_;
    Phase1Options opts_;
    std::size_t m_, k_;
    std::vector<double> sigma_, b_, xb_;
    std::vector<std::size_t> basis_;
    std::vector<std::vector<double>> binv_;
    std::vector<bool> in_basis_;
};

} // namespace

Phase1Result phase1_feasibility(const std::vector<std::vector<double>>& columns, const std::vector<double>& b,
                                const Phase1Options& opts) {
    if (b.empty()) throw SolverError("simplex: empty system");
    Tableau t(columns, b, opts);
    return t.run();
}

} // namespace dimcert::lp
