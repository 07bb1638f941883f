#include "dimcert/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dimcert {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp); // x = mant * 2^exp, |mant| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r(scaled);
    if (exp >= 0) {
        r *= Rational(BigInt(1) << exp);
    } else {
        r /= Rational(BigInt(1) << -exp);
    }
    return r;
}

Rational best_rational_approx(double x, std::int64_t max_den) {
    if (max_den < 1) throw std::invalid_argument("best_rational_approx: max_den < 1");
    const bool neg = x < 0;
    double v = neg ? -x : x;

    // Continued-fraction convergents h/k of v.
    std::int64_t h_prev = 1, k_prev = 0; // h_{-1}/k_{-1}
    std::int64_t h = static_cast<std::int64_t>(std::floor(v)), k = 1;
    double frac = v - std::floor(v);
    while (frac > 1e-15) {
        double inv = 1.0 / frac;
        auto a = static_cast<std::int64_t>(std::floor(inv));
        frac = inv - std::floor(inv);
        if (k_prev + a * k > max_den) {
            // Best semiconvergent with denominator within the cap.
            std::int64_t a_cut = (max_den - k_prev) / k;
            if (2 * a_cut >= a) { // semiconvergent at least as close as h/k
                std::int64_t h_semi = h_prev + a_cut * h;
                std::int64_t k_semi = k_prev + a_cut * k;
                double err_conv = std::abs(v - double(h) / double(k));
                double err_semi = std::abs(v - double(h_semi) / double(k_semi));
                if (err_semi < err_conv) { h = h_semi; k = k_semi; }
            }
            break;
        }
        std::int64_t h_next = h_prev + a * h;
        std::int64_t k_next = k_prev + a * k;
        h_prev = h; k_prev = k;
        h = h_next; k = k_next;
    }
    Rational r(h, k);
    return neg ? -r : r;
}

void normalize_by_gcd(std::vector<BigInt>& v) {
    BigInt g = 0;
    for (const auto& e : v) g = boost::multiprecision::gcd(g, e);
    if (g == 0 || g == 1) return;
    for (auto& e : v) e /= g;
}

bool IncrementalRank::add_row(std::vector<Rational> row) {
    if (row.size() != n_cols_) throw std::invalid_argument("IncrementalRank: column mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t p = pivots_[r];
        if (row[p] == 0) continue;
        const Rational f = row[p] / rows_[r][p];
        for (std::size_t c = 0; c < n_cols_; ++c) row[c] -= f * rows_[r][c];
    }
    std::size_t pivot = n_cols_;
    for (std::size_t c = 0; c < n_cols_; ++c) {
        if (row[c] != 0) { pivot = c; break; }
    }
    if (pivot == n_cols_) return false;
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

int rational_rank(const std::vector<std::vector<Rational>>& rows, std::size_t n_cols) {
    IncrementalRank tracker(n_cols);
    for (const auto& r : rows) tracker.add_row(r);
    return tracker.rank();
}

} // namespace dimcert
