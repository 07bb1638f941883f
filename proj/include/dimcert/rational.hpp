#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dimcert {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Best rational approximation p/q to x with 1 <= q <= max_den
/// (continued-fraction convergents plus the final semiconvergent).
Rational best_rational_approx(double x, std::int64_t max_den);

/// Divides the vector by the gcd of its entries (no-op on the zero vector).
/// Sign is left untouched.
void normalize_by_gcd(std::vector<BigInt>& v);

/// Incremental rank of a set of rational row vectors, kept in row-echelon
/// form.  add_row() returns true when the row was independent of the
/// rows seen so far.
class IncrementalRank {
public:
    explicit IncrementalRank(std::size_t n_cols) : n_cols_(n_cols) {}

    bool add_row(std::vector<Rational> row);
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    std::size_t n_cols_;
    std::vector<std::vector<Rational>> rows_; // echelon rows
    std::vector<std::size_t> pivots_;         // pivot column per row
};

/// Rank of a rational matrix given as a list of rows.
int rational_rank(const std::vector<std::vector<Rational>>& rows, std::size_t n_cols);

} // namespace dimcert
