#pragma once

#include <cstdint>
#include <vector>

#include "dimcert/scenario.hpp"

namespace dimcert {

inline constexpr unsigned long long kDefaultVertexCap = 1'000'000;

/// Extreme point of the dimension-restricted correlation polytope: a +/-1
/// sign matrix.  Restricted to messages of dimension d it has at most
/// min(d, 2^m, N) distinct rows.
struct DeterministicVertex {
    Scenario scenario;
    std::vector<int8_t> signs; // row-major N x m, entries +1/-1

    int8_t at(int x, int y) const { return signs[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }
    int distinct_rows() const;
    CorrelationMatrix to_correlations() const;
};

/// Effective distinct-row bound min(d, 2^m, N).
int effective_row_limit(const Scenario& sc, int d);

/// Closed-form count of sign matrices with at most min(d, 2^m, N) distinct
/// rows: sum over j of S(N,j) * 2^m * (2^m - 1) * ... * (2^m - j + 1).
unsigned long long vertex_count(const Scenario& sc, int d);

/// All vertices of the d-restricted polytope in lexicographic order
/// (flattened row-major, -1 before +1).  Refuses when the count exceeds
/// `cap`.
std::vector<DeterministicVertex> enumerate_vertices(const Scenario& sc, int d,
                                                    unsigned long long cap = kDefaultVertexCap);

/// Row patterns are m-bit integers: bit (m-1-j) set means column j is +1, so
/// ascending pattern value is ascending lexicographic row order.
int8_t pattern_sign(std::uint32_t pattern, int col, int n_cols);

DeterministicVertex vertex_from_tuple(const Scenario& sc, const std::uint32_t* tuple);

} // namespace dimcert
