#include "dimcert/vertices.hpp"

#include <algorithm>
#include <limits>

#include "dimcert/rational.hpp"
#include "dimcert/vertex_sweep.hpp"

namespace dimcert {

namespace {

// Sweep LUTs are indexed by 2^m; anything larger is out of scope here.
constexpr int kMaxMeasurementsForEnumeration = 16;

void check_enumerable(const Scenario& sc, int d) {
    sc.validate();
    if (d < 1) throw ValidationError("vertex enumeration: d must be >= 1, got " + std::to_string(d));
    if (sc.n_measurements > kMaxMeasurementsForEnumeration)
        throw ResourceLimitError("vertex enumeration: m = " + std::to_string(sc.n_measurements) +
                                     " exceeds the supported limit " +
                                     std::to_string(kMaxMeasurementsForEnumeration),
                                 static_cast<unsigned long long>(sc.n_measurements),
                                 kMaxMeasurementsForEnumeration);
}

} // namespace

int DeterministicVertex::distinct_rows() const {
    const int N = scenario.n_preparations, m = scenario.n_measurements;
    int count = 0;
    for (int x = 0; x < N; ++x) {
        bool seen = false;
        for (int prev = 0; prev < x && !seen; ++prev)
            seen = std::equal(signs.begin() + static_cast<std::ptrdiff_t>(x) * m,
                              signs.begin() + static_cast<std::ptrdiff_t>(x + 1) * m,
                              signs.begin() + static_cast<std::ptrdiff_t>(prev) * m);
        if (!seen) ++count;
    }
    return count;
}

CorrelationMatrix DeterministicVertex::to_correlations() const {
    std::vector<double> e(signs.begin(), signs.end());
    return CorrelationMatrix(scenario, std::move(e));
}

int effective_row_limit(const Scenario& sc, int d) {
    long long patterns = sc.n_measurements >= 62 ? std::numeric_limits<long long>::max()
                                                 : (1LL << sc.n_measurements);
    long long lim = std::min<long long>({static_cast<long long>(d), patterns, sc.n_preparations});
    return static_cast<int>(lim);
}

unsigned long long vertex_count(const Scenario& sc, int d) {
    check_enumerable(sc, d);
    const int N = sc.n_preparations;
    const int D = effective_row_limit(sc, d);
    const BigInt patterns = BigInt(1) << sc.n_measurements;

    // Stirling partition numbers S(N, j).
    std::vector<std::vector<BigInt>> stirling(N + 1, std::vector<BigInt>(N + 1, 0));
    stirling[0][0] = 1;
    for (int n = 1; n <= N; ++n)
        for (int j = 1; j <= n; ++j) stirling[n][j] = BigInt(j) * stirling[n - 1][j] + stirling[n - 1][j - 1];

    BigInt total = 0;
    for (int j = 1; j <= D; ++j) {
        BigInt falling = 1;
        for (int k = 0; k < j; ++k) falling *= patterns - k;
        total += stirling[N][j] * falling;
    }
    if (total > std::numeric_limits<unsigned long long>::max())
        throw ResourceLimitError("vertex count overflows a 64-bit counter", 0,
                                 std::numeric_limits<unsigned long long>::max());
    return total.convert_to<unsigned long long>();
}

int8_t pattern_sign(std::uint32_t pattern, int col, int n_cols) {
    return (pattern >> (n_cols - 1 - col)) & 1u ? int8_t{1} : int8_t{-1};
}

DeterministicVertex vertex_from_tuple(const Scenario& sc, const std::uint32_t* tuple) {
    const int N = sc.n_preparations, m = sc.n_measurements;
    DeterministicVertex v;
    v.scenario = sc;
    v.signs.resize(static_cast<std::size_t>(N) * m);
    for (int x = 0; x < N; ++x)
        for (int j = 0; j < m; ++j)
            v.signs[static_cast<std::size_t>(x) * m + j] = pattern_sign(tuple[x], j, m);
    return v;
}

std::vector<DeterministicVertex> enumerate_vertices(const Scenario& sc, int d, unsigned long long cap) {
    const unsigned long long count = vertex_count(sc, d);
    if (count > cap)
        throw ResourceLimitError("vertex enumeration for " + sc.str() + " at d = " + std::to_string(d) +
                                     " would produce " + std::to_string(count) +
                                     " vertices, above the cap of " + std::to_string(cap),
                                 count, cap);
    std::vector<DeterministicVertex> out;
    out.reserve(count);
    const auto space = sweep::make_tuple_space(sc, d);
    sweep::for_each_tuple(space, [&](const std::uint32_t* tuple) { out.push_back(vertex_from_tuple(sc, tuple)); });
    return out;
}

namespace sweep {

TupleSpace make_tuple_space(const Scenario& sc, int d) {
    check_enumerable(sc, d);
    return TupleSpace{sc.n_preparations, 1 << sc.n_measurements, effective_row_limit(sc, d)};
}

namespace detail {

std::vector<Prefix> enumerate_prefixes(const TupleSpace& space, int len) {
    std::vector<Prefix> out;
    if (len == 1) {
        for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(space.n_patterns); ++p) {
            Prefix pre{};
            pre.patterns[0] = p;
            pre.used[0] = p;
            pre.len = 1;
            pre.n_used = 1;
            out.push_back(pre);
        }
        return out;
    }
    for (std::uint32_t p0 = 0; p0 < static_cast<std::uint32_t>(space.n_patterns); ++p0) {
        for (std::uint32_t p1 = 0; p1 < static_cast<std::uint32_t>(space.n_patterns); ++p1) {
            const int n_used = p0 == p1 ? 1 : 2;
            if (n_used > space.max_distinct) continue;
            Prefix pre{};
            pre.patterns = {p0, p1};
            pre.used = {p0, p1};
            pre.len = 2;
            pre.n_used = n_used;
            out.push_back(pre);
        }
    }
    return out;
}

} // namespace detail
} // namespace sweep

} // namespace dimcert
