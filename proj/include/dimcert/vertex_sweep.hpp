#pragma once

// Sweep kernels over the d-restricted vertex set, enumerated as tuples of
// row patterns without materializing vertices.  Each kernel has a serial
// reference path and an OpenMP path parallelized over row-prefix tasks; the
// merge is deterministic (ties broken by lexicographic tuple order), so both
// paths return identical results.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dimcert/parallel.hpp"
#include "dimcert/vertices.hpp"

namespace dimcert::sweep {

struct TupleSpace {
    int n_rows;       // N
    int n_patterns;   // 2^m
    int max_distinct; // min(d, 2^m, N)
};

TupleSpace make_tuple_space(const Scenario& sc, int d);

namespace detail {

/// Enumerates valid prefixes of length `len` (tuples with at most
/// max_distinct distinct patterns), in lexicographic order.
struct Prefix {
    std::array<std::uint32_t, 2> patterns;
    std::array<std::uint32_t, 2> used;
    int len;
    int n_used;
};

std::vector<Prefix> enumerate_prefixes(const TupleSpace& space, int len);

template <class Leaf>
void visit_from(const TupleSpace& space, std::uint32_t* tuple, std::uint32_t* used, int n_used, int row,
                Leaf&& leaf) {
    if (row == space.n_rows) {
        leaf(static_cast<const std::uint32_t*>(tuple));
        return;
    }
    for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(space.n_patterns); ++p) {
        bool seen = false;
        for (int k = 0; k < n_used; ++k)
            if (used[k] == p) { seen = true; break; }
        if (!seen && n_used == space.max_distinct) continue;
        tuple[row] = p;
        if (seen) {
            visit_from(space, tuple, used, n_used, row + 1, leaf);
        } else {
            used[n_used] = p;
            visit_from(space, tuple, used, n_used + 1, row + 1, leaf);
        }
    }
}

} // namespace detail

/// Visits every vertex tuple in lexicographic order (serial).
template <class Leaf>
void for_each_tuple(const TupleSpace& space, Leaf&& leaf) {
    std::vector<std::uint32_t> tuple(space.n_rows), used(space.n_rows);
    detail::visit_from(space, tuple.data(), used.data(), 0, 0, leaf);
}

/// Result of a maximizing sweep: scaled integer maximum of sum_x lut[x][p_x]
/// plus the lexicographically first tuple attaining it.
template <class Int>
struct MaxSweep {
    Int max_sum{};
    std::vector<std::uint32_t> argmax;
    unsigned long long n_vertices = 0;
};

/// Result of an exact validity sweep against a threshold.
template <class Int>
struct VerifySweep {
    Int max_sum{};
    unsigned long long n_vertices = 0;
    unsigned long long n_saturating = 0; // dot * t_den == t_num
    std::vector<std::vector<std::uint32_t>> saturating;
    std::optional<std::vector<std::uint32_t>> first_violation; // dot * t_den > t_num
};

inline constexpr unsigned long long kMaxStoredSaturating = 1ULL << 20;

namespace detail {

template <class Int, class Leaf>
void sweep_from(const TupleSpace& space, const std::vector<std::vector<Int>>& lut, std::uint32_t* tuple,
                std::uint32_t* used, int n_used, int row, const Int& partial, Leaf&& leaf) {
    if (row == space.n_rows) {
        leaf(static_cast<const std::uint32_t*>(tuple), partial);
        return;
    }
    const auto& lr = lut[row];
    for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(space.n_patterns); ++p) {
        bool seen = false;
        for (int k = 0; k < n_used; ++k)
            if (used[k] == p) { seen = true; break; }
        if (!seen && n_used == space.max_distinct) continue;
        tuple[row] = p;
        const Int next = partial + lr[p];
        if (seen) {
            sweep_from(space, lut, tuple, used, n_used, row + 1, next, leaf);
        } else {
            used[n_used] = p;
            sweep_from(space, lut, tuple, used, n_used + 1, row + 1, next, leaf);
        }
    }
}

template <class Int>
Int prefix_sum(const std::vector<std::vector<Int>>& lut, const Prefix& pre) {
    Int s{};
    for (int r = 0; r < pre.len; ++r) s += lut[r][pre.patterns[r]];
    return s;
}

template <class Int>
MaxSweep<Int> max_sweep_range(const TupleSpace& space, const std::vector<std::vector<Int>>& lut,
                              const Prefix& pre) {
    MaxSweep<Int> out;
    std::vector<std::uint32_t> tuple(space.n_rows), used(space.n_rows);
    for (int r = 0; r < pre.len; ++r) tuple[r] = pre.patterns[r];
    for (int k = 0; k < pre.n_used; ++k) used[k] = pre.used[k];
    bool first = true;
    sweep_from(space, lut, tuple.data(), used.data(), pre.n_used, pre.len, prefix_sum(lut, pre),
               [&](const std::uint32_t* t, const Int& sum) {
                   ++out.n_vertices;
                   if (first || sum > out.max_sum) {
                       first = false;
                       out.max_sum = sum;
                       out.argmax.assign(t, t + space.n_rows);
                   }
               });
    return out;
}

template <class Int>
VerifySweep<Int> verify_sweep_range(const TupleSpace& space, const std::vector<std::vector<Int>>& lut,
                                    const Int& t_num, const Int& t_den, const Prefix& pre) {
    VerifySweep<Int> out;
    std::vector<std::uint32_t> tuple(space.n_rows), used(space.n_rows);
    for (int r = 0; r < pre.len; ++r) tuple[r] = pre.patterns[r];
    for (int k = 0; k < pre.n_used; ++k) used[k] = pre.used[k];
    bool first = true;
    sweep_from(space, lut, tuple.data(), used.data(), pre.n_used, pre.len, prefix_sum(lut, pre),
               [&](const std::uint32_t* t, const Int& sum) {
                   ++out.n_vertices;
                   if (first || sum > out.max_sum) {
                       first = false;
                       out.max_sum = sum;
                   }
                   const Int scaled = sum * t_den;
                   if (scaled == t_num) {
                       ++out.n_saturating;
                       if (out.saturating.size() < kMaxStoredSaturating)
                           out.saturating.emplace_back(t, t + space.n_rows);
                   } else if (scaled > t_num && !out.first_violation) {
                       out.first_violation.emplace(t, t + space.n_rows);
                   }
               });
    return out;
}

} // namespace detail

/// Maximum of sum_x lut[x][p_x] over the vertex tuples.  `lut` must have
/// n_rows rows of n_patterns entries.
template <class Int>
MaxSweep<Int> max_dot_sweep(const TupleSpace& space, const std::vector<std::vector<Int>>& lut,
                            ExecPolicy policy = ExecPolicy::Parallel) {
    const int prefix_len = space.n_rows >= 2 ? 2 : 1;
    auto prefixes = detail::enumerate_prefixes(space, prefix_len);
    std::vector<MaxSweep<Int>> parts(prefixes.size());

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i)
            parts[i] = detail::max_sweep_range(space, lut, prefixes[i]);
    } else {
        for (std::size_t i = 0; i < prefixes.size(); ++i)
            parts[i] = detail::max_sweep_range(space, lut, prefixes[i]);
    }

    MaxSweep<Int> out;
    bool first = true;
    for (auto& part : parts) { // prefixes are in lexicographic order
        out.n_vertices += part.n_vertices;
        if (part.n_vertices == 0) continue;
        if (first || part.max_sum > out.max_sum) {
            first = false;
            out.max_sum = part.max_sum;
            out.argmax = std::move(part.argmax);
        }
    }
    return out;
}

/// Exact sweep against the threshold t_num / t_den (t_den > 0): reports the
/// maximum, all saturating tuples (dot == threshold) and the first tuple
/// strictly above it.
template <class Int>
VerifySweep<Int> verify_dot_sweep(const TupleSpace& space, const std::vector<std::vector<Int>>& lut,
                                  const Int& t_num, const Int& t_den,
                                  ExecPolicy policy = ExecPolicy::Parallel) {
    const int prefix_len = space.n_rows >= 2 ? 2 : 1;
    auto prefixes = detail::enumerate_prefixes(space, prefix_len);
    std::vector<VerifySweep<Int>> parts(prefixes.size());

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(prefixes.size()); ++i)
            parts[i] = detail::verify_sweep_range(space, lut, t_num, t_den, prefixes[i]);
    } else {
        for (std::size_t i = 0; i < prefixes.size(); ++i)
            parts[i] = detail::verify_sweep_range(space, lut, t_num, t_den, prefixes[i]);
    }

    VerifySweep<Int> out;
    bool first = true;
    for (auto& part : parts) {
        out.n_vertices += part.n_vertices;
        out.n_saturating += part.n_saturating;
        if (part.n_vertices == 0) continue;
        if (first || part.max_sum > out.max_sum) {
            first = false;
            out.max_sum = part.max_sum;
        }
        for (auto& t : part.saturating)
            if (out.saturating.size() < kMaxStoredSaturating) out.saturating.push_back(std::move(t));
        if (!out.first_violation && part.first_violation) out.first_violation = std::move(part.first_violation);
    }
    return out;
}

/// Per-row lookup table lut[x][p] = sum_j coeff(x,j) * sign(p,j) for scaled
/// integer witness coefficients.
template <class Int>
std::vector<std::vector<Int>> build_row_lut(const Scenario& sc, const std::vector<Int>& scaled_coeffs) {
    const int N = sc.n_preparations, m = sc.n_measurements;
    std::vector<std::vector<Int>> lut(N);
    for (int x = 0; x < N; ++x) {
        lut[x].resize(std::size_t{1} << m);
        for (std::uint32_t p = 0; p < (1u << m); ++p) {
            Int s{};
            for (int j = 0; j < m; ++j) {
                const Int& c = scaled_coeffs[static_cast<std::size_t>(x) * m + j];
                if (pattern_sign(p, j, m) > 0)
                    s += c;
                else
                    s -= c;
            }
            lut[x][p] = s;
        }
    }
    return lut;
}

} // namespace dimcert::sweep
