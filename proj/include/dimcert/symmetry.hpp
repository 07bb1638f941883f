#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dimcert/scenario.hpp"

namespace dimcert {

/// Relabelling symmetry of the correlation polytope: permute preparations,
/// permute measurements, flip measurement outcomes per column.  The vertex
/// set is invariant, so witness bounds are constant along orbits.
struct SymmetryElement {
    std::vector<int> row_perm;    // size N, x -> new source row pi(x)
    std::vector<int> col_perm;    // size m, y -> new source column sigma(y)
    std::vector<int8_t> col_sign; // size m, +1 / -1
};

/// N! * m! * 2^m.
unsigned long long symmetry_group_order(const Scenario& sc);

/// Full group, enumerated deterministically.  Guarded by `max_order`.
std::vector<SymmetryElement> symmetry_group(const Scenario& sc, unsigned long long max_order = 10'000'000);

/// (g . w)_{x,y} = sign_y * w_{pi(x), sigma(y)}.
template <class T>
std::vector<T> apply_symmetry(const SymmetryElement& g, const Scenario& sc, const std::vector<T>& coeffs) {
    const int m = sc.n_measurements;
    std::vector<T> out(coeffs.size());
    for (int x = 0; x < sc.n_preparations; ++x)
        for (int y = 0; y < m; ++y) {
            const T& src = coeffs[static_cast<std::size_t>(g.row_perm[x]) * m + g.col_perm[y]];
            out[static_cast<std::size_t>(x) * m + y] = g.col_sign[y] > 0 ? src : T(-src);
        }
    return out;
}

/// Lexicographically smallest image of `coeffs` over the full group; equal
/// canonical forms characterize orbit equivalence.
template <class T>
std::vector<T> canonical_form(const Scenario& sc, const std::vector<T>& coeffs,
                              unsigned long long max_order = 10'000'000) {
    std::vector<T> best = coeffs;
    for (const auto& g : symmetry_group(sc, max_order)) {
        auto image = apply_symmetry(g, sc, coeffs);
        if (std::lexicographical_compare(image.begin(), image.end(), best.begin(), best.end()))
            best = std::move(image);
    }
    return best;
}

/// All distinct images of `coeffs` (the orbit), sorted lexicographically.
template <class T>
std::vector<std::vector<T>> symmetry_orbit(const Scenario& sc, const std::vector<T>& coeffs,
                                           unsigned long long max_order = 10'000'000) {
    std::vector<std::vector<T>> orbit;
    for (const auto& g : symmetry_group(sc, max_order)) orbit.push_back(apply_symmetry(g, sc, coeffs));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
}

} // namespace dimcert
