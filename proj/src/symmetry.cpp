#include "dimcert/symmetry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "dimcert/errors.hpp"

namespace dimcert {

unsigned long long symmetry_group_order(const Scenario& sc) {
    sc.validate();
    unsigned long long order = 1;
    auto mul = [&](unsigned long long f) {
        if (order > std::numeric_limits<unsigned long long>::max() / f)
            throw ResourceLimitError("symmetry group order overflows a 64-bit counter", 0,
                                     std::numeric_limits<unsigned long long>::max());
        order *= f;
    };
    for (int k = 2; k <= sc.n_preparations; ++k) mul(static_cast<unsigned long long>(k));
    for (int k = 2; k <= sc.n_measurements; ++k) mul(static_cast<unsigned long long>(k));
    for (int k = 0; k < sc.n_measurements; ++k) mul(2);
    return order;
}

std::vector<SymmetryElement> symmetry_group(const Scenario& sc, unsigned long long max_order) {
    const unsigned long long order = symmetry_group_order(sc);
    if (order > max_order)
        throw ResourceLimitError("symmetry group of " + sc.str() + " has " + std::to_string(order) +
                                     " elements, above the cap " + std::to_string(max_order),
                                 order, max_order);

    const int N = sc.n_preparations, m = sc.n_measurements;
    std::vector<SymmetryElement> group;
    group.reserve(order);

    std::vector<int> pi(N);
    std::iota(pi.begin(), pi.end(), 0);
    do {
        std::vector<int> sigma(m);
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                SymmetryElement g;
                g.row_perm = pi;
                g.col_perm = sigma;
                g.col_sign.resize(m);
                for (int y = 0; y < m; ++y) g.col_sign[y] = (mask >> y) & 1u ? int8_t{-1} : int8_t{1};
                group.push_back(std::move(g));
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    } while (std::next_permutation(pi.begin(), pi.end()));
    return group;
}

} // namespace dimcert
