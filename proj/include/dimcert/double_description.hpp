#pragma once

#include <vector>

#include "dimcert/rational.hpp"

namespace dimcert::dd {

/// Extreme rays of { a : g . a >= 0 for every generator g }, computed by the
/// double description method in exact integer arithmetic.  The generators
/// must span the space (the dual cone is then pointed).  Rays come back
/// gcd-normalized and sorted; the result is exact, not a float approximation.
std::vector<std::vector<BigInt>> dual_cone_extreme_rays(const std::vector<std::vector<BigInt>>& generators);

/// One facet inequality normal . x <= rhs, gcd-normalized.
struct HullFacet {
    std::vector<BigInt> normal;
    BigInt rhs;
};

/// One affine-hull equality coeffs . x = rhs (first nonzero coefficient
/// positive).
struct HullEquality {
    std::vector<BigInt> coeffs;
    BigInt rhs;
};

/// Complete facet description of conv(points).  When the hull is not
/// full-dimensional the equalities cut out its affine hull and the facets
/// are relative to it (lifted back to the original coordinates through a
/// pivot-column section, zero elsewhere).
struct HullDescription {
    bool full_dimensional = false;
    int affine_dimension = 0;
    std::vector<HullEquality> equalities;
    std::vector<HullFacet> facets;
};

HullDescription facet_description(std::vector<std::vector<BigInt>> points);

} // namespace dimcert::dd
