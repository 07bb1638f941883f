#include "dimcert/double_description.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>

#include "dimcert/errors.hpp"

namespace dimcert::dd {

namespace {

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Ray of the running double description pair, with the set of processed
/// inequalities it saturates as a bitset over generator indices.
struct RayRec {
    std::vector<BigInt> v;
    std::vector<std::uint64_t> zero;
};

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i >> 6] |= std::uint64_t{1} << (i & 63);
}

/// Z(p) & Z(q) subset of Z(s): the combinatorial non-adjacency witness.
bool common_zeros_subset(const RayRec& p, const RayRec& q, const RayRec& s) {
    for (std::size_t w = 0; w < p.zero.size(); ++w)
        if ((p.zero[w] & q.zero[w]) & ~s.zero[w]) return false;
    return true;
}

struct Echelon {
    std::vector<std::vector<Rational>> rows; // reduced row echelon form
    std::vector<std::size_t> pivots;
};

Echelon reduce(std::vector<std::vector<Rational>> m, std::size_t n_cols) {
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < n_cols && r < m.size(); ++c) {
        std::size_t sel = r;
        while (sel < m.size() && m[sel][c] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[r], m[sel]);
        const Rational piv = m[r][c];
        for (std::size_t col = c; col < m[r].size(); ++col) m[r][col] /= piv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t col = c; col < m[i].size(); ++col) m[i][col] -= f * m[r][col];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return {std::move(m), std::move(pivots)};
}

/// Basis of { z : row . z = 0 for every row }, one vector per free column.
std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> rows, std::size_t n_cols) {
    auto ech = reduce(std::move(rows), n_cols);
    std::vector<bool> is_pivot(n_cols, false);
    for (std::size_t p : ech.pivots) is_pivot[p] = true;

    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < n_cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> z(n_cols, 0);
        z[f] = 1;
        for (std::size_t k = 0; k < ech.pivots.size(); ++k) z[ech.pivots[k]] = -ech.rows[k][f];
        basis.push_back(std::move(z));
    }
    return basis;
}

std::vector<std::vector<Rational>> invert(const std::vector<std::vector<Rational>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto ech = reduce(std::move(aug), n);
    if (ech.pivots.size() != n) throw SolverError("double description: initial basis is singular");
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = ech.rows[i][n + j];
    return inv;
}

/// Clears denominators and divides by the gcd; preserves direction.
std::vector<BigInt> to_integer_vector(const std::vector<Rational>& v) {
    BigInt den = 1;
    for (const auto& x : v) den = lcm(den, denominator(x));
    std::vector<BigInt> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(numerator(x) * (den / denominator(x)));
    normalize_by_gcd(out);
    return out;
}

} // namespace

std::vector<std::vector<BigInt>> dual_cone_extreme_rays(const std::vector<std::vector<BigInt>>& generators) {
    if (generators.empty()) throw ValidationError("dual cone: no generators");
    const std::size_t n = generators[0].size();
    if (n == 0) throw ValidationError("dual cone: zero-dimensional generators");
    for (const auto& g : generators)
        if (g.size() != n) throw ValidationError("dual cone: generators of mixed dimension");

    // Initial double description pair from n linearly independent generators:
    // { a : B a >= 0 } is generated by the columns of B^-1.
    IncrementalRank rank(n);
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < generators.size() && chosen.size() < n; ++i) {
        std::vector<Rational> row(generators[i].begin(), generators[i].end());
        if (rank.add_row(std::move(row))) chosen.push_back(i);
    }
    if (chosen.size() < n)
        throw ValidationError("dual cone: generators span only " + std::to_string(chosen.size()) + " of " +
                              std::to_string(n) + " dimensions");

    std::vector<std::vector<Rational>> basis(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) basis[j][k] = Rational(generators[chosen[j]][k]);
    const auto inv = invert(basis);

    const std::size_t words = (generators.size() + 63) / 64;
    std::vector<RayRec> rays(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = inv[i][k];
        rays[k].v = to_integer_vector(col);
        rays[k].zero.assign(words, 0);
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) set_bit(rays[k].zero, chosen[j]);
    }

    std::vector<bool> processed(generators.size(), false);
    for (std::size_t j : chosen) processed[j] = true;

    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (processed[i]) continue;
        processed[i] = true;

        std::vector<BigInt> d(rays.size());
        std::vector<std::size_t> pos, neg, zer;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            d[r] = dot(generators[i], rays[r].v);
            if (d[r] > 0)
                pos.push_back(r);
            else if (d[r] < 0)
                neg.push_back(r);
            else
                zer.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r : zer) set_bit(rays[r].zero, i);
            continue;
        }

        std::vector<RayRec> next;
        next.reserve(pos.size() + zer.size() + pos.size() * neg.size());
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                bool adjacent = true;
                for (std::size_t s = 0; s < rays.size() && adjacent; ++s)
                    if (s != p && s != q && common_zeros_subset(rays[p], rays[q], rays[s])) adjacent = false;
                if (!adjacent) continue;

                RayRec combo;
                combo.v.resize(n);
                // d[p] > 0 and -d[q] > 0: a positive combination vanishing on i.
                for (std::size_t k = 0; k < n; ++k) combo.v[k] = d[p] * rays[q].v[k] - d[q] * rays[p].v[k];
                normalize_by_gcd(combo.v);
                combo.zero.resize(words);
                // Both coefficients positive: tight exactly where both parents are.
                for (std::size_t w = 0; w < words; ++w) combo.zero[w] = rays[p].zero[w] & rays[q].zero[w];
                set_bit(combo.zero, i);
                next.push_back(std::move(combo));
            }
        for (std::size_t p : pos) next.push_back(std::move(rays[p]));
        for (std::size_t z : zer) {
            set_bit(rays[z].zero, i);
            next.push_back(std::move(rays[z]));
        }
        rays.swap(next);
    }

    std::vector<std::vector<BigInt>> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HullDescription facet_description(std::vector<std::vector<BigInt>> points) {
    if (points.empty()) throw ValidationError("facet description: no points");
    const std::size_t n = points[0].size();
    for (const auto& p : points)
        if (p.size() != n) throw ValidationError("facet description: points of mixed dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    HullDescription out;

    // Affine hull: equalities are the nullspace of the homogenized points.
    std::vector<std::vector<Rational>> hom(points.size(), std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < points.size(); ++i) {
        hom[i][0] = 1;
        for (std::size_t j = 0; j < n; ++j) hom[i][j + 1] = Rational(points[i][j]);
    }
    for (const auto& z : nullspace(hom, n + 1)) {
        auto zi = to_integer_vector(z);
        HullEquality eq;
        eq.coeffs.assign(zi.begin() + 1, zi.end());
        eq.rhs = -zi[0];
        for (const auto& c : eq.coeffs) {
            if (c == 0) continue;
            if (c < 0) {
                for (auto& cc : eq.coeffs) cc = -cc;
                eq.rhs = -eq.rhs;
            }
            break;
        }
        out.equalities.push_back(std::move(eq));
    }
    out.affine_dimension = static_cast<int>(n) - static_cast<int>(out.equalities.size());
    out.full_dimensional = out.equalities.empty();
    std::sort(out.equalities.begin(), out.equalities.end(),
              [](const HullEquality& a, const HullEquality& b) {
                  return std::tie(a.coeffs, a.rhs) < std::tie(b.coeffs, b.rhs);
              });
    if (out.affine_dimension == 0) return out; // a single point has no facets

    std::vector<std::vector<BigInt>> rays;
    std::vector<std::size_t> lift_cols; // empty means identity lift
    if (out.full_dimensional) {
        std::vector<std::vector<BigInt>> gens(points.size(), std::vector<BigInt>(n + 1));
        for (std::size_t i = 0; i < points.size(); ++i) {
            gens[i][0] = 1;
            for (std::size_t j = 0; j < n; ++j) gens[i][j + 1] = points[i][j];
        }
        rays = dual_cone_extreme_rays(gens);
    } else {
        // Project onto pivot columns of the linear part; the projection is a
        // bijection of the affine hull onto a full-dimensional image.
        std::vector<std::vector<Rational>> lin(points.size() - 1, std::vector<Rational>(n));
        for (std::size_t i = 1; i < points.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) lin[i - 1][j] = Rational(points[i][j] - points[0][j]);
        lift_cols = reduce(std::move(lin), n).pivots;

        const std::size_t k = lift_cols.size();
        std::vector<std::vector<BigInt>> gens(points.size(), std::vector<BigInt>(k + 1));
        for (std::size_t i = 0; i < points.size(); ++i) {
            gens[i][0] = 1;
            for (std::size_t j = 0; j < k; ++j) gens[i][j + 1] = points[i][lift_cols[j]];
        }
        rays = dual_cone_extreme_rays(gens);
    }

    for (const auto& a : rays) {
        HullFacet f;
        f.rhs = a[0];
        f.normal.assign(n, 0);
        if (lift_cols.empty()) {
            for (std::size_t j = 0; j < n; ++j) f.normal[j] = -a[j + 1];
        } else {
            for (std::size_t j = 0; j < lift_cols.size(); ++j) f.normal[lift_cols[j]] = -a[j + 1];
        }
        out.facets.push_back(std::move(f));
    }
    std::sort(out.facets.begin(), out.facets.end(), [](const HullFacet& a, const HullFacet& b) {
        return std::tie(a.normal, a.rhs) < std::tie(b.normal, b.rhs);
    });
    return out;
}

} // namespace dimcert::dd
