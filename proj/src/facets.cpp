#include "dimcert/facets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

#include "dimcert/symmetry.hpp"

namespace dimcert {

namespace {

/// Integer form of coeffs . x <= bound with gcd-normalized coefficients; the
/// bound is rescaled by the same positive factor.
struct NormalizedInequality {
    std::vector<BigInt> coeffs;
    Rational bound;
};

NormalizedInequality normalize_inequality(const std::vector<Rational>& coeffs, const Rational& bound) {
    BigInt den = 1;
    for (const auto& c : coeffs) den = lcm(den, denominator(c));
    std::vector<BigInt> scaled;
    scaled.reserve(coeffs.size());
    for (const auto& c : coeffs) scaled.push_back(numerator(c) * (den / denominator(c)));
    BigInt g = 0;
    for (const auto& s : scaled) g = gcd(g, s);
    if (g == 0) return {std::move(scaled), bound};
    for (auto& s : scaled) s /= g;
    return {std::move(scaled), bound * Rational(den, g)};
}

/// Affine dimension of a vertex set, scanned with early exit once `stop_at`
/// is reached (sound whenever the true rank cannot exceed it).
int affine_rank_exact(const std::vector<DeterministicVertex>& pts, int stop_at) {
    if (pts.empty()) return -1;
    const std::size_t n = pts[0].signs.size();
    IncrementalRank rank(n);
    for (std::size_t i = 1; i < pts.size() && rank.rank() < stop_at; ++i) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j)
            row[j] = static_cast<int>(pts[i].signs[j]) - static_cast<int>(pts[0].signs[j]);
        rank.add_row(std::move(row));
    }
    return rank.rank();
}

double exact_double(const BigInt& v) {
    const double d = v.convert_to<double>();
    if (rational_from_double(d) != Rational(v))
        throw SolverError("facet coefficient " + v.str() + " is not exactly representable as a double");
    return d;
}

double exact_double(const Rational& v) {
    const double d = v.convert_to<double>();
    if (rational_from_double(d) != v)
        throw SolverError("facet bound " + numerator(v).str() + "/" + denominator(v).str() +
                          " is not exactly representable as a double");
    return d;
}

} // namespace

FacetEnumeration enumerate_facets(const Scenario& sc, int d, const FacetOptions& opts) {
    sc.validate();
    if (d < 1) throw ValidationError("facet enumeration: d must be >= 1, got " + std::to_string(d));
    const int entries = sc.n_preparations * sc.n_measurements;
    if (entries > opts.max_entries)
        throw ResourceLimitError("facet enumeration: N*m = " + std::to_string(entries) +
                                     " exceeds the guard " + std::to_string(opts.max_entries),
                                 static_cast<unsigned long long>(entries),
                                 static_cast<unsigned long long>(opts.max_entries));
    const unsigned long long count = vertex_count(sc, d);
    if (count > opts.max_vertices)
        throw ResourceLimitError("facet enumeration: " + std::to_string(count) +
                                     " vertices exceed the guard " + std::to_string(opts.max_vertices),
                                 count, opts.max_vertices);

    const auto verts = enumerate_vertices(sc, d, opts.max_vertices);
    std::vector<std::vector<BigInt>> points(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i)
        points[i].assign(verts[i].signs.begin(), verts[i].signs.end());

    auto hull = dd::facet_description(std::move(points));

    FacetEnumeration out;
    out.scenario = sc;
    out.d = d;
    out.full_dimensional = hull.full_dimensional;
    out.polytope_dimension = hull.affine_dimension;
    out.affine_hull = std::move(hull.equalities);

    const int target_rank = hull.affine_dimension - 1;
    MembershipOptions mo;
    mo.vertex_cap = opts.max_vertices;
    mo.policy = opts.policy;

    for (const auto& hf : hull.facets) {
        std::vector<Rational> coeffs(hf.normal.begin(), hf.normal.end());
        const Rational bound(hf.rhs);
        auto report = sweep_witness_exact(coeffs, sc, d, bound, mo);
        if (report.violation)
            throw SolverError("facet enumeration: a hull facet failed exact re-verification on " + sc.str());
        if (report.n_saturating != report.saturating.size())
            throw SolverError("facet enumeration: saturating vertex list was truncated");
        const int rank = affine_rank_exact(report.saturating, target_rank);
        if (rank != target_rank)
            throw SolverError("facet enumeration: saturating set has affine rank " + std::to_string(rank) +
                              ", expected " + std::to_string(target_rank));

        Facet f;
        f.d = d;
        std::vector<double> dcoeffs(static_cast<std::size_t>(entries));
        for (int j = 0; j < entries; ++j) dcoeffs[static_cast<std::size_t>(j)] = exact_double(hf.normal[j]);
        f.witness = Witness(sc, std::move(dcoeffs));
        f.witness.bounds[d].classical = exact_double(bound);
        f.saturating_vertices = std::move(report.saturating);
        f.saturating_count = report.n_saturating;
        f.affine_rank = rank;
        out.facets.push_back(std::move(f));
    }
    return out;
}

FacetCheck is_facet(const Witness& w, double bound, int d, const FacetOptions& opts) {
    w.validate();
    if (!std::isfinite(bound)) throw ValidationError("facet check: bound must be finite");
    const Scenario& sc = w.scenario;
    const int entries = sc.n_preparations * sc.n_measurements;

    MembershipOptions mo;
    mo.vertex_cap = opts.vertex_cap;
    mo.policy = opts.policy;
    const auto coeffs = witness_coeffs_exact(w);
    auto report = sweep_witness_exact(coeffs, sc, d, rational_from_double(bound), mo);

    FacetCheck check;
    check.saturating_count = report.n_saturating;
    if (report.violation) {
        check.status = FacetStatus::Invalid;
        check.violating_vertex = std::move(report.violation);
        return check;
    }

    const bool zero_witness =
        std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
    // A nonzero witness confines its saturating set to a hyperplane, so the
    // rank scan may stop at N*m - 1; the zero witness saturates everything.
    const int target = entries - 1;
    check.affine_rank = affine_rank_exact(report.saturating, zero_witness ? entries : target);

    if (!zero_witness && check.affine_rank == target) {
        check.status = FacetStatus::Facet;
        Facet f;
        f.witness = w;
        f.witness.bounds[d].classical = bound;
        f.d = d;
        f.saturating_vertices = std::move(report.saturating);
        f.saturating_count = report.n_saturating;
        f.affine_rank = check.affine_rank;
        check.facet = std::move(f);
        return check;
    }
    if (report.n_saturating > report.saturating.size())
        throw ResourceLimitError("facet check: saturating set was truncated before the rank could be decided",
                                 report.n_saturating, report.saturating.size());
    check.status = FacetStatus::NotTight;
    return check;
}

std::vector<FacetClass> classify_facets(std::vector<Facet>& facets, const Scenario& sc) {
    sc.validate();

    using Key = std::pair<std::vector<BigInt>, Rational>;
    std::map<Key, std::vector<std::size_t>> groups;
    std::vector<std::vector<BigInt>> normalized(facets.size());
    for (std::size_t i = 0; i < facets.size(); ++i) {
        if (!(facets[i].witness.scenario == sc))
            throw ValidationError("facet classification: facet scenario differs from " + sc.str());
        const auto it = facets[i].witness.bounds.find(facets[i].d);
        if (it == facets[i].witness.bounds.end() || !it->second.classical)
            throw ValidationError("facet classification: facet lacks its classical bound");
        auto norm = normalize_inequality(witness_coeffs_exact(facets[i].witness),
                                         rational_from_double(*it->second.classical));
        normalized[i] = norm.coeffs;
        groups[Key(canonical_form(sc, norm.coeffs), norm.bound)].push_back(i);
    }

    std::optional<std::vector<BigInt>> in_pattern;
    if (sc.n_preparations >= 2 && sc.n_measurements == sc.n_preparations - 1) {
        auto norm = normalize_inequality(witness_coeffs_exact(build_IN(sc.n_preparations)), 0);
        in_pattern = canonical_form(sc, norm.coeffs);
    }

    std::vector<FacetClass> classes;
    int ordinal = 0;
    for (auto& [key, members] : groups) {
        const auto& canon = key.first;
        FacetClass cls;
        cls.bound = exact_double(key.second);
        cls.canonical_coeffs.reserve(canon.size());
        for (const auto& c : canon) cls.canonical_coeffs.push_back(exact_double(c));

        int nonzero = 0;
        bool unit = true;
        for (const auto& c : canon) {
            if (c == 0) continue;
            ++nonzero;
            if (c != 1 && c != -1) unit = false;
        }
        if (nonzero == 1 && unit && key.second == 1)
            cls.name = "positivity";
        else if (in_pattern && canon == *in_pattern)
            cls.name = "I" + std::to_string(sc.n_preparations);
        else
            cls.name = "class-" + std::to_string(++ordinal);

        cls.representative = members.front();
        for (std::size_t i : members)
            if (normalized[i] == canon) {
                cls.representative = i;
                break;
            }
        cls.members = members;
        for (std::size_t i : members) facets[i].orbit_class = cls.name;
        classes.push_back(std::move(cls));
    }
    return classes;
}

std::vector<DeterministicVertex> vertices_from_facets(const FacetEnumeration& fe) {
    const Scenario& sc = fe.scenario;
    sc.validate();
    const std::size_t n = static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements;

    std::vector<std::vector<BigInt>> rows;
    for (const auto& f : fe.facets) {
        const auto it = f.witness.bounds.find(f.d);
        if (it == f.witness.bounds.end() || !it->second.classical)
            throw ValidationError("vertex reconstruction: facet lacks its classical bound");
        auto norm = normalize_inequality(witness_coeffs_exact(f.witness),
                                         rational_from_double(*it->second.classical));
        // Homogeneous halfspace row (b, -w), cleared of denominators.
        const BigInt bd = denominator(norm.bound);
        std::vector<BigInt> row(n + 1);
        row[0] = numerator(norm.bound);
        for (std::size_t j = 0; j < n; ++j) row[j + 1] = -norm.coeffs[j] * bd;
        normalize_by_gcd(row);
        rows.push_back(std::move(row));
    }
    for (const auto& eq : fe.affine_hull) {
        std::vector<BigInt> fwd(n + 1), rev(n + 1);
        fwd[0] = eq.rhs;
        rev[0] = -eq.rhs;
        for (std::size_t j = 0; j < n; ++j) {
            fwd[j + 1] = -eq.coeffs[j];
            rev[j + 1] = eq.coeffs[j];
        }
        rows.push_back(std::move(fwd));
        rows.push_back(std::move(rev));
    }

    std::vector<DeterministicVertex> verts;
    for (const auto& ray : dd::dual_cone_extreme_rays(rows)) {
        if (ray[0] <= 0) throw SolverError("vertex reconstruction: hit an unbounded direction");
        DeterministicVertex v;
        v.scenario = sc;
        v.signs.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (ray[j + 1] % ray[0] != 0)
                throw SolverError("vertex reconstruction: non-integer vertex coordinate");
            const BigInt q = ray[j + 1] / ray[0];
            if (q != 1 && q != -1) throw SolverError("vertex reconstruction: vertex entry is not +/-1");
            v.signs[j] = static_cast<int8_t>(q.convert_to<int>());
        }
        verts.push_back(std::move(v));
    }
    std::sort(verts.begin(), verts.end(),
              [](const DeterministicVertex& a, const DeterministicVertex& b) { return a.signs < b.signs; });
    return verts;
}

} // namespace dimcert
