#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dimcert/membership.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/witness.hpp"

using namespace dimcert;

namespace {

/// Independent oracle for classical_max: the best vertex value equals the
/// best over row partitions into at most min(d, 2^m, N) blocks of
/// sum_blocks sum_y |sum_{x in block} w_xy|  (each block picks its optimal
/// sign pattern; coinciding patterns only merge blocks, which is still a
/// valid vertex).  Partitions are enumerated as restricted growth strings.
double classical_max_oracle(const Witness& w, int d) {
    const int n = w.scenario.n_preparations;
    const int m = w.scenario.n_measurements;
    const int limit = effective_row_limit(w.scenario, d);
    std::vector<int> assign(n, 0);
    double best = -1e300;
    const auto value_of = [&]() {
        int blocks = 0;
        for (int x = 0; x < n; ++x) blocks = std::max(blocks, assign[x] + 1);
        if (blocks > limit) return;
        double total = 0.0;
        for (int blk = 0; blk < blocks; ++blk)
            for (int y = 0; y < m; ++y) {
                double s = 0.0;
                for (int x = 0; x < n; ++x)
                    if (assign[x] == blk) s += w.at(x, y);
                total += std::abs(s);
            }
        best = std::max(best, total);
    };
    // restricted growth: assign[0] = 0, assign[x] <= max(assign[0..x-1]) + 1
    const auto rec = [&](auto&& self, int x, int mx) -> void {
        if (x == n) {
            value_of();
            return;
        }
        for (int b = 0; b <= mx + 1; ++b) {
            assign[x] = b;
            self(self, x + 1, std::max(mx, b));
        }
    };
    rec(rec, 1, 0);
    return best;
}

Witness random_witness(const Scenario& sc, SplitMix64& rng, bool integer) {
    std::vector<double> coeffs(static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements);
    for (double& c : coeffs)
        c = integer ? static_cast<double>(static_cast<int>(rng.next() % 11) - 5) : rng.gaussian();
    return Witness(sc, std::move(coeffs));
}

ClassicalStrategy random_strategy(const Scenario& sc, int d, SplitMix64& rng) {
    ClassicalStrategy s;
    s.scenario = sc;
    s.dimension = d;
    const int n_comp = 1 + static_cast<int>(rng.next() % 5);
    double total = 0.0;
    for (int c = 0; c < n_comp; ++c) {
        ClassicalStrategy::Component comp;
        for (int x = 0; x < sc.n_preparations; ++x)
            comp.encoding.push_back(static_cast<int>(rng.next() % d));
        for (int i = 0; i < d * sc.n_measurements; ++i)
            comp.decoding.push_back(rng.next() & 1 ? 1 : -1);
        s.components.push_back(std::move(comp));
        const double wgt = 0.05 + rng.uniform01();
        s.weights.push_back(wgt);
        total += wgt;
    }
    for (double& wgt : s.weights) wgt /= total;
    // renormalize exactly
    double sum = 0.0;
    for (double wgt : s.weights) sum += wgt;
    s.weights.back() += 1.0 - sum;
    return s;
}

CorrelationMatrix qubit_optimal_i3_matrix() {
    const double r = std::sqrt(0.5);
    return CorrelationMatrix(Scenario(3, 2), {r, r, r, -r, -1.0, 0.0});
}

} // namespace

TEST_CASE("classical_max matches the partition oracle") {
    SplitMix64 rng(7);
    for (const auto& [n, m] : {std::pair{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
        const Scenario sc(n, m);
        for (int d = 1; d <= n; ++d) {
            for (int trial = 0; trial < 6; ++trial) {
                const Witness w = random_witness(sc, rng, trial % 2 == 0);
                CAPTURE(n);
                CAPTURE(m);
                CAPTURE(d);
                const double got = classical_max(w, d);
                const double want = classical_max_oracle(w, d);
                CHECK(got == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("classical_max of I_N equals L_d") {
    for (int n = 3; n <= 5; ++n) {
        const Witness w = build_IN(n);
        MembershipOptions opts;
        opts.vertex_cap = 2'000'000;
        for (int d = 1; d <= n; ++d) {
            CAPTURE(n);
            CAPTURE(d);
            CHECK(classical_max(w, d, opts) == bound_LN(n, d));
            CHECK(classical_max_exact(w, d, opts) == Rational(n * (n - 3) / 2 + 2 * d - 1));
        }
    }
}

TEST_CASE("classical_max is exact for dyadic fractional coefficients") {
    const Scenario sc(3, 2);
    const Witness w(sc, {0.5, 0.25, -0.125, 1.0, 0.75, -0.5});
    // max = sum of |coeffs| at d = 3 (free signs)
    CHECK(classical_max_exact(w, 3) == Rational(25, 8));
    CHECK(classical_max(w, 3) == 3.125);
}

TEST_CASE("classical_max refuses beyond the vertex cap") {
    MembershipOptions opts;
    opts.vertex_cap = 1000;
    CHECK_THROWS_AS(classical_max(build_IN(4), 3, opts), ResourceLimitError);
}

TEST_CASE("membership: deterministic vertices are Inside at their own dimension") {
    const Scenario sc(3, 2);
    const auto vertices = enumerate_vertices(sc, 3);
    int checked = 0;
    for (std::size_t i = 0; i < vertices.size(); i += 7) {
        const auto& v = vertices[i];
        const auto cert = membership(v.to_correlations(), v.distinct_rows());
        CHECK(cert.inside());
        ++checked;
    }
    CHECK(checked > 5);
}

TEST_CASE("membership: vertex with k distinct rows is Outside at k-1") {
    const Scenario sc(3, 2);
    DeterministicVertex v;
    v.scenario = sc;
    v.signs = {1, 1, 1, -1, -1, 1}; // 3 distinct rows
    REQUIRE(v.distinct_rows() == 3);
    const auto cert = membership(v.to_correlations(), 2);
    REQUIRE(!cert.inside());
    REQUIRE(cert.separating_witness.has_value());
    const auto& sw = *cert.separating_witness;
    // re-verify the certificate in exact arithmetic
    const auto coeffs = witness_coeffs_exact(sw.witness);
    const Rational cmax = classical_max_exact(sw.witness, 2);
    const Rational achieved = exact_dot(coeffs, v.to_correlations().e);
    CHECK(achieved > cmax);
    CHECK(rational_from_double(sw.classical_max) == cmax);
}

TEST_CASE("membership: random mixtures are Inside with reconstructing weights") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next() % 3);
        const int m = 2 + static_cast<int>(rng.next() % 2);
        const int d = 1 + static_cast<int>(rng.next() % n);
        const Scenario sc(n, m);
        const auto cm = simulate_classical(random_strategy(sc, d, rng));
        const auto cert = membership(cm, d);
        CAPTURE(trial);
        REQUIRE(cert.inside());
        REQUIRE(cert.convex_weights.has_value());
        // residual of the returned decomposition
        std::vector<double> rec(cm.e.size(), 0.0);
        double wsum = 0.0;
        for (const auto& [v, wgt] : *cert.convex_weights) {
            CHECK(wgt >= 0.0);
            CHECK(v.distinct_rows() <= effective_row_limit(sc, d));
            wsum += wgt;
            for (std::size_t i = 0; i < rec.size(); ++i) rec[i] += wgt * v.signs[i];
        }
        CHECK(std::abs(wsum - 1.0) <= 1e-9);
        for (std::size_t i = 0; i < rec.size(); ++i) CHECK(std::abs(rec[i] - cm.e[i]) <= 1e-9);
    }
}

TEST_CASE("membership: qubit-optimal I_3 correlations") {
    const auto cm = qubit_optimal_i3_matrix();

    SUBCASE("Outside at d = 2 with an exact separating witness") {
        const auto cert = membership(cm, 2);
        REQUIRE(!cert.inside());
        const auto& sw = *cert.separating_witness;
        const auto coeffs = witness_coeffs_exact(sw.witness);
        const Rational cmax = classical_max_exact(sw.witness, 2);
        const Rational achieved = exact_dot(coeffs, cm.e);
        CHECK(achieved - cmax > Rational(1, 1000000000));
        CHECK(sw.achieved_value > sw.classical_max);
    }

    SUBCASE("Inside at d = 3") {
        const auto cert = membership(cm, 3);
        CHECK(cert.inside());
    }
}

TEST_CASE("membership input validation") {
    CHECK_THROWS_AS(membership(qubit_optimal_i3_matrix(), 0), ValidationError);
    MembershipOptions opts;
    opts.vertex_cap = 10;
    CHECK_THROWS_AS(membership(qubit_optimal_i3_matrix(), 2, opts), ResourceLimitError);
}

TEST_CASE("classical_dimension") {
    SUBCASE("all ones needs one message") {
        const CorrelationMatrix cm(Scenario(3, 2), {1, 1, 1, 1, 1, 1});
        CHECK(classical_dimension(cm) == 1);
    }
    SUBCASE("vertex dimension equals its distinct row count") {
        const Scenario sc(4, 2);
        DeterministicVertex v;
        v.scenario = sc;
        v.signs = {1, 1, 1, -1, -1, 1, -1, -1};
        REQUIRE(v.distinct_rows() == 4);
        const auto res = classical_dimension_detailed(v.to_correlations());
        CHECK(res.dimension == 4);
        CHECK(res.rejections.size() == 3);
        for (const auto& r : res.rejections) CHECK(r.separating_witness.has_value());
    }
    SUBCASE("qubit-optimal I_3 needs a trit") {
        CHECK(classical_dimension(qubit_optimal_i3_matrix()) == 3);
    }
}

TEST_CASE("sweep_witness_exact") {
    const Scenario sc(3, 2);
    const Witness i3 = build_IN(3);
    const auto coeffs = witness_coeffs_exact(i3);

    SUBCASE("valid bound with saturation count") {
        const auto report = sweep_witness_exact(coeffs, sc, 2, Rational(3));
        CHECK(report.valid());
        CHECK(report.max_value == Rational(3));
        CHECK(report.n_vertices == 40);
        // direct count oracle
        unsigned long long sat = 0;
        for (const auto& v : enumerate_vertices(sc, 2))
            if (exact_dot(coeffs, v.to_correlations().e) == Rational(3)) ++sat;
        CHECK(report.n_saturating == sat);
        CHECK(report.saturating.size() == sat);
    }

    SUBCASE("violated bound reports the first violation") {
        const auto report = sweep_witness_exact(coeffs, sc, 2, Rational(2));
        CHECK(!report.valid());
        REQUIRE(report.violation.has_value());
        CHECK(exact_dot(coeffs, report.violation->to_correlations().e) > Rational(2));
    }
}
