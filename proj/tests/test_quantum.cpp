#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dimcert/quantum.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/witness.hpp"

using namespace dimcert;

namespace {

constexpr double kPi = 3.14159265358979323846;

CMatrix random_hermitian(int n, SplitMix64& rng) {
    CMatrix h(n);
    for (int i = 0; i < n; ++i) {
        h(i, i) = Complex(rng.gaussian(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex v(rng.gaussian(), rng.gaussian());
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

double frob_diff(const CMatrix& a, const CMatrix& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i) s += std::norm(a.a[i] - b.a[i]);
    return std::sqrt(s);
}

} // namespace

TEST_CASE("hermitian_eigensystem on known matrices") {
    SUBCASE("diagonal") {
        CMatrix h(3);
        h(0, 0) = 3.0;
        h(1, 1) = -1.0;
        h(2, 2) = 2.0;
        const auto es = hermitian_eigensystem(h);
        CHECK(es.values == std::vector<double>{-1.0, 2.0, 3.0});
    }
    SUBCASE("pauli x") {
        CMatrix h(2);
        h(0, 1) = 1.0;
        h(1, 0) = 1.0;
        const auto es = hermitian_eigensystem(h);
        CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("pauli y (complex)") {
        CMatrix h(2);
        h(0, 1) = Complex(0.0, -1.0);
        h(1, 0) = Complex(0.0, 1.0);
        const auto es = hermitian_eigensystem(h);
        CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("hermitian_eigensystem on random matrices") {
    SplitMix64 rng(17);
    for (int n : {1, 2, 3, 4, 6, 8}) {
        for (int trial = 0; trial < 5; ++trial) {
            const CMatrix h = random_hermitian(n, rng);
            const auto es = hermitian_eigensystem(h);
            CAPTURE(n);
            REQUIRE(static_cast<int>(es.values.size()) == n);
            // ascending
            for (int k = 1; k < n; ++k) CHECK(es.values[k - 1] <= es.values[k]);
            // eigen equation: H v_k = lambda_k v_k
            for (int k = 0; k < n; ++k) {
                for (int i = 0; i < n; ++i) {
                    Complex hv = 0.0;
                    for (int j = 0; j < n; ++j) hv += h(i, j) * es.vectors(j, k);
                    CHECK(std::abs(hv - es.values[k] * es.vectors(i, k)) <= 1e-9);
                }
            }
            // orthonormal columns
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    Complex ip = 0.0;
                    for (int i = 0; i < n; ++i) ip += std::conj(es.vectors(i, a)) * es.vectors(i, b);
                    CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-10);
                }
            // reconstruction
            CMatrix rec(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Complex s = 0.0;
                    for (int k = 0; k < n; ++k)
                        s += es.values[k] * es.vectors(i, k) * std::conj(es.vectors(j, k));
                    rec(i, j) = s;
                }
            CHECK(frob_diff(rec, h) <= 1e-9);
        }
    }
}

TEST_CASE("hermitian_eigensystem guards") {
    CHECK_THROWS_AS(hermitian_eigensystem(CMatrix(17)), ValidationError);
    CMatrix bad(2);
    bad(0, 1) = 1.0;
    bad(1, 0) = 0.5; // not Hermitian
    CHECK_THROWS_AS(hermitian_eigensystem(bad), ValidationError);
}

TEST_CASE("matrix helpers") {
    SplitMix64 rng(23);
    const CMatrix a = random_hermitian(3, rng);
    const CMatrix b = random_hermitian(3, rng);
    CHECK(std::abs(trace_product(a, b) - trace(a * b)) <= 1e-12);
    CHECK(hermiticity_defect(a) <= 1e-15);
    const CMatrix anti = a - adjoint(a);
    CHECK(max_abs_diff(anti, CMatrix(3)) <= 1e-15);

    const std::vector<Complex> v = {Complex(std::sqrt(0.5), 0), Complex(0, std::sqrt(0.5))};
    const CMatrix p = projector(v);
    CHECK(std::abs(trace(p) - 1.0) <= 1e-12);
    CHECK(max_abs_diff(p * p, p) <= 1e-12);
}

TEST_CASE("bloch strategies and the qubit lift") {
    SUBCASE("lift agrees with the dot-product form") {
        SplitMix64 rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            BlochStrategy bs;
            for (int x = 0; x < 3; ++x) {
                double r[3] = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
                const double norm = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
                const double scale = rng.uniform01() / (norm > 0 ? norm : 1.0);
                bs.state_vectors.push_back({r[0] * scale, r[1] * scale, r[2] * scale});
            }
            for (int y = 0; y < 2; ++y) {
                double s[3] = {rng.gaussian(), rng.gaussian(), rng.gaussian()};
                const double norm = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
                bs.measurement_vectors.push_back({s[0] / norm, s[1] / norm, s[2] / norm});
            }
            bs.validate();
            const auto direct = bloch_correlations(bs);
            const auto lifted = correlations_from_quantum(lift(bs));
            for (std::size_t i = 0; i < direct.e.size(); ++i)
                CHECK(direct.e[i] == doctest::Approx(lifted.e[i]).epsilon(1e-12));
        }
    }

    SUBCASE("validation") {
        BlochStrategy bs;
        bs.state_vectors = {{1.5, 0, 0}}; // outside the ball
        bs.measurement_vectors = {{1, 0, 0}};
        CHECK_THROWS_AS(bs.validate(), ValidationError);
        bs.state_vectors = {{1, 0, 0}};
        bs.measurement_vectors = {{0.5, 0, 0}}; // not unit
        CHECK_THROWS_AS(bs.validate(), ValidationError);
    }
}

TEST_CASE("optimal_qubit_I3 attains 1 + 2 sqrt(2)") {
    const auto bs = optimal_qubit_I3();
    bs.validate();
    const auto cm = bloch_correlations(bs);
    const double value = evaluate(build_IN(3), cm);
    CHECK(value == doctest::Approx(1.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
    // the lifted strategy is a valid qubit realization
    const auto qs = lift(bs);
    qs.validate();
    CHECK(evaluate(build_IN(3), correlations_from_quantum(qs)) ==
          doctest::Approx(1.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("quantum strategy validation and correlations") {
    SUBCASE("pure state with sigma_z") {
        QuantumStrategy qs;
        qs.dimension = 2;
        CMatrix rho(2);
        rho(0, 0) = 1.0;
        CMatrix oz(2);
        oz(0, 0) = 1.0;
        oz(1, 1) = -1.0;
        qs.states = {rho};
        qs.observables = {oz};
        qs.validate();
        const auto cm = correlations_from_quantum(qs);
        CHECK(cm.at(0, 0) == 1.0);
    }
    SUBCASE("trace must be one") {
        QuantumStrategy qs;
        qs.dimension = 2;
        CMatrix rho(2);
        rho(0, 0) = 0.5; // trace 1/2
        CMatrix oz = CMatrix::identity(2);
        qs.states = {rho};
        qs.observables = {oz};
        CHECK_THROWS_AS(qs.validate(), ValidationError);
    }
    SUBCASE("observable must square to the identity") {
        QuantumStrategy qs;
        qs.dimension = 2;
        CMatrix rho(2);
        rho(0, 0) = 1.0;
        CMatrix o(2);
        o(0, 0) = 0.5;
        o(1, 1) = -1.0;
        qs.states = {rho};
        qs.observables = {o};
        CHECK_THROWS_AS(qs.validate(), ValidationError);
    }
    SUBCASE("negative eigenvalue is rejected") {
        QuantumStrategy qs;
        qs.dimension = 2;
        CMatrix rho(2);
        rho(0, 0) = 1.5;
        rho(1, 1) = -0.5;
        qs.states = {rho};
        qs.observables = {CMatrix::identity(2)};
        CHECK_THROWS_AS(qs.validate(), ValidationError);
    }
}

TEST_CASE("seesaw_maximize on I_3") {
    const Witness i3 = build_IN(3);
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 1;

    const auto res = seesaw_maximize(i3, 2, opts);

    SUBCASE("reaches the known qubit maximum") {
        CHECK(res.value == doctest::Approx(1.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-7));
    }

    SUBCASE("respects the algebraic ceiling") {
        CHECK(res.value <= algebraic_max(i3) + 1e-9);
    }

    SUBCASE("traces are monotone and converged") {
        REQUIRE(!res.traces.empty());
        bool any_converged = false;
        for (const auto& tr : res.traces) {
            if (tr.failed) continue;
            for (std::size_t k = 1; k < tr.values.size(); ++k)
                CHECK(tr.values[k] - tr.values[k - 1] >= -1e-12);
            any_converged = any_converged || tr.converged;
        }
        CHECK(any_converged);
    }

    SUBCASE("returned strategy is valid and reproduces the value") {
        res.strategy.validate();
        CHECK(evaluate(i3, correlations_from_quantum(res.strategy)) ==
              doctest::Approx(res.value).epsilon(1e-9));
    }

    SUBCASE("fixed point of the alternating steps") {
        // state step: each rho_x maximizes tr(rho G_x) among all states
        const auto& qs = res.strategy;
        for (int x = 0; x < 3; ++x) {
            CMatrix g(2);
            for (int y = 0; y < 2; ++y)
                if (i3.at(x, y) != 0.0) g = g + Complex(i3.at(x, y), 0.0) * qs.observables[y];
            const auto es = hermitian_eigensystem(g);
            const double best = es.values.back();
            const double got = trace_product(qs.states[x], g).real();
            CHECK(got >= best - 1e-8);
        }
        // observable step: each O_y attains sum |lambda(H_y)|
        for (int y = 0; y < 2; ++y) {
            CMatrix h(2);
            for (int x = 0; x < 3; ++x)
                if (i3.at(x, y) != 0.0) h = h + Complex(i3.at(x, y), 0.0) * qs.states[x];
            const auto es = hermitian_eigensystem(h);
            double best = 0.0;
            for (double lam : es.values) best += std::abs(lam);
            const double got = trace_product(qs.observables[y], h).real();
            CHECK(got >= best - 1e-8);
        }
    }

    SUBCASE("deterministic for a fixed seed") {
        const auto res2 = seesaw_maximize(i3, 2, opts);
        CHECK(res2.value == res.value);
        CHECK(res2.best_restart == res.best_restart);
    }
}

TEST_CASE("seesaw dimension monotonicity and saturation") {
    const Witness i3 = build_IN(3);
    SeesawOptions opts;
    opts.restarts = 12;
    opts.seed = 3;
    const double q2 = seesaw_maximize(i3, 2, opts).value;
    const double q3 = seesaw_maximize(i3, 3, opts).value;
    CHECK(q2 <= q3 + 1e-9);
    CHECK(q3 == doctest::Approx(5.0).epsilon(1e-7)); // algebraic max at d = 3
}

TEST_CASE("seesaw guards") {
    const Witness i3 = build_IN(3);
    CHECK_THROWS_AS(seesaw_maximize(i3, 0, SeesawOptions{}), ValidationError);
    CHECK_THROWS_AS(seesaw_maximize(i3, 17, SeesawOptions{}), ValidationError);
    SeesawOptions none;
    none.restarts = 0;
    CHECK_THROWS_AS(seesaw_maximize(i3, 2, none), ValidationError);

    // d = 1 degenerates to the best sign assignment: Q_1 = C_1
    SeesawOptions opts;
    opts.restarts = 4;
    CHECK(seesaw_maximize(i3, 1, opts).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("verify_orthogonality_at_algebraic_max") {
    const Witness i3 = build_IN(3);

    SUBCASE("orthogonal basis strategy at the maximum") {
        QuantumStrategy qs;
        qs.dimension = 3;
        for (int x = 0; x < 3; ++x) {
            CMatrix rho(3);
            rho(x, x) = 1.0;
            qs.states.push_back(rho);
        }
        CMatrix o1(3), o2(3);
        // signs matching the coefficient pattern of I_3
        o1(0, 0) = 1.0, o1(1, 1) = 1.0, o1(2, 2) = -1.0;
        o2(0, 0) = 1.0, o2(1, 1) = -1.0, o2(2, 2) = 1.0;
        qs.observables = {o1, o2};
        qs.validate();
        REQUIRE(evaluate(i3, correlations_from_quantum(qs)) == 5.0);
        CHECK(verify_orthogonality_at_algebraic_max(i3, qs, 1e-5));
    }

    SUBCASE("strategies below the maximum are rejected") {
        const auto qs = lift(optimal_qubit_I3()); // value 1+2*sqrt(2) < 5
        CHECK_THROWS_AS(verify_orthogonality_at_algebraic_max(i3, qs, 1e-5), ValidationError);
    }

    SUBCASE("scenario mismatch") {
        const auto qs = lift(optimal_qubit_I3());
        CHECK_THROWS_AS(verify_orthogonality_at_algebraic_max(build_IN(4), qs, 1e-5), ValidationError);
    }
}

TEST_CASE("j3_search") {
    SUBCASE("warm start from the known optimum stays at 3 pi / 2") {
        const auto res = j3_search(1, 0, optimal_qubit_I3());
        CHECK(res.max_found == doctest::Approx(1.5 * kPi).epsilon(1e-9));
        CHECK(res.best_restart == 0);
    }

    SUBCASE("random restarts approach 3 pi / 2 and never beat it") {
        const auto res = j3_search(25, 4);
        CHECK(res.max_found <= 1.5 * kPi + 1e-6);
        CHECK(res.max_found >= 1.5 * kPi - 1e-5);
        res.strategy.validate();
        CHECK(evaluate_J3(bloch_correlations(res.strategy)) ==
              doctest::Approx(res.max_found).epsilon(1e-12));
    }

    SUBCASE("deterministic for a fixed seed") {
        const auto a = j3_search(8, 9);
        const auto b = j3_search(8, 9);
        CHECK(a.max_found == b.max_found);
        CHECK(a.best_restart == b.best_restart);
    }

    SUBCASE("wrong init scenario is rejected") {
        BlochStrategy bad;
        bad.state_vectors = {{1, 0, 0}};
        bad.measurement_vectors = {{1, 0, 0}};
        CHECK_THROWS_AS(j3_search(1, 0, bad), ValidationError);
    }
}
