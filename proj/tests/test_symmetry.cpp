#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dimcert/membership.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/symmetry.hpp"
#include "dimcert/vertices.hpp"
#include "dimcert/witness.hpp"

using namespace dimcert;

TEST_CASE("group order") {
    CHECK(symmetry_group_order(Scenario(3, 2)) == 48);   // 3! * 2! * 4
    CHECK(symmetry_group_order(Scenario(2, 2)) == 16);   // 2! * 2! * 4
    CHECK(symmetry_group_order(Scenario(4, 3)) == 1152); // 4! * 3! * 8
    CHECK(symmetry_group(Scenario(3, 2)).size() == 48);
    CHECK(symmetry_group(Scenario(2, 2)).size() == 16);
}

TEST_CASE("group guard") {
    CHECK_THROWS_AS(symmetry_group(Scenario(4, 3), 100), ResourceLimitError);
}

TEST_CASE("group is closed and contains distinct elements") {
    const Scenario sc(2, 2);
    const auto group = symmetry_group(sc);
    const std::vector<double> probe = {1.0, 2.0, 3.0, 5.0}; // entries with no accidental symmetry
    std::set<std::vector<double>> images;
    for (const auto& g : group) images.insert(apply_symmetry(g, sc, probe));
    CHECK(images.size() == group.size()); // free action on a generic point
}

TEST_CASE("apply_symmetry definition") {
    const Scenario sc(2, 2);
    SymmetryElement g;
    g.row_perm = {1, 0};
    g.col_perm = {1, 0};
    g.col_sign = {1, -1};
    // out[x][y] = sign_y * w[pi(x)][sigma(y)]
    const std::vector<double> w = {1.0, 2.0, 3.0, 4.0};
    const auto img = apply_symmetry(g, sc, w);
    CHECK(img == std::vector<double>{4.0, -3.0, 2.0, -1.0});
}

TEST_CASE("vertex set is invariant under the group") {
    const Scenario sc(3, 2);
    for (int d : {2, 3}) {
        const auto vertices = enumerate_vertices(sc, d);
        std::set<std::vector<int8_t>> vertex_set;
        for (const auto& v : vertices) vertex_set.insert(v.signs);
        for (const auto& g : symmetry_group(sc)) {
            for (const auto& v : vertices) {
                const auto img = apply_symmetry(g, sc, v.signs);
                CHECK(vertex_set.count(img) == 1);
            }
        }
    }
}

TEST_CASE("orbit sizes") {
    const Scenario sc(3, 2);

    SUBCASE("positivity witness has one orbit per signed entry") {
        const std::vector<int> e00 = {1, 0, 0, 0, 0, 0};
        CHECK(symmetry_orbit(sc, e00).size() == 12); // N*m entries, 2 signs
    }

    SUBCASE("I_3 orbit size matches its facet count") {
        std::vector<int> i3 = {1, 1, 1, -1, -1, 0};
        CHECK(symmetry_orbit(sc, i3).size() == 24);
    }

    SUBCASE("fully symmetric zero witness is a fixed point") {
        const std::vector<int> zero(6, 0);
        CHECK(symmetry_orbit(sc, zero).size() == 1);
    }
}

TEST_CASE("canonical_form is an orbit invariant") {
    const Scenario sc(3, 2);
    SplitMix64 rng(3);
    const auto group = symmetry_group(sc);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<int> w(6);
        for (int& c : w) c = static_cast<int>(rng.next() % 7) - 3;
        const auto canon = canonical_form(sc, w);
        // canonical form of every image agrees
        for (std::size_t k = 0; k < group.size(); k += 7)
            CHECK(canonical_form(sc, apply_symmetry(group[k], sc, w)) == canon);
        // and it is itself in the orbit
        const auto orbit = symmetry_orbit(sc, w);
        CHECK(std::binary_search(orbit.begin(), orbit.end(), canon));
        CHECK(canon == orbit.front()); // lex-min
    }
}

TEST_CASE("classical_max is constant along orbits") {
    const Scenario sc(3, 2);
    SplitMix64 rng(5);
    std::vector<double> coeffs(6);
    for (double& c : coeffs) c = static_cast<double>(static_cast<int>(rng.next() % 9)) - 4.0;
    const Witness w(sc, coeffs);
    const Rational base = classical_max_exact(w, 2);
    const auto group = symmetry_group(sc);
    for (std::size_t k = 0; k < group.size(); k += 5) {
        const Witness img(sc, apply_symmetry(group[k], sc, coeffs));
        CHECK(classical_max_exact(img, 2) == base);
    }
}
