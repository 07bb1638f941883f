#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dimcert/json_io.hpp"
#include "dimcert/report.hpp"
#include "dimcert/rng.hpp"

using namespace dimcert;
using dimcert::io::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "dimcert_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("scenario round trip") {
    const Scenario sc(4, 3);
    CHECK(io::scenario_from_json(io::scenario_to_json(sc)) == sc);
    CHECK_THROWS_AS(io::scenario_from_json(json{{"N", 3}}), ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(json{{"N", 3}, {"m", "two"}}), ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(json{{"N", 0}, {"m", 2}}), ValidationError);
    CHECK_THROWS_AS(io::scenario_from_json(json::array()), ValidationError);
}

TEST_CASE("correlation round trips") {
    const CorrelationMatrix cm(Scenario(2, 3), {0.5, -1.0, 0.25, 1.0, 0.0, -0.125});

    SUBCASE("in memory") {
        const auto back = io::correlations_from_json(io::correlations_to_json(cm));
        CHECK(back.scenario == cm.scenario);
        CHECK(back.e == cm.e);
    }

    SUBCASE("through serialized text") {
        const std::string text = io::correlations_to_json(cm).dump();
        const auto back = io::correlations_from_json(json::parse(text));
        CHECK(back.e == cm.e);
    }

    SUBCASE("arbitrary doubles survive dump/parse") {
        SplitMix64 rng(5);
        std::vector<double> e(6);
        for (double& v : e) v = 2.0 * rng.uniform01() - 1.0;
        const CorrelationMatrix noisy(Scenario(2, 3), e);
        const auto back = io::correlations_from_json(json::parse(io::correlations_to_json(noisy).dump()));
        CHECK(back.e == noisy.e);
    }
}

TEST_CASE("probability round trips") {
    const Scenario sc(2, 2);
    SplitMix64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> plus(4), minus(4);
        for (int i = 0; i < 4; ++i) {
            plus[i] = static_cast<double>(rng.next() >> 32) * 0x1.0p-32;
            minus[i] = 1.0 - plus[i];
        }
        const auto pt = ProbabilityTable::from_raw(sc, plus, minus);
        const auto back = io::probabilities_from_json(json::parse(io::probabilities_to_json(pt).dump()));
        CHECK(back.p_plus == pt.p_plus);
    }
}

TEST_CASE("malformed correlation inputs") {
    const json good = json{{"scenario", {{"N", 2}, {"m", 2}}}, {"E", {{0.5, 0.5}, {0.5, 0.5}}}};
    CHECK_NOTHROW(io::correlations_from_json(good));

    auto bad = good;
    bad.erase("scenario");
    CHECK_THROWS_AS(io::correlations_from_json(bad), ValidationError);

    bad = good;
    bad["E"] = {{0.5, 0.5}};
    CHECK_THROWS_AS(io::correlations_from_json(bad), ValidationError); // row count

    bad = good;
    bad["E"] = {{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}};
    CHECK_THROWS_AS(io::correlations_from_json(bad), ValidationError); // row length

    bad = good;
    bad["E"][0][1] = "x";
    CHECK_THROWS_AS(io::correlations_from_json(bad), ValidationError); // type

    bad = good;
    bad["E"][1][0] = 1.5;
    CHECK_THROWS_AS(io::correlations_from_json(bad), ValidationError); // range
}

TEST_CASE("malformed probability inputs") {
    const json good = json{{"scenario", {{"N", 1}, {"m", 2}}}, {"P", {{{0.25, 0.75}, {1.0, 0.0}}}}};
    CHECK_NOTHROW(io::probabilities_from_json(good));

    auto bad = good;
    bad["P"][0][0] = {0.25, 0.5}; // not normalized
    CHECK_THROWS_AS(io::probabilities_from_json(bad), ValidationError);

    bad = good;
    bad["P"][0][0] = {-0.25, 1.25}; // outside [0,1]
    CHECK_THROWS_AS(io::probabilities_from_json(bad), ValidationError);

    bad = good;
    bad["P"][0][0] = {0.25, 0.5, 0.25}; // not a pair
    CHECK_THROWS_AS(io::probabilities_from_json(bad), ValidationError);

    bad = good;
    bad["P"] = {{{0.25, 0.75}}};
    CHECK_THROWS_AS(io::probabilities_from_json(bad), ValidationError); // row length
}

TEST_CASE("witness serialization") {
    SUBCASE("bare coefficients") {
        const auto w = io::witness_from_json(json{{"coeffs", {{1.0, 1.0}, {1.0, -1.0}, {-1.0, 0.0}}}});
        CHECK(w.scenario == Scenario(3, 2));
        CHECK(w.coeffs == build_IN(3).coeffs);
        CHECK(w.bounds.empty());
    }

    SUBCASE("bound cache round trip") {
        Witness w = build_IN(3);
        w.bounds[2].classical = 3.0;
        const json j = io::witness_to_json(w, 2, "classical");
        CHECK(j.at("bound") == 3.0);
        CHECK(j.at("d") == 2);
        CHECK(j.at("kind") == "classical");
        const auto back = io::witness_from_json(j);
        CHECK(back.coeffs == w.coeffs);
        CHECK(back.bounds.at(2).classical == 3.0);
        CHECK(!back.bounds.at(2).quantum.has_value());
    }

    SUBCASE("quantum kind") {
        Witness w = build_IN(3);
        w.bounds[2].quantum = 3.8284271247461903;
        const auto back = io::witness_from_json(io::witness_to_json(w, 2, "quantum"));
        CHECK(back.bounds.at(2).quantum == 3.8284271247461903);
    }

    SUBCASE("missing cached bound is an error") {
        const Witness w = build_IN(3);
        CHECK_THROWS_AS(io::witness_to_json(w, 2, "classical"), ValidationError);
    }

    SUBCASE("declared scenario must match the shape") {
        const json j = {{"coeffs", {{1.0, 1.0}, {1.0, -1.0}}}, {"scenario", {{"N", 3}, {"m", 2}}}};
        CHECK_THROWS_AS(io::witness_from_json(j), ValidationError);
    }

    SUBCASE("ragged coefficients are rejected") {
        CHECK_THROWS_AS(io::witness_from_json(json{{"coeffs", {{1.0, 1.0}, {1.0}}}}), ValidationError);
        CHECK_THROWS_AS(io::witness_from_json(json{{"coeffs", json::array()}}), ValidationError);
        CHECK_THROWS_AS(io::witness_from_json(json{{"kind", "classical"}}), ValidationError);
    }

    SUBCASE("unknown kind") {
        const json j = {{"coeffs", {{1.0, 1.0}}}, {"bound", 1.0}, {"d", 1}, {"kind", "mystery"}};
        CHECK_THROWS_AS(io::witness_from_json(j), ValidationError);
    }
}

TEST_CASE("load_witness shorthand") {
    const Witness w = io::load_witness("IN:4");
    CHECK(w.coeffs == build_IN(4).coeffs);
    CHECK_THROWS_AS(io::load_witness("IN:x"), ValidationError);
    CHECK_THROWS_AS(io::load_witness("IN:4x"), ValidationError);
    CHECK_THROWS_AS(io::load_witness("IN:1"), ValidationError);
    CHECK_THROWS_AS(io::load_witness("/nonexistent/witness.json"), ValidationError);
}

TEST_CASE("strategy round trips") {
    SUBCASE("classical") {
        ClassicalStrategy s;
        s.scenario = Scenario(3, 2);
        s.dimension = 2;
        s.weights = {0.25, 0.75};
        s.components.push_back({{0, 1, 0}, {+1, +1, -1, -1}});
        s.components.push_back({{1, 1, 0}, {-1, +1, +1, -1}});
        s.validate();
        const json j = io::classical_strategy_to_json(s);
        CHECK(j.at("kind") == "classical");
        // encodings are 1-based at the JSON boundary
        CHECK(j.at("components")[0].at("encoding") == json::array({1, 2, 1}));
        const auto back = io::classical_strategy_from_json(j);
        CHECK(back.weights == s.weights);
        CHECK(back.components[0].encoding == s.components[0].encoding);
        CHECK(back.components[1].decoding == s.components[1].decoding);
        const auto cm1 = simulate_classical(s), cm2 = simulate_classical(back);
        CHECK(cm1.e == cm2.e);
    }

    SUBCASE("quantum with complex entries") {
        QuantumStrategy qs;
        qs.dimension = 2;
        CMatrix rho(2);
        rho(0, 0) = 0.5;
        rho(0, 1) = Complex(0.0, -0.5);
        rho(1, 0) = Complex(0.0, 0.5);
        rho(1, 1) = 0.5;
        CMatrix oy(2);
        oy(0, 1) = Complex(0.0, -1.0);
        oy(1, 0) = Complex(0.0, 1.0);
        qs.states = {rho};
        qs.observables = {oy};
        qs.validate();
        const auto back = io::quantum_strategy_from_json(
            json::parse(io::quantum_strategy_to_json(qs).dump()));
        CHECK(back.states[0].a == qs.states[0].a);
        CHECK(back.observables[0].a == qs.observables[0].a);
    }

    SUBCASE("bloch") {
        BlochStrategy bs;
        bs.state_vectors = {{1, 0, 0}, {0, 0.5, 0}};
        bs.measurement_vectors = {{0, 0, 1}};
        const auto back = io::bloch_strategy_from_json(io::bloch_strategy_to_json(bs));
        CHECK(back.state_vectors == bs.state_vectors);
        CHECK(back.measurement_vectors == bs.measurement_vectors);
    }

    SUBCASE("kind dispatch") {
        const json j = {{"kind", "bloch"},
                        {"states", {{1.0, 0.0, 0.0}}},
                        {"measurements", {{0.0, 0.0, 1.0}}}};
        const auto any = io::strategy_from_json(j);
        CHECK(std::holds_alternative<BlochStrategy>(any));
        CHECK_THROWS_AS(io::strategy_from_json(json{{"kind", "analog"}}), ValidationError);
        CHECK_THROWS_AS(io::strategy_from_json(json{{"states", json::array()}}), ValidationError);
    }

    SUBCASE("invalid payloads surface as validation errors") {
        // non-Hermitian state
        json j = {{"kind", "quantum"},
                  {"d", 2},
                  {"states", {{{{1.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}}}}},
                  {"observables", json::array()}};
        CHECK_THROWS_AS(io::strategy_from_json(j), ValidationError);
        // bad complex pair
        j = {{"kind", "quantum"},
             {"d", 1},
             {"states", {{{{1.0}}}}},
             {"observables", {{{{1.0, 0.0}}}}}};
        CHECK_THROWS_AS(io::strategy_from_json(j), ValidationError);
        // bloch vector of wrong arity
        j = {{"kind", "bloch"}, {"states", {{1.0, 0.0}}}, {"measurements", {{0.0, 0.0, 1.0}}}};
        CHECK_THROWS_AS(io::strategy_from_json(j), ValidationError);
        // classical weights of the wrong type
        j = {{"kind", "classical"},
             {"scenario", {{"N", 1}, {"m", 1}}},
             {"d", 1},
             {"weights", "all"},
             {"components", json::array()}};
        CHECK_THROWS_AS(io::strategy_from_json(j), ValidationError);
    }
}

TEST_CASE("file loading") {
    SUBCASE("missing file") {
        CHECK_THROWS_AS(io::load_json_file("/nonexistent/input.json"), ValidationError);
    }
    SUBCASE("syntax error names the file") {
        const auto path = temp_file("broken.json");
        std::ofstream(path) << "{ not json";
        try {
            io::load_json_file(path.string());
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
        }
    }
    SUBCASE("write and reload") {
        const auto path = temp_file("roundtrip.json");
        const CorrelationMatrix cm(Scenario(2, 2), {0.5, -0.5, 1.0, 0.0});
        io::write_json_file(path.string(), io::correlations_to_json(cm));
        const auto back = io::load_correlations(path.string());
        CHECK(back.e == cm.e);
    }
    SUBCASE("load_correlations accepts probability files") {
        const auto path = temp_file("probs.json");
        const auto pt = ProbabilityTable::from_raw(Scenario(1, 2), {1.0, 0.25}, {0.0, 0.75});
        io::write_json_file(path.string(), io::probabilities_to_json(pt));
        const auto cm = io::load_correlations(path.string());
        CHECK(cm.at(0, 0) == 1.0);
        CHECK(cm.at(0, 1) == -0.5);
    }
    SUBCASE("neither E nor P") {
        const auto path = temp_file("neither.json");
        std::ofstream(path) << "{\"scenario\": {\"N\": 1, \"m\": 1}}";
        CHECK_THROWS_AS(io::load_correlations(path.string()), ValidationError);
    }
}

TEST_CASE("run report") {
    io::RunReport report;
    report.command = "member";
    report.inputs = json{{"d", 2}, {"input", {{"E", {{1.0}}}}}};
    report.results = json{{"verdict", "Inside"}};
    report.add_timing("membership", 1.25);

    const json j = report.to_json();
    CHECK(j.at("command") == "member");
    CHECK(j.at("tool_version") == io::kToolVersion);
    CHECK(j.at("timings_ms").size() == 1);

    SUBCASE("digest is canonical in key order") {
        const json a = {{"x", 1}, {"y", 2}};
        json b;
        b["y"] = 2;
        b["x"] = 1;
        CHECK(io::content_digest(a) == io::content_digest(b));
        CHECK(io::content_digest(a) != io::content_digest(json{{"x", 1}, {"y", 3}}));
    }

    SUBCASE("report json is deterministic apart from timings") {
        io::RunReport other = report;
        other.timings_ms.clear();
        other.add_timing("membership", 99.0);
        json ja = report.to_json(), jb = other.to_json();
        ja.erase("timings_ms");
        jb.erase("timings_ms");
        CHECK(ja.dump() == jb.dump());
    }
}
