#include "dimcert/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dimcert/errors.hpp"

namespace dimcert::io {

namespace {

const json& require(const json& j, const char* key, const std::string& what) {
    if (!j.is_object()) throw ValidationError(what + ": expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(what + ": missing \"" + key + "\"");
    return *it;
}

double as_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw ValidationError(what + ": expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) throw ValidationError(what + ": expected an integer");
    return j.get<int>();
}

/// Rectangular rows x cols numeric matrix, flattened row-major.
std::vector<double> as_matrix(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ValidationError(what + ": expected " + std::to_string(rows) + " rows");
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(rows) * cols);
    for (int x = 0; x < rows; ++x) {
        const json& row = j[static_cast<std::size_t>(x)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ValidationError(what + ": row " + std::to_string(x + 1) + " does not have " +
                                  std::to_string(cols) + " entries");
        for (int y = 0; y < cols; ++y)
            flat.push_back(as_number(row[static_cast<std::size_t>(y)],
                                     what + " entry (" + std::to_string(x + 1) + "," + std::to_string(y + 1) + ")"));
    }
    return flat;
}

json matrix_to_json(const std::vector<double>& flat, int rows, int cols) {
    json out = json::array();
    for (int x = 0; x < rows; ++x) {
        json row = json::array();
        for (int y = 0; y < cols; ++y) row.push_back(flat[static_cast<std::size_t>(x) * cols + y]);
        out.push_back(std::move(row));
    }
    return out;
}

Complex as_complex(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2)
        throw ValidationError(what + ": expected a [re, im] pair");
    return Complex(as_number(j[0], what + " (re)"), as_number(j[1], what + " (im)"));
}

CMatrix as_cmatrix(const json& j, int size, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != size)
        throw ValidationError(what + ": expected " + std::to_string(size) + " rows");
    CMatrix out(size);
    for (int i = 0; i < size; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != size)
            throw ValidationError(what + ": row " + std::to_string(i + 1) + " does not have " +
                                  std::to_string(size) + " entries");
        for (int k = 0; k < size; ++k)
            out(i, k) = as_complex(row[static_cast<std::size_t>(k)],
                                   what + " entry (" + std::to_string(i + 1) + "," + std::to_string(k + 1) + ")");
    }
    return out;
}

json cmatrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (int i = 0; i < m.n; ++i) {
        json row = json::array();
        for (int k = 0; k < m.n; ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        out.push_back(std::move(row));
    }
    return out;
}

std::array<double, 3> as_vec3(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) throw ValidationError(what + ": expected a 3-vector");
    return {as_number(j[0], what), as_number(j[1], what), as_number(j[2], what)};
}

} // namespace

json scenario_to_json(const Scenario& sc) {
    return json{{"N", sc.n_preparations}, {"m", sc.n_measurements}};
}

Scenario scenario_from_json(const json& j) {
    const int n = as_int(require(j, "N", "scenario"), "scenario N");
    const int m = as_int(require(j, "m", "scenario"), "scenario m");
    return Scenario(n, m);
}

json correlations_to_json(const CorrelationMatrix& cm) {
    return json{{"scenario", scenario_to_json(cm.scenario)},
                {"E", matrix_to_json(cm.e, cm.scenario.n_preparations, cm.scenario.n_measurements)}};
}

CorrelationMatrix correlations_from_json(const json& j) {
    const Scenario sc = scenario_from_json(require(j, "scenario", "correlation input"));
    auto flat = as_matrix(require(j, "E", "correlation input"), sc.n_preparations, sc.n_measurements, "E");
    CorrelationMatrix cm(sc, std::move(flat));
    cm.validate();
    return cm;
}

json probabilities_to_json(const ProbabilityTable& pt) {
    json rows = json::array();
    for (int x = 0; x < pt.scenario.n_preparations; ++x) {
        json row = json::array();
        for (int y = 0; y < pt.scenario.n_measurements; ++y)
            row.push_back(json::array({pt.plus(x, y), pt.minus(x, y)}));
        rows.push_back(std::move(row));
    }
    return json{{"scenario", scenario_to_json(pt.scenario)}, {"P", std::move(rows)}};
}

ProbabilityTable probabilities_from_json(const json& j) {
    const Scenario sc = scenario_from_json(require(j, "scenario", "probability input"));
    const json& p = require(j, "P", "probability input");
    if (!p.is_array() || static_cast<int>(p.size()) != sc.n_preparations)
        throw ValidationError("P: expected " + std::to_string(sc.n_preparations) + " rows");
    std::vector<double> plus, minus;
    for (int x = 0; x < sc.n_preparations; ++x) {
        const json& row = p[static_cast<std::size_t>(x)];
        if (!row.is_array() || static_cast<int>(row.size()) != sc.n_measurements)
            throw ValidationError("P: row " + std::to_string(x + 1) + " does not have " +
                                  std::to_string(sc.n_measurements) + " entries");
        for (int y = 0; y < sc.n_measurements; ++y) {
            const std::string where =
                "P entry (" + std::to_string(x + 1) + "," + std::to_string(y + 1) + ")";
            const json& pair = row[static_cast<std::size_t>(y)];
            if (!pair.is_array() || pair.size() != 2)
                throw ValidationError(where + ": expected a [p_plus, p_minus] pair");
            plus.push_back(as_number(pair[0], where));
            minus.push_back(as_number(pair[1], where));
        }
    }
    return ProbabilityTable::from_raw(sc, plus, minus);
}

CorrelationMatrix load_correlations(const std::string& path) {
    const json j = load_json_file(path);
    if (j.is_object() && j.contains("E")) return correlations_from_json(j);
    if (j.is_object() && j.contains("P")) return correlations_from_probabilities(probabilities_from_json(j));
    throw ValidationError(path + ": expected a correlation (\"E\") or probability (\"P\") object");
}

json witness_to_json(const Witness& w) {
    return json{{"coeffs", matrix_to_json(w.coeffs, w.scenario.n_preparations, w.scenario.n_measurements)}};
}

json witness_to_json(const Witness& w, int d, const std::string& kind) {
    auto it = w.bounds.find(d);
    if (it == w.bounds.end())
        throw ValidationError("witness serialization: no cached bounds for d = " + std::to_string(d));
    const auto& b = kind == "quantum" ? it->second.quantum : it->second.classical;
    if (!b)
        throw ValidationError("witness serialization: no " + kind + " bound for d = " + std::to_string(d));
    json out = witness_to_json(w);
    out["bound"] = *b;
    out["d"] = d;
    out["kind"] = kind;
    return out;
}

Witness witness_from_json(const json& j) {
    const json& coeffs = require(j, "coeffs", "witness input");
    if (!coeffs.is_array() || coeffs.empty() || !coeffs[0].is_array() || coeffs[0].empty())
        throw ValidationError("witness input: \"coeffs\" must be a non-empty 2d array");
    Scenario sc(static_cast<int>(coeffs.size()), static_cast<int>(coeffs[0].size()));
    if (j.contains("scenario")) {
        const Scenario declared = scenario_from_json(j.at("scenario"));
        if (!(declared == sc))
            throw ValidationError("witness input: declared scenario " + declared.str() +
                                  " does not match the coefficient shape " + sc.str());
    }
    Witness w(sc, as_matrix(coeffs, sc.n_preparations, sc.n_measurements, "coeffs"));
    if (j.contains("bound") && j.contains("d")) {
        const int d = as_int(j.at("d"), "witness d");
        const double bound = as_number(j.at("bound"), "witness bound");
        const std::string kind = j.value("kind", std::string("classical"));
        if (kind == "classical")
            w.bounds[d].classical = bound;
        else if (kind == "quantum")
            w.bounds[d].quantum = bound;
        else
            throw ValidationError("witness input: unknown kind \"" + kind + "\"");
    }
    return w;
}

Witness load_witness(const std::string& spec) {
    if (spec.rfind("IN:", 0) == 0) {
        const std::string tail = spec.substr(3);
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(tail, &used);
            if (used != tail.size()) throw std::invalid_argument(tail);
        } catch (const std::exception&) {
            throw ValidationError("witness shorthand: cannot parse \"" + spec + "\" (expected IN:<N>)");
        }
        return build_IN(n);
    }
    return witness_from_json(load_json_file(spec));
}

json facet_to_json(const Facet& f) {
    json out = witness_to_json(f.witness, f.d, "classical");
    out["orbit_class"] = f.orbit_class;
    out["saturating_count"] = f.saturating_count;
    return out;
}

json facet_list_to_json(const FacetEnumeration& fe) {
    json out = json::array();
    for (const auto& f : fe.facets) out.push_back(facet_to_json(f));
    return out;
}

json classical_strategy_to_json(const ClassicalStrategy& s) {
    json comps = json::array();
    for (const auto& c : s.components) {
        json enc = json::array();
        for (int msg : c.encoding) enc.push_back(msg + 1); // 1-based messages at the boundary
        json dec = json::array();
        for (int msg = 0; msg < s.dimension; ++msg) {
            json row = json::array();
            for (int y = 0; y < s.scenario.n_measurements; ++y)
                row.push_back(static_cast<int>(c.decoding[static_cast<std::size_t>(msg) *
                                                              s.scenario.n_measurements +
                                                          y]));
            dec.push_back(std::move(row));
        }
        comps.push_back(json{{"encoding", std::move(enc)}, {"decoding", std::move(dec)}});
    }
    return json{{"kind", "classical"},
                {"scenario", scenario_to_json(s.scenario)},
                {"d", s.dimension},
                {"weights", s.weights},
                {"components", std::move(comps)}};
}

ClassicalStrategy classical_strategy_from_json(const json& j) {
    ClassicalStrategy s;
    s.scenario = scenario_from_json(require(j, "scenario", "classical strategy"));
    s.dimension = as_int(require(j, "d", "classical strategy"), "classical strategy d");
    const json& weights = require(j, "weights", "classical strategy");
    if (!weights.is_array()) throw ValidationError("classical strategy: \"weights\" must be an array");
    for (const auto& w : weights) s.weights.push_back(as_number(w, "classical strategy weight"));
    const json& comps = require(j, "components", "classical strategy");
    if (!comps.is_array()) throw ValidationError("classical strategy: \"components\" must be an array");
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const std::string where = "classical strategy component " + std::to_string(c + 1);
        ClassicalStrategy::Component comp;
        const json& enc = require(comps[c], "encoding", where);
        if (!enc.is_array() || static_cast<int>(enc.size()) != s.scenario.n_preparations)
            throw ValidationError(where + ": encoding must list one message per preparation");
        for (const auto& msg : enc) comp.encoding.push_back(as_int(msg, where + " encoding") - 1);
        const json& dec = require(comps[c], "decoding", where);
        auto flat = as_matrix(dec, s.dimension, s.scenario.n_measurements, where + " decoding");
        for (double v : flat) {
            if (v != 1.0 && v != -1.0) throw ValidationError(where + ": decoding entries must be +/-1");
            comp.decoding.push_back(static_cast<int8_t>(v));
        }
        s.components.push_back(std::move(comp));
    }
    s.validate();
    return s;
}

json quantum_strategy_to_json(const QuantumStrategy& s) {
    json states = json::array(), observables = json::array();
    for (const auto& rho : s.states) states.push_back(cmatrix_to_json(rho));
    for (const auto& o : s.observables) observables.push_back(cmatrix_to_json(o));
    return json{{"kind", "quantum"},
                {"d", s.dimension},
                {"states", std::move(states)},
                {"observables", std::move(observables)}};
}

QuantumStrategy quantum_strategy_from_json(const json& j) {
    QuantumStrategy s;
    s.dimension = as_int(require(j, "d", "quantum strategy"), "quantum strategy d");
    const json& states = require(j, "states", "quantum strategy");
    const json& observables = require(j, "observables", "quantum strategy");
    if (!states.is_array() || !observables.is_array())
        throw ValidationError("quantum strategy: \"states\" and \"observables\" must be arrays");
    for (std::size_t x = 0; x < states.size(); ++x)
        s.states.push_back(as_cmatrix(states[x], s.dimension, "state " + std::to_string(x + 1)));
    for (std::size_t y = 0; y < observables.size(); ++y)
        s.observables.push_back(as_cmatrix(observables[y], s.dimension, "observable " + std::to_string(y + 1)));
    s.validate();
    return s;
}

json bloch_strategy_to_json(const BlochStrategy& s) {
    json states = json::array(), measurements = json::array();
    for (const auto& r : s.state_vectors) states.push_back(json::array({r[0], r[1], r[2]}));
    for (const auto& m : s.measurement_vectors) measurements.push_back(json::array({m[0], m[1], m[2]}));
    return json{{"kind", "bloch"}, {"states", std::move(states)}, {"measurements", std::move(measurements)}};
}

BlochStrategy bloch_strategy_from_json(const json& j) {
    BlochStrategy s;
    const json& states = require(j, "states", "Bloch strategy");
    const json& measurements = require(j, "measurements", "Bloch strategy");
    if (!states.is_array() || !measurements.is_array())
        throw ValidationError("Bloch strategy: \"states\" and \"measurements\" must be arrays");
    for (std::size_t x = 0; x < states.size(); ++x)
        s.state_vectors.push_back(as_vec3(states[x], "Bloch state " + std::to_string(x + 1)));
    for (std::size_t y = 0; y < measurements.size(); ++y)
        s.measurement_vectors.push_back(as_vec3(measurements[y], "Bloch measurement " + std::to_string(y + 1)));
    s.validate();
    return s;
}

AnyStrategy strategy_from_json(const json& j) {
    const std::string kind = j.value("kind", std::string());
    if (kind == "classical") return classical_strategy_from_json(j);
    if (kind == "quantum") return quantum_strategy_from_json(j);
    if (kind == "bloch") return bloch_strategy_from_json(j);
    throw ValidationError("strategy input: \"kind\" must be \"classical\", \"quantum\" or \"bloch\"");
}

AnyStrategy load_strategy(const std::string& path) { return strategy_from_json(load_json_file(path)); }

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << '\n';
}

} // namespace dimcert::io
