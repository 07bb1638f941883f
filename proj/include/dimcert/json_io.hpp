#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "dimcert/facets.hpp"
#include "dimcert/quantum.hpp"
#include "dimcert/scenario.hpp"
#include "dimcert/witness.hpp"

namespace dimcert::io {

using nlohmann::json;

json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const json& j);

/// {"scenario": {"N":..,"m":..}, "E": [[..] per x]}
json correlations_to_json(const CorrelationMatrix& cm);
CorrelationMatrix correlations_from_json(const json& j);

/// {"scenario": ..., "P": [[[p_plus, p_minus] per y] per x]}
json probabilities_to_json(const ProbabilityTable& pt);
ProbabilityTable probabilities_from_json(const json& j);

/// Reads a correlation or probability file (detected by the "E"/"P" key)
/// and returns correlators either way.
CorrelationMatrix load_correlations(const std::string& path);

/// {"coeffs": [[..]], "bound": real, "d": int, "kind": "classical"}.  The
/// bound/d/kind triple describes one cached bound; pass has_bound = false
/// for a bare coefficient matrix.
json witness_to_json(const Witness& w, int d, const std::string& kind);
json witness_to_json(const Witness& w);

/// Accepts a bare {"coeffs": ...} object; "bound"/"d" fill the bounds cache
/// when present ("kind" selects classical or quantum, default classical).
Witness witness_from_json(const json& j);

/// Parses "IN:<N>" shorthand or reads a witness JSON file.
Witness load_witness(const std::string& spec);

/// Facet entry: witness JSON plus "orbit_class" and "saturating_count".
json facet_to_json(const Facet& f);
json facet_list_to_json(const FacetEnumeration& fe);

/// Strategies carry a "kind" discriminator: "classical", "quantum" (complex
/// entries as [re, im] pairs, row-major), or "bloch" (plain 3-vectors).
json classical_strategy_to_json(const ClassicalStrategy& s);
ClassicalStrategy classical_strategy_from_json(const json& j);
json quantum_strategy_to_json(const QuantumStrategy& s);
QuantumStrategy quantum_strategy_from_json(const json& j);
json bloch_strategy_to_json(const BlochStrategy& s);
BlochStrategy bloch_strategy_from_json(const json& j);

using AnyStrategy = std::variant<ClassicalStrategy, QuantumStrategy, BlochStrategy>;
AnyStrategy strategy_from_json(const json& j);
AnyStrategy load_strategy(const std::string& path);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

} // namespace dimcert::io
