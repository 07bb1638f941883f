#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dimcert/errors.hpp"
#include "dimcert/facets.hpp"
#include "dimcert/json_io.hpp"
#include "dimcert/membership.hpp"
#include "dimcert/quantum.hpp"
#include "dimcert/report.hpp"
#include "dimcert/table1.hpp"
#include "dimcert/witness.hpp"

namespace {

using dimcert::io::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    int restarts = 50;
    double tol = 0.0; // 0 keeps per-module defaults
    unsigned long long vertex_cap = dimcert::kDefaultVertexCap;
    std::string format = "text";
};

dimcert::MembershipOptions membership_options(const GlobalOpts& g) {
    dimcert::MembershipOptions opts;
    opts.vertex_cap = g.vertex_cap;
    if (g.tol > 0.0) {
        opts.feas_tol = g.tol;
        opts.separation_margin = g.tol;
    }
    return opts;
}

dimcert::SeesawOptions seesaw_options(const GlobalOpts& g) {
    dimcert::SeesawOptions opts;
    opts.restarts = g.restarts;
    opts.seed = g.seed;
    if (g.tol > 0.0) opts.tol = g.tol;
    return opts;
}

dimcert::CorrelationMatrix correlations_from_any(const json& j, const std::string& where) {
    if (j.is_object() && j.contains("E")) return dimcert::io::correlations_from_json(j);
    if (j.is_object() && j.contains("P"))
        return dimcert::correlations_from_probabilities(dimcert::io::probabilities_from_json(j));
    throw dimcert::ValidationError(where + ": expected a correlation (\"E\") or probability (\"P\") object");
}

std::string format_matrix(const std::vector<double>& flat, int rows, int cols,
                          const std::string& indent) {
    std::ostringstream out;
    out << std::setprecision(12);
    for (int x = 0; x < rows; ++x) {
        out << indent;
        for (int y = 0; y < cols; ++y) {
            if (y) out << ' ';
            out << flat[static_cast<std::size_t>(x) * cols + y];
        }
        out << '\n';
    }
    return out.str();
}

json signs_to_json(const dimcert::DeterministicVertex& v) {
    json rows = json::array();
    for (int x = 0; x < v.scenario.n_preparations; ++x) {
        json row = json::array();
        for (int y = 0; y < v.scenario.n_measurements; ++y) row.push_back(static_cast<int>(v.at(x, y)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json separating_to_json(const dimcert::SeparatingWitness& sw, int d) {
    json out = dimcert::io::witness_to_json(sw.witness, d, "classical");
    out["achieved_value"] = sw.achieved_value;
    out["classical_max"] = sw.classical_max;
    return out;
}

void describe_separation(std::ostream& out, const dimcert::SeparatingWitness& sw, int d) {
    const auto& sc = sw.witness.scenario;
    out << "separating witness (w . E <= C_" << d << "):\n"
        << format_matrix(sw.witness.coeffs, sc.n_preparations, sc.n_measurements, "    ")
        << "  classical_max C_" << d << " = " << sw.classical_max << " (exact vertex enumeration)\n"
        << "  achieved value = " << sw.achieved_value << '\n';
}

int emit(const GlobalOpts& g, dimcert::io::RunReport& report, const std::string& text, int code) {
    if (g.format == "json")
        std::cout << report.to_json().dump(2) << '\n';
    else
        std::cout << text;
    return code;
}

int cmd_member(const GlobalOpts& g, const std::string& input, int d) {
    const json raw = dimcert::io::load_json_file(input);
    const dimcert::CorrelationMatrix cm = correlations_from_any(raw, input);

    dimcert::io::RunReport report;
    report.command = "member";
    report.inputs = json{{"input", raw}, {"d", d}, {"vertex_cap", g.vertex_cap}, {"tol", g.tol}};

    dimcert::io::StageTimer timer;
    const auto cert = dimcert::membership(cm, d, membership_options(g));
    report.add_timing("membership", timer.elapsed_ms());

    std::ostringstream text;
    text << std::setprecision(12);
    json results;
    results["d"] = d;
    if (cert.inside()) {
        results["verdict"] = "Inside";
        json weights = json::array();
        for (const auto& [v, wt] : *cert.convex_weights)
            weights.push_back(json{{"weight", wt}, {"signs", signs_to_json(v)}});
        results["convex_weights"] = std::move(weights);
        text << "verdict: Inside (d = " << d << ")\n"
             << "convex decomposition over " << cert.convex_weights->size() << " vertices\n";
    } else {
        results["verdict"] = "Outside";
        results["separating_witness"] = separating_to_json(*cert.separating_witness, d);
        text << "verdict: Outside (d = " << d << ")\n";
        describe_separation(text, *cert.separating_witness, d);
    }
    report.results = std::move(results);
    return emit(g, report, text.str(), cert.inside() ? 0 : 3);
}

int cmd_dimension(const GlobalOpts& g, const std::string& input) {
    const json raw = dimcert::io::load_json_file(input);
    const dimcert::CorrelationMatrix cm = correlations_from_any(raw, input);

    dimcert::io::RunReport report;
    report.command = "dimension";
    report.inputs = json{{"input", raw}, {"vertex_cap", g.vertex_cap}, {"tol", g.tol}};

    dimcert::io::StageTimer timer;
    const auto res = dimcert::classical_dimension_detailed(cm, membership_options(g));
    report.add_timing("dimension", timer.elapsed_ms());

    std::ostringstream text;
    text << std::setprecision(12);
    text << "classical dimension = " << res.dimension << '\n';
    json rejections = json::array();
    for (const auto& cert : res.rejections) {
        rejections.push_back(json{{"d", cert.dimension},
                                  {"separating_witness", separating_to_json(*cert.separating_witness, cert.dimension)}});
        text << "rejected d = " << cert.dimension << ":\n";
        describe_separation(text, *cert.separating_witness, cert.dimension);
    }
    report.results = json{{"d", res.dimension}, {"rejections", std::move(rejections)}};
    return emit(g, report, text.str(), 0);
}

int cmd_witness_eval(const GlobalOpts& g, const std::string& spec, const std::string& input) {
    const dimcert::Witness w = dimcert::io::load_witness(spec);
    const json raw = dimcert::io::load_json_file(input);
    const dimcert::CorrelationMatrix cm = correlations_from_any(raw, input);

    dimcert::io::RunReport report;
    report.command = "witness eval";
    report.inputs = json{{"witness", dimcert::io::witness_to_json(w)}, {"input", raw}};

    const double value = dimcert::evaluate(w, cm);
    report.results = json{{"value", value}};
    std::ostringstream text;
    text << std::setprecision(12) << "value = " << value << '\n';
    return emit(g, report, text.str(), 0);
}

int cmd_witness_cmax(const GlobalOpts& g, const std::string& spec, int d) {
    const dimcert::Witness w = dimcert::io::load_witness(spec);

    dimcert::io::RunReport report;
    report.command = "witness classical-max";
    report.inputs = json{{"witness", dimcert::io::witness_to_json(w)},
                         {"d", d},
                         {"vertex_cap", g.vertex_cap}};

    dimcert::io::StageTimer timer;
    const double value = dimcert::classical_max(w, d, membership_options(g));
    report.add_timing("classical_max", timer.elapsed_ms());

    report.results = json{{"d", d}, {"value", value}, {"provenance", "exact vertex enumeration"}};
    std::ostringstream text;
    text << std::setprecision(12) << "C_" << d << " = " << value << " (exact vertex enumeration)\n";
    return emit(g, report, text.str(), 0);
}

int cmd_witness_seesaw(const GlobalOpts& g, const std::string& spec, int d) {
    const dimcert::Witness w = dimcert::io::load_witness(spec);

    dimcert::io::RunReport report;
    report.command = "witness quantum-seesaw";
    report.inputs = json{{"witness", dimcert::io::witness_to_json(w)},
                         {"d", d},
                         {"seed", g.seed},
                         {"restarts", g.restarts},
                         {"tol", g.tol}};

    dimcert::io::StageTimer timer;
    const auto res = dimcert::seesaw_maximize(w, d, seesaw_options(g));
    report.add_timing("seesaw", timer.elapsed_ms());

    report.results = json{{"d", d},
                          {"value", res.value},
                          {"best_restart", res.best_restart},
                          {"provenance", "see-saw lower bound"},
                          {"strategy", dimcert::io::quantum_strategy_to_json(res.strategy)}};
    std::ostringstream text;
    text << std::setprecision(12) << "Q_" << d << " >= " << res.value
         << " (see-saw lower bound, best restart " << res.best_restart << ")\n";
    return emit(g, report, text.str(), 0);
}

json equalities_to_json(const std::vector<dimcert::dd::HullEquality>& eqs) {
    json out = json::array();
    for (const auto& eq : eqs) {
        json coeffs = json::array();
        for (const auto& c : eq.coeffs) coeffs.push_back(c.str());
        out.push_back(json{{"coeffs", std::move(coeffs)}, {"rhs", eq.rhs.str()}});
    }
    return out;
}

int cmd_facets(const GlobalOpts& g, int n, int m, int d, int max_entries,
               unsigned long long max_vertices) {
    const dimcert::Scenario sc(n, m);
    dimcert::FacetOptions fopts;
    fopts.max_entries = max_entries;
    fopts.max_vertices = max_vertices;
    fopts.vertex_cap = g.vertex_cap;

    dimcert::io::RunReport report;
    report.command = "facets";
    report.inputs = json{{"scenario", dimcert::io::scenario_to_json(sc)},
                         {"d", d},
                         {"max_entries", max_entries},
                         {"max_vertices", max_vertices}};

    dimcert::io::StageTimer timer;
    auto fe = dimcert::enumerate_facets(sc, d, fopts);
    const auto classes = dimcert::classify_facets(fe.facets, sc);
    report.add_timing("enumerate_facets", timer.elapsed_ms());

    json class_list = json::array();
    for (const auto& cls : classes) {
        class_list.push_back(json{{"name", cls.name},
                                  {"size", cls.members.size()},
                                  {"bound", cls.bound},
                                  {"representative", dimcert::io::facet_to_json(fe.facets[cls.representative])}});
    }
    report.results = json{{"scenario", dimcert::io::scenario_to_json(sc)},
                          {"d", d},
                          {"full_dimensional", fe.full_dimensional},
                          {"polytope_dimension", fe.polytope_dimension},
                          {"affine_hull", equalities_to_json(fe.affine_hull)},
                          {"n_facets", fe.facets.size()},
                          {"n_classes", classes.size()},
                          {"classes", std::move(class_list)},
                          {"facets", dimcert::io::facet_list_to_json(fe)}};

    std::ostringstream text;
    text << std::setprecision(12);
    text << "scenario " << sc.str() << ", d = " << d << ": polytope dimension "
         << fe.polytope_dimension;
    if (fe.full_dimensional)
        text << " (full-dimensional)\n";
    else
        text << " (degenerate: " << fe.affine_hull.size()
             << " affine-hull equalities; facets are relative to the hull)\n";
    text << fe.facets.size() << " facets in " << classes.size() << " symmetry classes\n";
    for (const auto& cls : classes) {
        const auto& rep = fe.facets[cls.representative];
        text << "class " << cls.name << ": " << cls.members.size() << " facets, bound "
             << cls.bound << ", " << rep.saturating_count << " saturating vertices, representative:\n"
             << format_matrix(rep.witness.coeffs, sc.n_preparations, sc.n_measurements, "    ");
    }
    return emit(g, report, text.str(), 0);
}

int cmd_table1(const GlobalOpts& g, const std::string& only) {
    const bool classical_cells = only.empty() || only == "classical";
    const bool quantum_cells = only.empty() || only == "quantum";

    dimcert::io::RunReport report;
    report.command = "table1";
    report.inputs = json{{"only", only.empty() ? json() : json(only)},
                         {"seed", g.seed},
                         {"restarts", g.restarts},
                         {"tol", g.tol}};

    dimcert::io::StageTimer timer;
    const auto cells = dimcert::compute_table1(classical_cells, quantum_cells, seesaw_options(g));
    report.add_timing("table1", timer.elapsed_ms());

    std::ostringstream text;
    text << std::setprecision(12);
    bool all_pass = true;
    json cell_list = json::array();
    for (const auto& cell : cells) {
        all_pass = all_pass && cell.pass;
        cell_list.push_back(json{{"witness", cell.witness},
                                 {"label", cell.label},
                                 {"d", cell.d},
                                 {"expected", cell.expected},
                                 {"computed", cell.computed},
                                 {"tolerance", cell.tolerance},
                                 {"pass", cell.pass},
                                 {"provenance", cell.quantum ? "see-saw lower bound"
                                                             : "exact vertex enumeration"}});
        text << cell.witness << "  " << cell.label << " = " << cell.computed << " (expected "
             << cell.expected;
        if (cell.tolerance > 0.0)
            text << ", tol " << cell.tolerance;
        else
            text << ", exact";
        text << ") " << (cell.pass ? "PASS" : "FAIL") << '\n';
    }
    text << (all_pass ? "all cells pass" : "some cells FAILED") << '\n';
    report.results = json{{"cells", std::move(cell_list)}, {"all_pass", all_pass}};
    return emit(g, report, text.str(), all_pass ? 0 : 1);
}

int cmd_simulate(const GlobalOpts& g, const std::string& strategy_path, const std::string& out_path,
                 double noise) {
    const json raw = dimcert::io::load_json_file(strategy_path);
    const dimcert::io::AnyStrategy strategy = dimcert::io::strategy_from_json(raw);

    dimcert::io::RunReport report;
    report.command = "simulate";
    report.inputs = json{{"strategy", raw}, {"noise", noise}};

    dimcert::io::StageTimer timer;
    dimcert::CorrelationMatrix cm = std::visit(
        [](const auto& s) -> dimcert::CorrelationMatrix {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, dimcert::ClassicalStrategy>)
                return dimcert::simulate_classical(s);
            else if constexpr (std::is_same_v<T, dimcert::QuantumStrategy>)
                return dimcert::correlations_from_quantum(s);
            else
                return dimcert::bloch_correlations(s);
        },
        strategy);
    cm = dimcert::apply_white_noise(cm, noise);
    report.add_timing("simulate", timer.elapsed_ms());

    const json corr = dimcert::io::correlations_to_json(cm);
    dimcert::io::write_json_file(out_path, corr);
    report.results = json{{"output", out_path}, {"correlations", corr}};

    std::ostringstream text;
    text << "wrote " << out_path << " (scenario " << cm.scenario.str() << ")\n"
         << format_matrix(cm.e, cm.scenario.n_preparations, cm.scenario.n_measurements, "  ");
    return emit(g, report, text.str(), 0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension certification for prepare-and-measure correlations"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for randomized searches")
        ->envname("DIMCERT_SEED")
        ->capture_default_str();
    app.add_option("--restarts", g.restarts, "restart count for randomized searches")
        ->envname("DIMCERT_RESTARTS")
        ->capture_default_str();
    app.add_option("--tol", g.tol,
                   "numeric tolerance override (0 keeps per-module defaults: LP 1e-9, see-saw 1e-10)")
        ->envname("DIMCERT_TOL")
        ->capture_default_str();
    app.add_option("--vertex-cap", g.vertex_cap, "refuse enumerations beyond this many vertices")
        ->envname("DIMCERT_VERTEX_CAP")
        ->capture_default_str();
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("DIMCERT_FORMAT")
        ->capture_default_str();

    std::string member_input;
    int member_d = 0;
    auto* member = app.add_subcommand("member", "test d-dimensional classical realizability");
    member->fallthrough();
    member->add_option("input", member_input, "correlation or probability JSON file")->required();
    member->add_option("--d", member_d, "classical dimension to test")->required();

    std::string dim_input;
    auto* dimension =
        app.add_subcommand("dimension", "smallest classical dimension reproducing the data");
    dimension->fallthrough();
    dimension->add_option("input", dim_input, "correlation or probability JSON file")->required();

    std::string wspec;
    auto* witness = app.add_subcommand("witness", "evaluate or bound a linear witness");
    witness->fallthrough();
    witness->add_option("spec", wspec, "witness JSON file or IN:<N> shorthand")->required();
    witness->require_subcommand(1);
    std::string eval_input;
    auto* weval = witness->add_subcommand("eval", "witness value on a correlation file");
    weval->fallthrough();
    weval->add_option("--input", eval_input, "correlation or probability JSON file")->required();
    int wcm_d = 0;
    auto* wcmax = witness->add_subcommand("classical-max", "exact classical bound C_d");
    wcmax->fallthrough();
    wcmax->add_option("--d", wcm_d, "classical dimension")->required();
    int wss_d = 0;
    auto* wss = witness->add_subcommand("quantum-seesaw", "see-saw lower bound on Q_d");
    wss->fallthrough();
    wss->add_option("--d", wss_d, "Hilbert-space dimension")->required();

    int fn = 0, fm = 0, fd = 0;
    int fmax_entries = dimcert::FacetOptions{}.max_entries;
    unsigned long long fmax_vertices = dimcert::FacetOptions{}.max_vertices;
    auto* facets = app.add_subcommand("facets", "enumerate and classify all facets");
    facets->fallthrough();
    facets->add_option("N", fn, "number of preparations")->required();
    facets->add_option("m", fm, "number of measurements")->required();
    facets->add_option("d", fd, "classical dimension")->required();
    facets->add_option("--max-entries", fmax_entries, "guard on N*m for hull conversion")
        ->capture_default_str();
    facets->add_option("--max-vertices", fmax_vertices, "guard on the vertex count for hull conversion")
        ->capture_default_str();

    std::string only;
    auto* table1 = app.add_subcommand("table1", "reproduce the I_3/I_4 bound table");
    table1->fallthrough();
    table1->add_option("--only", only, "restrict to one half of the table")
        ->check(CLI::IsMember({"classical", "quantum"}));

    std::string sim_strategy, sim_out;
    double sim_noise = 1.0;
    auto* simulate = app.add_subcommand("simulate", "correlations of a stored strategy");
    simulate->fallthrough();
    simulate->add_option("strategy", sim_strategy, "strategy JSON file")->required();
    simulate->add_option("output", sim_out, "correlation JSON file to write")->required();
    simulate->add_option("--noise", sim_noise, "visibility v: E -> v*E")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*member) return cmd_member(g, member_input, member_d);
        if (*dimension) return cmd_dimension(g, dim_input);
        if (*witness) {
            if (*weval) return cmd_witness_eval(g, wspec, eval_input);
            if (*wcmax) return cmd_witness_cmax(g, wspec, wcm_d);
            return cmd_witness_seesaw(g, wspec, wss_d);
        }
        if (*facets) return cmd_facets(g, fn, fm, fd, fmax_entries, fmax_vertices);
        if (*table1) return cmd_table1(g, only);
        return cmd_simulate(g, sim_strategy, sim_out, sim_noise);
    } catch (const dimcert::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const dimcert::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const dimcert::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
