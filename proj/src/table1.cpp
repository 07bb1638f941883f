#include "dimcert/table1.hpp"

#include <cmath>

#include "dimcert/membership.hpp"
#include "dimcert/witness.hpp"

namespace dimcert {

namespace {

struct CellSpec {
    const char* label;
    bool quantum;
    int d;
    double expected;
    double tolerance;
};

void append_row(std::vector<Table1Cell>& out, const char* name, const Witness& w,
                const std::vector<CellSpec>& specs, bool classical_cells, bool quantum_cells,
                const SeesawOptions& opts) {
    for (const auto& spec : specs) {
        if (spec.quantum ? !quantum_cells : !classical_cells) continue;
        Table1Cell cell;
        cell.witness = name;
        cell.label = spec.label;
        cell.quantum = spec.quantum;
        cell.d = spec.d;
        cell.expected = spec.expected;
        cell.tolerance = spec.tolerance;
        if (spec.quantum) {
            cell.computed = seesaw_maximize(w, spec.d, opts).value;
            cell.pass = std::abs(cell.computed - cell.expected) <= cell.tolerance;
        } else {
            MembershipOptions mopts;
            mopts.policy = opts.policy;
            cell.computed = classical_max(w, spec.d, mopts);
            cell.pass = cell.computed == cell.expected;
        }
        out.push_back(std::move(cell));
    }
}

} // namespace

std::vector<Table1Cell> compute_table1(bool classical_cells, bool quantum_cells,
                                       const SeesawOptions& opts) {
    const double q2_i3 = 1.0 + 2.0 * std::sqrt(2.0);
    const std::vector<CellSpec> i3_specs = {
        {"C_2", false, 2, 3.0, 0.0}, {"Q_2", true, 2, q2_i3, 1e-6}, {"C_3", false, 3, 5.0, 0.0},
        {"Q_3", true, 3, 5.0, 1e-6}, {"C_4", false, 4, 5.0, 0.0},
    };
    const std::vector<CellSpec> i4_specs = {
        {"C_2", false, 2, 5.0, 0.0}, {"Q_2", true, 2, 6.0, 1e-6},    {"C_3", false, 3, 7.0, 0.0},
        {"Q_3", true, 3, 7.9689, 1e-3}, {"C_4", false, 4, 9.0, 0.0},
    };
    std::vector<Table1Cell> out;
    append_row(out, "I3", build_IN(3), i3_specs, classical_cells, quantum_cells, opts);
    append_row(out, "I4", build_IN(4), i4_specs, classical_cells, quantum_cells, opts);
    return out;
}

} // namespace dimcert
