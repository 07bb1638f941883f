#pragma once

#include <string>
#include <vector>

#include "dimcert/quantum.hpp"

namespace dimcert {

/// One cell of the reference bound table for I_3 and I_4.
struct Table1Cell {
    std::string witness; // "I3" or "I4"
    std::string label;   // "C_2", "Q_2", ...
    bool quantum = false;
    int d = 0;
    double expected = 0.0;
    double tolerance = 0.0; // 0 means exact equality required
    double computed = 0.0;
    bool pass = false;
};

/// Computes the reference table: classical cells by exact vertex
/// enumeration, quantum cells by see-saw.  Cells are ordered per witness as
/// C_2, Q_2, C_3, Q_3, C_4.
std::vector<Table1Cell> compute_table1(bool classical_cells, bool quantum_cells,
                                       const SeesawOptions& opts = {});

} // namespace dimcert
