#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimcert/cmatrix.hpp"
#include "dimcert/parallel.hpp"
#include "dimcert/scenario.hpp"
#include "dimcert/witness.hpp"

namespace dimcert {

/// d-dimensional quantum strategy: density matrices rho_x and +/-1-spectrum
/// observables O_y.
struct QuantumStrategy {
    int dimension = 0;
    std::vector<CMatrix> states;      // N density matrices
    std::vector<CMatrix> observables; // m observables

    Scenario scenario() const;
    /// Hermiticity/trace within tol_herm, eigenvalues >= -tol_herm,
    /// O^2 = identity within tol_involution.
    void validate(double tol_herm = 1e-10, double tol_involution = 1e-8) const;
};

/// Qubit strategy in Bloch form: states r_x (|r| <= 1), measurements as unit
/// vectors s_y.
struct BlochStrategy {
    std::vector<std::array<double, 3>> state_vectors;
    std::vector<std::array<double, 3>> measurement_vectors;

    Scenario scenario() const;
    void validate(double tol = 1e-12) const;
};

/// E_xy = Re tr(rho_x O_y); the imaginary residue must stay below 1e-10.
CorrelationMatrix correlations_from_quantum(const QuantumStrategy& qs);

/// E_xy = r_x . s_y.
CorrelationMatrix bloch_correlations(const BlochStrategy& bs);

/// The explicit 2-dimensional strategy rho = (1 + r.sigma)/2, O = s.sigma.
QuantumStrategy lift(const BlochStrategy& bs);

/// Qubit configuration attaining the maximal I_3 value 1 + 2*sqrt(2):
/// orthonormal r_1, r_2; s_{1,2} = (r_1 +/- r_2)/sqrt(2); r_3 = -(r_1 + r_2)/sqrt(2).
BlochStrategy optimal_qubit_I3();

struct SeesawOptions {
    int restarts = 50;
    double tol = 1e-10;
    int max_iterations = 1000;
    std::uint64_t seed = 0;
    ExecPolicy policy = ExecPolicy::Parallel;
};

struct SeesawRestartTrace {
    int restart = 0;
    std::vector<double> values; // value after each full sweep; non-decreasing
    bool converged = false;
    bool failed = false; // eigensolver breakdown; restart skipped
    std::string failure;
};

struct SeesawResult {
    double value = 0.0;       // best over restarts; a lower bound on Q_d
    QuantumStrategy strategy; // strategy attaining `value`
    int best_restart = -1;
    std::vector<SeesawRestartTrace> traces;
};

/// Alternating maximization of sum w_xy tr(rho_x O_y) at fixed Hilbert-space
/// dimension d.  Deterministic for fixed (seed, restarts) under any
/// scheduling: the merge takes the max value, ties to the lowest restart
/// index.  The result is a lower bound on Q_d, never a certified maximum.
SeesawResult seesaw_maximize(const Witness& w, int d, const SeesawOptions& opts = {});

/// At the algebraic maximum all preparations must be pairwise orthogonal;
/// checks |tr(rho_s rho_t)| <= tol for s != t.  Requires the strategy to
/// actually achieve evaluate >= algebraic_max - tol.
bool verify_orthogonality_at_algebraic_max(const Witness& w, const QuantumStrategy& qs, double tol);

struct J3SearchResult {
    double max_found = 0.0;
    BlochStrategy strategy;
    int best_restart = -1;
};

/// Local rotation-descent maximization of the J_3 expression over qubit
/// Bloch strategies.  Restart 0 starts from `init` when given; all others
/// are random.  Deterministic for fixed (seed, restarts).
J3SearchResult j3_search(int restarts, std::uint64_t seed, const std::optional<BlochStrategy>& init = {},
                         ExecPolicy policy = ExecPolicy::Parallel);

} // namespace dimcert
