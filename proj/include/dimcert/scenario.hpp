#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dimcert/errors.hpp"

namespace dimcert {

/// A prepare-and-measure scenario: N labelled preparations, m binary-outcome
/// measurements.  Outcomes are +1/-1 throughout.
struct Scenario {
    int n_preparations = 0; // N
    int n_measurements = 0; // m
    static constexpr int n_outcomes = 2;

    Scenario() = default;
    Scenario(int n, int m) : n_preparations(n), n_measurements(m) { validate(); }

    void validate() const;
    bool operator==(const Scenario&) const = default;
    std::string str() const;
};

/// P(b|x,y) for b in {+1,-1}.  Stored normalized: p_minus(x,y) = 1 - p_plus(x,y).
struct ProbabilityTable {
    Scenario scenario;
    std::vector<double> p_plus; // row-major N x m, probability of outcome +1

    double plus(int x, int y) const { return p_plus[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }
    double minus(int x, int y) const { return 1.0 - plus(x, y); }

    /// Builds from raw (p_plus, p_minus) pairs; enforces normalization within
    /// `tol` per (x,y) and re-normalizes exactly.
    static ProbabilityTable from_raw(const Scenario& sc,
                                     const std::vector<double>& plus,
                                     const std::vector<double>& minus,
                                     double tol = 1e-12);
};

/// Matrix of correlators E_xy = P(+1|x,y) - P(-1|x,y), entries in [-1,1].
struct CorrelationMatrix {
    Scenario scenario;
    std::vector<double> e; // row-major N x m

    CorrelationMatrix() = default;
    CorrelationMatrix(const Scenario& sc, std::vector<double> entries);

    double at(int x, int y) const { return e[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }
    double& at(int x, int y) { return e[static_cast<std::size_t>(x) * scenario.n_measurements + y]; }

    void validate() const;
};

/// Classical d-dimensional strategy: a shared-randomness mixture of
/// deterministic components.  Each component encodes the preparation label
/// into a message in {0,...,d-1} and decodes (message, measurement) to +1/-1.
struct ClassicalStrategy {
    struct Component {
        std::vector<int> encoding;     // size N, values in [0, d)
        std::vector<int8_t> decoding;  // row-major d x m, values +1/-1
    };

    Scenario scenario;
    int dimension = 0; // d
    std::vector<double> weights;
    std::vector<Component> components;

    void validate(double tol = 1e-12) const;
};

CorrelationMatrix correlations_from_probabilities(const ProbabilityTable& pt);
ProbabilityTable probabilities_from_correlations(const CorrelationMatrix& cm);
CorrelationMatrix simulate_classical(const ClassicalStrategy& strategy);
CorrelationMatrix apply_white_noise(const CorrelationMatrix& cm, double visibility);

} // namespace dimcert
