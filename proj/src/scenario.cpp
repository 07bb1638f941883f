#include "dimcert/scenario.hpp"

#include <cmath>
#include <sstream>

namespace dimcert {

namespace {

std::string entry_name(int x, int y) {
    // 1-based in diagnostics, matching the usual (x,y) labelling.
    std::ostringstream os;
    os << "(x=" << x + 1 << ", y=" << y + 1 << ")";
    return os.str();
}

} // namespace

void Scenario::validate() const {
    if (n_preparations < 1)
        throw ValidationError("scenario: n_preparations must be >= 1, got " + std::to_string(n_preparations));
    if (n_measurements < 1)
        throw ValidationError("scenario: n_measurements must be >= 1, got " + std::to_string(n_measurements));
}

std::string Scenario::str() const {
    return "(N=" + std::to_string(n_preparations) + ", m=" + std::to_string(n_measurements) + ")";
}

ProbabilityTable ProbabilityTable::from_raw(const Scenario& sc,
                                            const std::vector<double>& plus,
                                            const std::vector<double>& minus,
                                            double tol) {
    sc.validate();
    const std::size_t n = static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements;
    if (plus.size() != n || minus.size() != n)
        throw ValidationError("probability table: expected " + std::to_string(n) + " entries per outcome");
    ProbabilityTable pt;
    pt.scenario = sc;
    pt.p_plus.resize(n);
    for (int x = 0; x < sc.n_preparations; ++x) {
        for (int y = 0; y < sc.n_measurements; ++y) {
            const std::size_t i = static_cast<std::size_t>(x) * sc.n_measurements + y;
            const double a = plus[i], b = minus[i];
            if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
                throw ValidationError("probability table: entry outside [0,1] at " + entry_name(x, y));
            if (std::abs(a + b - 1.0) > tol)
                throw ValidationError("probability table: outcomes not normalized at " + entry_name(x, y) +
                                      " (sum = " + std::to_string(a + b) + ")");
            pt.p_plus[i] = (a + b == 1.0) ? a : a / (a + b);
        }
    }
    return pt;
}

CorrelationMatrix::CorrelationMatrix(const Scenario& sc, std::vector<double> entries)
    : scenario(sc), e(std::move(entries)) {
    validate();
}

void CorrelationMatrix::validate() const {
    scenario.validate();
    const std::size_t n = static_cast<std::size_t>(scenario.n_preparations) * scenario.n_measurements;
    if (e.size() != n)
        throw ValidationError("correlation matrix: expected " + std::to_string(n) + " entries, got " +
                              std::to_string(e.size()));
    for (int x = 0; x < scenario.n_preparations; ++x)
        for (int y = 0; y < scenario.n_measurements; ++y) {
            const double v = at(x, y);
            if (!(v >= -1.0 && v <= 1.0))
                throw ValidationError("correlation matrix: entry outside [-1,1] at " + entry_name(x, y) +
                                      " (value = " + std::to_string(v) + ")");
        }
}

void ClassicalStrategy::validate(double tol) const {
    scenario.validate();
    if (dimension < 1)
        throw ValidationError("classical strategy: dimension must be >= 1");
    if (weights.size() != components.size())
        throw ValidationError("classical strategy: " + std::to_string(weights.size()) + " weights for " +
                              std::to_string(components.size()) + " components");
    if (components.empty())
        throw ValidationError("classical strategy: no components");
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("classical strategy: negative component weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > tol)
        throw ValidationError("classical strategy: weights sum to " + std::to_string(sum) + ", expected 1");
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& comp = components[c];
        if (static_cast<int>(comp.encoding.size()) != scenario.n_preparations)
            throw ValidationError("classical strategy: component " + std::to_string(c) + " encoding size mismatch");
        for (int v : comp.encoding)
            if (v < 0 || v >= dimension)
                throw ValidationError("classical strategy: component " + std::to_string(c) +
                                      " encodes outside {1..d}");
        if (comp.decoding.size() != static_cast<std::size_t>(dimension) * scenario.n_measurements)
            throw ValidationError("classical strategy: component " + std::to_string(c) + " decoding size mismatch");
        for (int8_t s : comp.decoding)
            if (s != 1 && s != -1)
                throw ValidationError("classical strategy: component " + std::to_string(c) +
                                      " decoding value not +1/-1");
    }
}

CorrelationMatrix correlations_from_probabilities(const ProbabilityTable& pt) {
    pt.scenario.validate();
    const int N = pt.scenario.n_preparations, m = pt.scenario.n_measurements;
    std::vector<double> e(static_cast<std::size_t>(N) * m);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < m; ++y)
            e[static_cast<std::size_t>(x) * m + y] = pt.plus(x, y) - pt.minus(x, y);
    return CorrelationMatrix(pt.scenario, std::move(e));
}

ProbabilityTable probabilities_from_correlations(const CorrelationMatrix& cm) {
    cm.validate();
    const int N = cm.scenario.n_preparations, m = cm.scenario.n_measurements;
    ProbabilityTable pt;
    pt.scenario = cm.scenario;
    pt.p_plus.resize(static_cast<std::size_t>(N) * m);
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < m; ++y)
            pt.p_plus[static_cast<std::size_t>(x) * m + y] = (1.0 + cm.at(x, y)) / 2.0;
    return pt;
}

CorrelationMatrix simulate_classical(const ClassicalStrategy& strategy) {
    strategy.validate();
    const int N = strategy.scenario.n_preparations, m = strategy.scenario.n_measurements;
    std::vector<double> e(static_cast<std::size_t>(N) * m, 0.0);
    for (std::size_t c = 0; c < strategy.components.size(); ++c) {
        const auto& comp = strategy.components[c];
        const double w = strategy.weights[c];
        for (int x = 0; x < N; ++x) {
            const int msg = comp.encoding[x];
            for (int y = 0; y < m; ++y)
                e[static_cast<std::size_t>(x) * m + y] +=
                    w * comp.decoding[static_cast<std::size_t>(msg) * m + y];
        }
    }
    // Mixtures of +/-1 tables can overshoot by an ulp; pull back into range.
    for (double& v : e) v = std::min(1.0, std::max(-1.0, v));
    return CorrelationMatrix(strategy.scenario, std::move(e));
}

CorrelationMatrix apply_white_noise(const CorrelationMatrix& cm, double visibility) {
    cm.validate();
    if (!(visibility >= 0.0 && visibility <= 1.0))
        throw ValidationError("apply_white_noise: visibility must lie in [0,1], got " + std::to_string(visibility));
    CorrelationMatrix out = cm;
    for (double& v : out.e) v = v * visibility + 0.0; // + 0.0 normalizes -0
    return out;
}

} // namespace dimcert
