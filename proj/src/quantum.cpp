#include "dimcert/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dimcert/errors.hpp"
#include "dimcert/rng.hpp"

namespace dimcert {

namespace {

constexpr int kMaxSeesawDimension = 16; // eigensolver guard
constexpr double kCorrelatorClampTol = 1e-9;

double clamp_correlator(double e, const std::string& where) {
    if (std::abs(e) > 1.0 + kCorrelatorClampTol)
        throw ValidationError(where + ": correlator " + std::to_string(e) + " is out of range");
    return std::clamp(e, -1.0, 1.0);
}

using Vec3 = std::array<double, 3>;

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 scaled3(const Vec3& a, double f) { return {a[0] * f, a[1] * f, a[2] * f}; }

Vec3 unit3(const Vec3& a) {
    const double n = norm3(a);
    if (n == 0.0) return {0.0, 0.0, 1.0};
    return scaled3(a, 1.0 / n);
}

} // namespace

Scenario QuantumStrategy::scenario() const {
    return Scenario(static_cast<int>(states.size()), static_cast<int>(observables.size()));
}

void QuantumStrategy::validate(double tol_herm, double tol_involution) const {
    if (dimension < 1) throw ValidationError("quantum strategy: dimension must be >= 1");
    if (states.empty() || observables.empty())
        throw ValidationError("quantum strategy: needs at least one state and one observable");

    for (std::size_t x = 0; x < states.size(); ++x) {
        const auto& rho = states[x];
        const std::string name = "state " + std::to_string(x + 1);
        if (rho.n != dimension) throw ValidationError(name + ": size differs from the declared dimension");
        if (hermiticity_defect(rho) > tol_herm) throw ValidationError(name + ": not Hermitian");
        if (std::abs(trace(rho) - Complex(1.0)) > tol_herm) throw ValidationError(name + ": trace is not 1");
        const auto es = hermitian_eigensystem(rho);
        if (es.values.front() < -tol_herm)
            throw ValidationError(name + ": negative eigenvalue " + std::to_string(es.values.front()));
    }
    for (std::size_t y = 0; y < observables.size(); ++y) {
        const auto& o = observables[y];
        const std::string name = "observable " + std::to_string(y + 1);
        if (o.n != dimension) throw ValidationError(name + ": size differs from the declared dimension");
        if (hermiticity_defect(o) > tol_herm) throw ValidationError(name + ": not Hermitian");
        if (max_abs_diff(o * o, CMatrix::identity(dimension)) > tol_involution)
            throw ValidationError(name + ": spectrum is not +/-1 (O^2 differs from the identity)");
    }
}

Scenario BlochStrategy::scenario() const {
    return Scenario(static_cast<int>(state_vectors.size()), static_cast<int>(measurement_vectors.size()));
}

void BlochStrategy::validate(double tol) const {
    if (state_vectors.empty() || measurement_vectors.empty())
        throw ValidationError("Bloch strategy: needs at least one state and one measurement");
    for (std::size_t x = 0; x < state_vectors.size(); ++x)
        if (norm3(state_vectors[x]) > 1.0 + tol)
            throw ValidationError("Bloch strategy: state vector " + std::to_string(x + 1) +
                                  " has norm above 1");
    for (std::size_t y = 0; y < measurement_vectors.size(); ++y)
        if (std::abs(norm3(measurement_vectors[y]) - 1.0) > tol)
            throw ValidationError("Bloch strategy: measurement vector " + std::to_string(y + 1) +
                                  " is not a unit vector");
}

CorrelationMatrix correlations_from_quantum(const QuantumStrategy& qs) {
    qs.validate();
    const Scenario sc = qs.scenario();
    std::vector<double> e(static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements);
    for (int x = 0; x < sc.n_preparations; ++x)
        for (int y = 0; y < sc.n_measurements; ++y) {
            const Complex t = trace_product(qs.states[static_cast<std::size_t>(x)],
                                            qs.observables[static_cast<std::size_t>(y)]);
            if (std::abs(t.imag()) > 1e-10)
                throw ValidationError("quantum correlations: tr(rho O) has imaginary residue " +
                                      std::to_string(t.imag()));
            e[static_cast<std::size_t>(x) * sc.n_measurements + y] =
                clamp_correlator(t.real(), "quantum correlations");
        }
    return CorrelationMatrix(sc, std::move(e));
}

CorrelationMatrix bloch_correlations(const BlochStrategy& bs) {
    bs.validate();
    const Scenario sc = bs.scenario();
    std::vector<double> e(static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements);
    for (int x = 0; x < sc.n_preparations; ++x)
        for (int y = 0; y < sc.n_measurements; ++y)
            e[static_cast<std::size_t>(x) * sc.n_measurements + y] =
                clamp_correlator(dot3(bs.state_vectors[static_cast<std::size_t>(x)],
                                      bs.measurement_vectors[static_cast<std::size_t>(y)]),
                                 "Bloch correlations");
    return CorrelationMatrix(sc, std::move(e));
}

QuantumStrategy lift(const BlochStrategy& bs) {
    bs.validate();
    auto pauli_combo = [](const Vec3& v) {
        // v . sigma for the standard Pauli triple.
        CMatrix out(2);
        out(0, 0) = Complex(v[2], 0.0);
        out(0, 1) = Complex(v[0], -v[1]);
        out(1, 0) = Complex(v[0], v[1]);
        out(1, 1) = Complex(-v[2], 0.0);
        return out;
    };

    QuantumStrategy qs;
    qs.dimension = 2;
    for (const auto& r : bs.state_vectors) {
        CMatrix rho = pauli_combo(r);
        for (auto& v : rho.a) v *= 0.5;
        rho(0, 0) += 0.5;
        rho(1, 1) += 0.5;
        qs.states.push_back(std::move(rho));
    }
    for (const auto& s : bs.measurement_vectors) qs.observables.push_back(pauli_combo(s));
    return qs;
}

BlochStrategy optimal_qubit_I3() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    BlochStrategy bs;
    bs.state_vectors = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {-inv_sqrt2, -inv_sqrt2, 0.0}};
    bs.measurement_vectors = {{inv_sqrt2, inv_sqrt2, 0.0}, {inv_sqrt2, -inv_sqrt2, 0.0}};
    return bs;
}

namespace {

/// Projector onto a top eigenvector (ties resolved by the eigensolver's
/// deterministic ordering).
CMatrix top_eigen_projector(const CMatrix& h) {
    const auto es = hermitian_eigensystem(h);
    std::vector<Complex> v(static_cast<std::size_t>(h.n));
    for (int i = 0; i < h.n; ++i) v[static_cast<std::size_t>(i)] = es.vectors(i, h.n - 1);
    return projector(v);
}

/// Spectral sign with zero eigenvalues mapped to +1.
CMatrix spectral_sign(const CMatrix& h) {
    const auto es = hermitian_eigensystem(h);
    CMatrix out(h.n);
    for (int k = 0; k < h.n; ++k) {
        const double s = es.values[static_cast<std::size_t>(k)] < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < h.n; ++i)
            for (int j = 0; j < h.n; ++j)
                out(i, j) += s * es.vectors(i, k) * std::conj(es.vectors(j, k));
    }
    return out;
}

CMatrix random_pure_state(SplitMix64& rng, int d) {
    std::vector<Complex> v(static_cast<std::size_t>(d));
    double norm = 0.0;
    for (auto& c : v) {
        c = Complex(rng.gaussian(), rng.gaussian());
        norm += std::norm(c);
    }
    norm = std::sqrt(norm);
    for (auto& c : v) c /= norm;
    return projector(v);
}

CMatrix random_observable(SplitMix64& rng, int d) {
    CMatrix h(d);
    for (int i = 0; i < d; ++i) {
        h(i, i) = Complex(rng.gaussian(), 0.0);
        for (int j = i + 1; j < d; ++j) {
            h(i, j) = Complex(rng.gaussian(), rng.gaussian());
            h(j, i) = std::conj(h(i, j));
        }
    }
    return spectral_sign(h);
}

double seesaw_value(const Witness& w, const QuantumStrategy& qs) {
    double v = 0.0;
    for (std::size_t x = 0; x < qs.states.size(); ++x)
        for (std::size_t y = 0; y < qs.observables.size(); ++y) {
            const double wxy = w.coeffs[x * qs.observables.size() + y];
            if (wxy == 0.0) continue;
            v += wxy * trace_product(qs.states[x], qs.observables[y]).real();
        }
    return v;
}

struct RestartOutcome {
    double value = -std::numeric_limits<double>::infinity();
    QuantumStrategy strategy;
    SeesawRestartTrace trace;
};

RestartOutcome run_seesaw_restart(const Witness& w, int d, int restart, const SeesawOptions& opts) {
    const int N = w.scenario.n_preparations, m = w.scenario.n_measurements;
    SplitMix64 rng(derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));

    RestartOutcome out;
    out.trace.restart = restart;
    try {
        QuantumStrategy qs;
        qs.dimension = d;
        for (int x = 0; x < N; ++x) qs.states.push_back(random_pure_state(rng, d));
        for (int y = 0; y < m; ++y) qs.observables.push_back(random_observable(rng, d));

        double prev = -std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < opts.max_iterations; ++iter) {
            // States half-step: rho_x <- top eigenprojector of sum_y w_xy O_y.
            for (int x = 0; x < N; ++x) {
                CMatrix g(d);
                for (int y = 0; y < m; ++y) {
                    const double wxy = w.at(x, y);
                    if (wxy == 0.0) continue;
                    for (std::size_t k = 0; k < g.a.size(); ++k)
                        g.a[k] += wxy * qs.observables[static_cast<std::size_t>(y)].a[k];
                }
                qs.states[static_cast<std::size_t>(x)] = top_eigen_projector(g);
            }
            // Observables half-step: O_y <- sign(sum_x w_xy rho_x).
            for (int y = 0; y < m; ++y) {
                CMatrix h(d);
                for (int x = 0; x < N; ++x) {
                    const double wxy = w.at(x, y);
                    if (wxy == 0.0) continue;
                    for (std::size_t k = 0; k < h.a.size(); ++k)
                        h.a[k] += wxy * qs.states[static_cast<std::size_t>(x)].a[k];
                }
                qs.observables[static_cast<std::size_t>(y)] = spectral_sign(h);
            }

            const double value = seesaw_value(w, qs);
            out.trace.values.push_back(value);
            if (value - prev < opts.tol) {
                out.trace.converged = true;
                break;
            }
            prev = value;
        }
        out.value = out.trace.values.empty() ? seesaw_value(w, qs) : out.trace.values.back();
        out.strategy = std::move(qs);
    } catch (const std::exception& e) {
        out.trace.failed = true;
        out.trace.failure = e.what();
        out.value = -std::numeric_limits<double>::infinity();
    }
    return out;
}

} // namespace

SeesawResult seesaw_maximize(const Witness& w, int d, const SeesawOptions& opts) {
    w.validate();
    if (d < 1 || d > kMaxSeesawDimension)
        throw ValidationError("see-saw: dimension " + std::to_string(d) + " outside [1, " +
                              std::to_string(kMaxSeesawDimension) + "]");
    if (opts.restarts < 1) throw ValidationError("see-saw: restarts must be >= 1");
    if (!(opts.tol > 0.0)) throw ValidationError("see-saw: tol must be > 0");

    std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(opts.restarts));
    if (opts.policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int r = 0; r < opts.restarts; ++r)
            outcomes[static_cast<std::size_t>(r)] = run_seesaw_restart(w, d, r, opts);
    } else {
        for (int r = 0; r < opts.restarts; ++r)
            outcomes[static_cast<std::size_t>(r)] = run_seesaw_restart(w, d, r, opts);
    }

    SeesawResult result;
    for (int r = 0; r < opts.restarts; ++r) {
        auto& oc = outcomes[static_cast<std::size_t>(r)];
        if (!oc.trace.failed && (result.best_restart < 0 || oc.value > result.value)) {
            result.value = oc.value;
            result.strategy = std::move(oc.strategy);
            result.best_restart = r;
        }
        result.traces.push_back(std::move(oc.trace));
    }
    if (result.best_restart < 0) {
        std::string first;
        for (const auto& t : result.traces)
            if (t.failed) {
                first = t.failure;
                break;
            }
        throw SolverError("see-saw: every restart failed; first failure: " + first);
    }
    return result;
}

bool verify_orthogonality_at_algebraic_max(const Witness& w, const QuantumStrategy& qs, double tol) {
    w.validate();
    if (!(tol > 0.0)) throw ValidationError("orthogonality check: tol must be > 0");
    if (!(qs.scenario() == w.scenario))
        throw ValidationError("orthogonality check: strategy scenario " + qs.scenario().str() +
                              " differs from witness scenario " + w.scenario.str());
    const double value = evaluate(w, correlations_from_quantum(qs));
    const double amax = algebraic_max(w);
    if (value < amax - tol)
        throw ValidationError("orthogonality check: strategy reaches " + std::to_string(value) +
                              ", below the algebraic maximum " + std::to_string(amax) +
                              " - tol; the check is meaningful only at the maximum");
    for (std::size_t s = 0; s < qs.states.size(); ++s)
        for (std::size_t t = s + 1; t < qs.states.size(); ++t)
            if (std::abs(trace_product(qs.states[s], qs.states[t])) > tol) return false;
    return true;
}

namespace {

double j3_objective(const BlochStrategy& bs) { return evaluate_J3(bloch_correlations(bs)); }

BlochStrategy random_j3_start(SplitMix64& rng) {
    BlochStrategy bs;
    auto random_unit = [&rng] {
        return unit3(Vec3{rng.gaussian(), rng.gaussian(), rng.gaussian()});
    };
    for (int x = 0; x < 3; ++x) bs.state_vectors.push_back(random_unit());
    for (int y = 0; y < 2; ++y) bs.measurement_vectors.push_back(random_unit());
    return bs;
}

/// Coordinate-wise rotation descent: rotate one unit vector at a time in a
/// tangent direction, halving the step when nothing improves.
double j3_descend(BlochStrategy& bs) {
    double value = j3_objective(bs);
    std::vector<Vec3*> vars;
    for (auto& r : bs.state_vectors) vars.push_back(&r);
    for (auto& s : bs.measurement_vectors) vars.push_back(&s);

    double step = 0.5;
    while (step > 1e-9) {
        bool improved = false;
        for (Vec3* v : vars) {
            // Tangent frame at *v.
            const Vec3 helper = std::abs((*v)[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
            const Vec3 t1 = unit3(cross3(*v, helper));
            const Vec3 t2 = cross3(*v, t1);
            const double c = std::cos(step), s = std::sin(step);
            for (const Vec3& t : {t1, t2})
                for (double sign : {1.0, -1.0}) {
                    const Vec3 saved = *v;
                    *v = unit3(Vec3{c * saved[0] + sign * s * t[0], c * saved[1] + sign * s * t[1],
                                    c * saved[2] + sign * s * t[2]});
                    const double cand = j3_objective(bs);
                    if (cand > value + 1e-15) {
                        value = cand;
                        improved = true;
                    } else {
                        *v = saved;
                    }
                }
        }
        if (!improved) step *= 0.5;
    }
    return value;
}

} // namespace

J3SearchResult j3_search(int restarts, std::uint64_t seed, const std::optional<BlochStrategy>& init,
                         ExecPolicy policy) {
    if (restarts < 1) throw ValidationError("J3 search: restarts must be >= 1");
    if (init) {
        init->validate();
        if (!(init->scenario() == Scenario(3, 2)))
            throw ValidationError("J3 search: the initial strategy must live on " + Scenario(3, 2).str());
    }

    std::vector<double> values(static_cast<std::size_t>(restarts));
    std::vector<BlochStrategy> strategies(static_cast<std::size_t>(restarts));

    auto run_one = [&](int r) {
        BlochStrategy bs;
        if (r == 0 && init) {
            bs = *init;
            for (auto& v : bs.state_vectors) v = unit3(v);
            for (auto& v : bs.measurement_vectors) v = unit3(v);
        } else {
            SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            bs = random_j3_start(rng);
        }
        values[static_cast<std::size_t>(r)] = j3_descend(bs);
        strategies[static_cast<std::size_t>(r)] = std::move(bs);
    };

    if (policy == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (int r = 0; r < restarts; ++r) run_one(r);
    } else {
        for (int r = 0; r < restarts; ++r) run_one(r);
    }

    J3SearchResult out;
    out.best_restart = 0;
    out.max_found = values[0];
    for (int r = 1; r < restarts; ++r)
        if (values[static_cast<std::size_t>(r)] > out.max_found) {
            out.max_found = values[static_cast<std::size_t>(r)];
            out.best_restart = r;
        }
    out.strategy = strategies[static_cast<std::size_t>(out.best_restart)];
    return out;
}

} // namespace dimcert
