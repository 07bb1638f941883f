#include "dimcert/membership.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "dimcert/simplex.hpp"
#include "dimcert/vertex_sweep.hpp"

namespace dimcert {

namespace {

constexpr std::int64_t kRationalizeMaxDen = 64;

void check_dimension(int d) {
    if (d < 1) throw ValidationError("dimension must be >= 1, got " + std::to_string(d));
}

void check_cap(const Scenario& sc, int d, unsigned long long cap) {
    const unsigned long long count = vertex_count(sc, d);
    if (count > cap)
        throw ResourceLimitError("vertex set of " + sc.str() + " at d = " + std::to_string(d) + " has " +
                                     std::to_string(count) + " vertices, above the cap " + std::to_string(cap),
                                 count, cap);
}

struct ScaledCoeffs {
    std::vector<BigInt> scaled; // coeffs[i] == scaled[i] / denom
    BigInt denom;               // > 0
    BigInt abs_sum;             // sum |scaled|, bounds every sweep partial sum
};

ScaledCoeffs scale_to_integers(const std::vector<Rational>& coeffs) {
    ScaledCoeffs out;
    out.denom = 1;
    for (const auto& c : coeffs) out.denom = lcm(out.denom, denominator(c));
    out.scaled.reserve(coeffs.size());
    out.abs_sum = 0;
    for (const auto& c : coeffs) {
        out.scaled.push_back(numerator(c) * (out.denom / denominator(c)));
        out.abs_sum += abs(out.scaled.back());
    }
    return out;
}

bool fits_int64(const BigInt& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

std::vector<std::int64_t> to_int64(const std::vector<BigInt>& v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.convert_to<std::int64_t>());
    return out;
}

/// Exact max of the scaled integer dot over vertex tuples, int64 fast path
/// when every partial sum provably fits.
BigInt max_scaled_dot(const Scenario& sc, int d, const ScaledCoeffs& sc_coeffs, ExecPolicy policy) {
    const auto space = sweep::make_tuple_space(sc, d);
    if (fits_int64(sc_coeffs.abs_sum)) {
        const auto lut = sweep::build_row_lut<std::int64_t>(sc, to_int64(sc_coeffs.scaled));
        return BigInt(sweep::max_dot_sweep<std::int64_t>(space, lut, policy).max_sum);
    }
    const auto lut = sweep::build_row_lut<BigInt>(sc, sc_coeffs.scaled);
    return sweep::max_dot_sweep<BigInt>(space, lut, policy).max_sum;
}

} // namespace

std::vector<Rational> witness_coeffs_exact(const Witness& w) {
    std::vector<Rational> out;
    out.reserve(w.coeffs.size());
    for (double c : w.coeffs) out.push_back(rational_from_double(c));
    return out;
}

Rational exact_dot(const std::vector<Rational>& coeffs, const std::vector<double>& values) {
    if (coeffs.size() != values.size())
        throw ValidationError("exact_dot: size mismatch " + std::to_string(coeffs.size()) + " vs " +
                              std::to_string(values.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * rational_from_double(values[i]);
    return s;
}

Rational classical_max_exact(const Witness& w, int d, const MembershipOptions& opts) {
    w.validate();
    check_dimension(d);
    check_cap(w.scenario, d, opts.vertex_cap);
    const auto sc_coeffs = scale_to_integers(witness_coeffs_exact(w));
    return Rational(max_scaled_dot(w.scenario, d, sc_coeffs, opts.policy), sc_coeffs.denom);
}

double classical_max(const Witness& w, int d, const MembershipOptions& opts) {
    return classical_max_exact(w, d, opts).convert_to<double>();
}

double classical_max_serial(const Witness& w, int d, const MembershipOptions& opts) {
    MembershipOptions serial = opts;
    serial.policy = ExecPolicy::Serial;
    return classical_max(w, d, serial);
}

WitnessSweepReport sweep_witness_exact(const std::vector<Rational>& coeffs, const Scenario& sc, int d,
                                       const Rational& bound, const MembershipOptions& opts) {
    sc.validate();
    check_dimension(d);
    const std::size_t M = static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements;
    if (coeffs.size() != M)
        throw ValidationError("witness sweep: expected " + std::to_string(M) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    check_cap(sc, d, opts.vertex_cap);

    const auto sc_coeffs = scale_to_integers(coeffs);
    const auto space = sweep::make_tuple_space(sc, d);

    // dot/denom <= Bn/Bd  <=>  dot * Bd <= Bn * denom (both denominators > 0).
    const BigInt t_den = denominator(bound);
    const BigInt t_num = numerator(bound) * sc_coeffs.denom;

    WitnessSweepReport report;
    auto finish = [&](auto&& swept) {
        report.max_value = Rational(BigInt(swept.max_sum), sc_coeffs.denom);
        report.n_vertices = swept.n_vertices;
        report.n_saturating = swept.n_saturating;
        report.saturating.reserve(swept.saturating.size());
        for (const auto& t : swept.saturating) report.saturating.push_back(vertex_from_tuple(sc, t.data()));
        if (swept.first_violation) report.violation = vertex_from_tuple(sc, swept.first_violation->data());
    };

    if (fits_int64(sc_coeffs.abs_sum * t_den) && fits_int64(t_num)) {
        const auto lut = sweep::build_row_lut<std::int64_t>(sc, to_int64(sc_coeffs.scaled));
        finish(sweep::verify_dot_sweep<std::int64_t>(space, lut, t_num.convert_to<std::int64_t>(),
                                                     t_den.convert_to<std::int64_t>(), opts.policy));
    } else {
        const auto lut = sweep::build_row_lut<BigInt>(sc, sc_coeffs.scaled);
        finish(sweep::verify_dot_sweep<BigInt>(space, lut, t_num, t_den, opts.policy));
    }
    return report;
}

namespace {

/// Exact acceptance test for a candidate witness stored in doubles: strict
/// separation of `cm` from the d-restricted polytope by more than `margin`.
std::optional<SeparatingWitness> try_candidate(std::vector<double> candidate, const CorrelationMatrix& cm,
                                               int d, const MembershipOptions& opts) {
    std::vector<Rational> coeffs;
    coeffs.reserve(candidate.size());
    for (double c : candidate) coeffs.push_back(rational_from_double(c));

    const auto sc_coeffs = scale_to_integers(coeffs);
    const Rational cmax(max_scaled_dot(cm.scenario, d, sc_coeffs, opts.policy), sc_coeffs.denom);
    const Rational achieved = exact_dot(coeffs, cm.e);
    if (achieved - cmax <= rational_from_double(opts.separation_margin)) return std::nullopt;

    Witness w(cm.scenario, std::move(candidate));
    w.bounds[d].classical = cmax.convert_to<double>();
    return SeparatingWitness{std::move(w), achieved.convert_to<double>(), cmax.convert_to<double>()};
}

/// Farkas row certificate -> separating witness.  The witness part is the
/// first N*m components (the convexity-row component only shifts both sides).
/// Normalizes to inf-norm 1, then prefers a rationalized rounding when it
/// still separates exactly.
std::optional<SeparatingWitness> witness_from_farkas(const std::vector<double>& y, const CorrelationMatrix& cm,
                                                     int d, const MembershipOptions& opts) {
    const std::size_t M = static_cast<std::size_t>(cm.scenario.n_preparations) * cm.scenario.n_measurements;
    std::vector<double> w(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(M));
    double mx = 0.0;
    for (double c : w) mx = std::max(mx, std::abs(c));
    if (mx == 0.0) return std::nullopt;
    for (double& c : w) c /= mx;

    std::vector<double> rationalized(M);
    for (std::size_t i = 0; i < M; ++i)
        rationalized[i] = best_rational_approx(w[i], kRationalizeMaxDen).convert_to<double>();

    if (auto cert = try_candidate(std::move(rationalized), cm, d, opts)) return cert;
    return try_candidate(std::move(w), cm, d, opts);
}

} // namespace

MembershipCertificate membership(const CorrelationMatrix& cm, int d, const MembershipOptions& opts) {
    cm.validate();
    check_dimension(d);
    const Scenario& sc = cm.scenario;
    const std::size_t M = static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements;

    const auto vertices = enumerate_vertices(sc, d, opts.vertex_cap);
    std::vector<std::vector<double>> columns(vertices.size());
    for (std::size_t j = 0; j < vertices.size(); ++j) {
        auto& col = columns[j];
        col.resize(M + 1);
        for (std::size_t i = 0; i < M; ++i) col[i] = vertices[j].signs[i];
        col[M] = 1.0; // convexity row
    }
    std::vector<double> b(M + 1);
    std::copy(cm.e.begin(), cm.e.end(), b.begin());
    b[M] = 1.0;

    std::string failure = "no attempt ran";
    for (int attempt = 0; attempt < 2; ++attempt) {
        lp::Phase1Options lopts;
        lopts.feas_tol = opts.feas_tol;
        lopts.bland = attempt == 1;

        lp::Phase1Result res;
        try {
            res = lp::phase1_feasibility(columns, b, lopts);
        } catch (const SolverError& e) {
            failure = e.what();
            continue;
        }

        if (res.feasible) {
            // Re-check the reconstruction independently of the LP's own
            // bookkeeping before certifying Inside.
            std::vector<double> residual(b);
            double min_weight = 0.0;
            for (std::size_t j = 0; j < columns.size(); ++j) {
                const double xj = res.x[j];
                if (xj == 0.0) continue;
                min_weight = std::min(min_weight, xj);
                for (std::size_t i = 0; i <= M; ++i) residual[i] -= xj * columns[j][i];
            }
            double max_residual = 0.0;
            for (double r : residual) max_residual = std::max(max_residual, std::abs(r));
            if (min_weight < -opts.feas_tol || max_residual > opts.feas_tol) {
                failure = "feasible point failed reconstruction check (residual " +
                          std::to_string(max_residual) + ")";
                continue;
            }

            MembershipCertificate cert;
            cert.verdict = MembershipCertificate::Verdict::Inside;
            cert.dimension = d;
            cert.convex_weights.emplace();
            for (std::size_t j = 0; j < columns.size(); ++j)
                if (res.x[j] > 1e-12) cert.convex_weights->emplace_back(vertices[j], res.x[j]);
            return cert;
        }

        if (auto sep = witness_from_farkas(res.y, cm, d, opts)) {
            MembershipCertificate cert;
            cert.verdict = MembershipCertificate::Verdict::Outside;
            cert.dimension = d;
            cert.separating_witness = std::move(sep);
            return cert;
        }
        failure = "infeasibility certificate failed exact separation check";
    }
    throw SolverError("membership(" + sc.str() + ", d = " + std::to_string(d) +
                      "): no verified verdict: " + failure);
}

DimensionResult classical_dimension_detailed(const CorrelationMatrix& cm, const MembershipOptions& opts) {
    cm.validate();
    const int upper = effective_row_limit(cm.scenario, cm.scenario.n_preparations);

    DimensionResult out;
    for (int d = 1; d <= upper; ++d) {
        auto cert = membership(cm, d, opts);
        if (cert.inside()) {
            out.dimension = d;
            return out;
        }
        out.rejections.push_back(std::move(cert));
    }
    // At d = min(N, 2^m) the vertex set is every sign matrix, whose hull is
    // the full correlator cube; a validated matrix cannot fall outside it.
    throw SolverError("classical_dimension(" + cm.scenario.str() + "): no dimension up to " +
                      std::to_string(upper) + " accepted the matrix");
}

int classical_dimension(const CorrelationMatrix& cm, const MembershipOptions& opts) {
    return classical_dimension_detailed(cm, opts).dimension;
}

} // namespace dimcert
