#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dimcert/parallel.hpp"
#include "dimcert/rational.hpp"
#include "dimcert/vertices.hpp"
#include "dimcert/witness.hpp"

namespace dimcert {

struct MembershipOptions {
    unsigned long long vertex_cap = kDefaultVertexCap;
    double feas_tol = 1e-9;          // LP feasibility / reconstruction tolerance
    double separation_margin = 1e-9; // required exact margin of an Outside witness
    ExecPolicy policy = ExecPolicy::Parallel;
};

/// Separating hyperplane evidence for an Outside verdict.  The stored
/// coefficients have been verified exactly (as dyadic rationals) against
/// every vertex of the d-restricted polytope.
struct SeparatingWitness {
    Witness witness;       // normalized to inf-norm 1, rationalized when possible
    double achieved_value; // witness . queried matrix
    double classical_max;  // exact max of witness . V over all vertices (C_d)
};

struct MembershipCertificate {
    enum class Verdict { Inside, Outside };

    Verdict verdict;
    int dimension = 0;
    /// Inside: vertices with nonzero weight reconstructing the queried matrix.
    std::optional<std::vector<std::pair<DeterministicVertex, double>>> convex_weights;
    /// Outside: exact separation certificate.
    std::optional<SeparatingWitness> separating_witness;

    bool inside() const { return verdict == Verdict::Inside; }
};

/// Decides whether `cm` lies in the convex hull of d-restricted deterministic
/// vertices.  Inside comes with reconstructing weights, Outside with an
/// exactly verified separating witness; a silent wrong verdict is never
/// returned (SolverError instead).
MembershipCertificate membership(const CorrelationMatrix& cm, int d, const MembershipOptions& opts = {});

struct DimensionResult {
    int dimension = 0;
    std::vector<MembershipCertificate> rejections; // Outside certificates for d' < dimension
};

/// Smallest d with an Inside verdict; at most min(N, 2^m).
DimensionResult classical_dimension_detailed(const CorrelationMatrix& cm, const MembershipOptions& opts = {});
int classical_dimension(const CorrelationMatrix& cm, const MembershipOptions& opts = {});

/// Exact max of sum w_xy V_xy over the d-restricted vertex set.
Rational classical_max_exact(const Witness& w, int d, const MembershipOptions& opts = {});
double classical_max(const Witness& w, int d, const MembershipOptions& opts = {});

/// Serial-reference variant of classical_max (same result bit for bit).
double classical_max_serial(const Witness& w, int d, const MembershipOptions& opts = {});

/// Exact sweep report for a witness w . V <= bound over the d-restricted
/// vertex set; used for facet verification and certificate re-checks.
struct WitnessSweepReport {
    Rational max_value;
    unsigned long long n_vertices = 0;
    unsigned long long n_saturating = 0;
    std::vector<DeterministicVertex> saturating; // capped; see n_saturating for the true count
    std::optional<DeterministicVertex> violation;
    bool valid() const { return !violation.has_value(); }
};

WitnessSweepReport sweep_witness_exact(const std::vector<Rational>& coeffs, const Scenario& sc, int d,
                                       const Rational& bound, const MembershipOptions& opts = {});

/// Exact rational coefficients of a witness stored in doubles (dyadic).
std::vector<Rational> witness_coeffs_exact(const Witness& w);

/// Exact dot of rational coefficients with a double matrix.
Rational exact_dot(const std::vector<Rational>& coeffs, const std::vector<double>& values);

} // namespace dimcert
