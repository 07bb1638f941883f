#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dimcert/double_description.hpp"
#include "dimcert/membership.hpp"
#include "dimcert/witness.hpp"

namespace dimcert {

struct FacetOptions {
    int max_entries = 8;                        // guard on N*m for hull conversion
    unsigned long long max_vertices = 10'000;   // guard on the vertex count for hull conversion
    unsigned long long vertex_cap = kDefaultVertexCap; // guard for is_facet sweeps
    ExecPolicy policy = ExecPolicy::Parallel;
};

/// A tight witness: valid on every vertex and saturated by a set of affine
/// rank N*m - 1 (all checked in exact arithmetic).
struct Facet {
    Witness witness; // bounds[d].classical holds the facet bound
    int d = 0;
    std::vector<DeterministicVertex> saturating_vertices;
    unsigned long long saturating_count = 0; // true count; the stored list may be capped
    int affine_rank = 0;                     // affine dimension of the saturating set
    std::string orbit_class;                 // stamped by classify_facets
};

struct FacetEnumeration {
    Scenario scenario;
    int d = 0;
    bool full_dimensional = false;
    int polytope_dimension = 0;
    /// Equalities cutting out the affine hull; empty when full-dimensional.
    /// When nonempty the facets below are relative to the hull.
    std::vector<dd::HullEquality> affine_hull;
    std::vector<Facet> facets;
};

/// Complete facet list of the d-restricted polytope, every facet re-verified
/// exactly against the vertex set.  Guarded by max_entries and max_vertices.
FacetEnumeration enumerate_facets(const Scenario& sc, int d, const FacetOptions& opts = {});

enum class FacetStatus {
    Facet,    // valid and tight
    NotTight, // valid, but the saturating set has affine rank < N*m - 1
    Invalid,  // some vertex violates the inequality
};

struct FacetCheck {
    FacetStatus status = FacetStatus::Invalid;
    std::optional<Facet> facet;                          // present when status == Facet
    std::optional<DeterministicVertex> violating_vertex; // present when status == Invalid
    unsigned long long saturating_count = 0;
    int affine_rank = 0;
};

/// Exact tightness check of w . E <= bound on the d-restricted polytope.
/// Needs no hull conversion, so it scales to the full vertex cap.
FacetCheck is_facet(const Witness& w, double bound, int d, const FacetOptions& opts = {});

struct FacetClass {
    std::string name;
    std::vector<double> canonical_coeffs; // lexicographically minimal orbit image
    double bound = 0.0;
    std::size_t representative = 0; // index into the classified list
    std::vector<std::size_t> members;
};

/// Groups facets into symmetry orbits via canonical forms, stamps each
/// facet's orbit_class and returns one class record per orbit.  Names:
/// "positivity" for single-entry facets, "I<N>" for the I_N pattern,
/// "class-<k>" otherwise.
std::vector<FacetClass> classify_facets(std::vector<Facet>& facets, const Scenario& sc);

/// Polar reconstruction of the vertex set from a facet enumeration; exact
/// round-trip counterpart of enumerate_facets.
std::vector<DeterministicVertex> vertices_from_facets(const FacetEnumeration& fe);

} // namespace dimcert
