#ifndef LINKLAB_FAMILIES_HPP
#define LINKLAB_FAMILIES_HPP

#include <string>
#include <vector>

#include "linklab/automorphism.hpp"
#include "linklab/product.hpp"

namespace linklab {

// A generated product family: kind is "grid", "torus" or "hypercube"; sizes
// holds the factor sizes (grid >= 2 each, torus >= 3 each) or, for the
// hypercube, the single dimension (>= 1).
struct FamilySpec {
    std::string kind;
    std::vector<int> sizes;
};

// Short display name, e.g. "Q4", "C3xC4", "P2xP3xP3".
std::string family_name(const FamilySpec& spec);

// The established exact link number of the family.  Throws invalid_argument
// on malformed specs and unsupported_instance for the one undetermined
// shape: three-factor grids with exactly one size-2 factor other than
// 2x3x3, whose value the source results state inconsistently.
int expected_link(const FamilySpec& spec);

ProductGraph build_family(const FamilySpec& spec);

// Automorphisms for the oracle's orbit reduction; empty when no analytic
// group is available (callers then run without symmetry).
std::vector<Permutation> family_automorphisms(const FamilySpec& spec);

// One row of the reproduction report.  mode is "oracle" (exact link number
// recomputed), "sampled" (random configurations certified instead, used
// above exhaustive reach) or "bound" (expected value failed the
// connectivity sanity check; always a failing row).  computed stays -1
// unless the oracle ran.
struct ReproRow {
    FamilySpec spec;
    std::string name;
    int vertices = 0;
    int expected = 0;
    std::string mode;
    int computed = -1;
    long long configs_checked = 0;
    bool ok = false;
    std::string detail; // human-readable failure note, empty when ok
    double seconds = 0.0;
};

// Recomputes the curated family table restricted to instances of at most
// max_vertices vertices.  include_long adds the five-dimensional hypercube
// (expensive, exact).  threads caps oracle workers.  Rows are ordered
// deterministically by family and size.
std::vector<ReproRow> reproduce_families(int max_vertices, bool include_long,
                                         int threads);

} // namespace linklab

#endif
