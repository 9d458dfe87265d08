#ifndef LINKLAB_LINKER_HPP
#define LINKLAB_LINKER_HPP

#include <string>
#include <utility>
#include <vector>

#include "linklab/paths.hpp"
#include "linklab/product.hpp"

namespace linklab {

// Exact non-negative rational, reduced, positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;
};

// Guaranteed linkedness a*(kappa_g + h)/(2a + 1) of the product of an
// a-linked kappa_g-connected graph with an h-connected graph (h <= kappa_g).
// Bound calculator only; there is no solver route for it.
Rational theorem_bounds(int a, int kappa_g, int h);

// Largest integer not exceeding r.
long long rational_floor(const Rational& r);

struct SolverParams {
    int depth_limit = 16;      // recursion budget; exceeding it is a solver bug
    bool fallback = false;     // delegate to exhaustive search when a
                               // best-effort branch runs out of options
    bool assume_linked = false; // skip oracle checks of factor linkedness
    long long budget = -1;     // in-layer search budget; -1 = default
};

struct SolveResult {
    PathSystem system;
    // Machine-greppable tokens naming the proof branch taken, e.g.
    // "b1:layer=2", "strong:crowded x=3 y=0", "kplus1:case=7".
    std::vector<std::string> trace;
};

// Links |pairs| terminal pairs in G [] H where G is |pairs|-linked and H is
// connected: all terminals are funneled into one G-layer and joined there.
// The product must have exactly two factors.
SolveResult link_connected_factor(const ProductGraph& p,
                                  const std::vector<std::pair<int, int>>& pairs,
                                  const SolverParams& params = {});

// Links up to a+b-1 pairs in G [] H where G is a-linked with |V(G)| >= 8a
// and H is (2b-1)-connected, a >= b >= 2 (crowded-layer recursion, global
// horizontal + vertical shift into two reserved layers, or the small-case
// per-pair column routine).
SolveResult solve_product_linkage(const ProductGraph& p,
                                  const std::vector<std::pair<int, int>>& pairs,
                                  int a, int b, const SolverParams& params = {});

// Links k+1 pairs in G [] H where G is k-linked, k >= 2,
// |V(G)| >= max(9, 4k) and H is 2-connected, via the eight-case dispatch on
// the per-layer terminal counts.
SolveResult solve_k_plus_1(const ProductGraph& p,
                           const std::vector<std::pair<int, int>>& pairs, int k,
                           const SolverParams& params = {});

} // namespace linklab

#endif
