#ifndef LINKLAB_AUTOMORPHISM_HPP
#define LINKLAB_AUTOMORPHISM_HPP

#include <vector>

namespace linklab {

// A vertex permutation of a graph, stored as perm[v] = image of v.
using Permutation = std::vector<int>;

// Automorphism group of the n-cube on 2^n vertices (vertex v is a bit mask):
// XOR with any mask composed with any permutation of bit positions.
// Size 2^n * n!.  Requires 0 <= n <= 6 (the group itself becomes unwieldy
// beyond that).
std::vector<Permutation> hypercube_automorphisms(int n);

// Automorphisms of a torus C_{s1} x ... x C_{st} on row-major ids generated by
// per-factor rotations and reflections plus swaps of equal-size factors.
// Factors of size < 3 are rejected.  The group returned is the full direct
// product of dihedral groups extended by the factor permutations (for tori
// this is the whole automorphism group except at tiny sporadic sizes).
std::vector<Permutation> torus_automorphisms(const std::vector<int>& sizes);

// Automorphisms of a grid P_{s1} x ... x P_{st}: per-factor reflections plus
// swaps of equal-size factors.  Sizes must be >= 1.
std::vector<Permutation> grid_automorphisms(const std::vector<int>& sizes);

}  // namespace linklab

#endif
