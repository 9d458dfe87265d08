#ifndef LINKLAB_CONNECTIVITY_HPP
#define LINKLAB_CONNECTIVITY_HPP

#include <vector>

#include "linklab/graph.hpp"

namespace linklab {

// Vertex connectivity.  K_n yields n-1, a disconnected graph yields 0.
int vertex_connectivity(const Graph& g);

// A minimum vertex cut (empty for a disconnected graph).  Complete graphs
// and graphs on <= 1 vertex have no cut at all; those throw.
std::vector<int> minimum_separator(const Graph& g);

// Maximum number of internally disjoint s-t paths (s, t non-adjacent).
int local_vertex_connectivity(const Graph& g, int s, int t);

// min(delta(G) + delta(H), kappa(G) * |V(H)|, kappa(H) * |V(G)|), which
// equals the vertex connectivity of the Cartesian product of G and H.
int spacapan_connectivity(const Graph& g, const Graph& h);

} // namespace linklab

#endif
