#ifndef LINKLAB_TESTS_SUPPORT_HPP
#define LINKLAB_TESTS_SUPPORT_HPP

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "linklab/graph.hpp"

namespace support {

// Reference search for pairwise vertex-disjoint paths, path i from
// pairs[i].first to pairs[i].second, none touching a forbidden vertex.
// Plain backtracking over raw adjacency with no pruning beyond the
// used-vertex set; deliberately independent of the library's search.
// Throws std::runtime_error if more than `cap` steps are needed.
std::optional<std::vector<std::vector<int>>> reference_disjoint_paths(
    const linklab::Graph& g, const std::vector<std::pair<int, int>>& pairs,
    const std::vector<int>& forbidden = {}, long long cap = 20000000);

// Whether some assignment of the sources to distinct sinks admits disjoint
// paths avoiding `forbidden` (the success condition of a fan-in request).
bool reference_menger_exists(const linklab::Graph& g,
                             std::vector<int> sources, std::vector<int> sinks,
                             const std::vector<int>& forbidden = {},
                             long long cap = 20000000);

linklab::Graph random_graph(std::mt19937& rng, int n, double p);

// Random spanning tree plus density-p extras; always connected.
linklab::Graph random_connected_graph(std::mt19937& rng, int n, double p);

// k distinct vertices sampled without replacement.
std::vector<int> sample_vertices(std::mt19937& rng, int n, int k);

// k disjoint terminal pairs over distinct vertices.
std::vector<std::pair<int, int>> sample_pairs(std::mt19937& rng, int n, int k);

} // namespace support

#endif
