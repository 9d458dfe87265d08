#ifndef LINKLAB_MENGER_HPP
#define LINKLAB_MENGER_HPP

#include <vector>

#include "linklab/graph.hpp"
#include "linklab/paths.hpp"

namespace linklab {

// Route |sources| fully vertex-disjoint paths from `sources` onto distinct
// members of `sinks` while avoiding `forbidden` entirely.  The three sets
// must be pairwise disjoint and |sources| <= |sinks|; surplus sinks stay
// free (though a path may pass through one).
struct MengerRequest {
    std::vector<int> sources;
    std::vector<int> sinks;
    std::vector<int> forbidden;
};

// On success: system.paths[i] starts at the i-th source in ascending id
// order and system.pairing[i] is the index (in ascending sink order) of the
// sink it reaches.  On failure: `separator` is a vertex set of size < |S|
// in G - forbidden meeting every source-to-sink path (it may contain
// sources or sinks).
struct MengerResult {
    bool success = false;
    PathSystem system;
    std::vector<int> separator;
};

MengerResult menger_link(const Graph& g, const MengerRequest& request);

} // namespace linklab

#endif
