#ifndef LINKLAB_PATHS_HPP
#define LINKLAB_PATHS_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "linklab/graph.hpp"

namespace linklab {

// A family of vertex-disjoint paths.  pairing[i] names which request entry
// paths[i] serves: for solver certificates it is the identity permutation,
// for raw Menger results it is the index of the sink reached by source i.
struct PathSystem {
    std::vector<std::vector<int>> paths;
    std::vector<int> pairing;
};

struct ValidationResult {
    bool ok = false;
    std::string reason; // names the first violation when !ok
};

// Checks that paths[i] runs from pairs[i].first to pairs[i].second (exact
// pairing, not up to permutation), that consecutive vertices are adjacent,
// and that no vertex appears in two paths or twice in one path.
ValidationResult validate_path_system(const Graph& g,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      const std::vector<std::vector<int>>& paths);

// Shortest prefix of `path` ending at the first vertex (scanning from the
// terminal end, path[0]) that satisfies `accept`.  Throws not_found if no
// vertex qualifies.
std::vector<int> truncate_path(const std::vector<int>& path,
                               const std::function<bool(int)>& accept);

} // namespace linklab

#endif
