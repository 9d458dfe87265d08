#ifndef LINKLAB_ORACLE_HPP
#define LINKLAB_ORACLE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "linklab/automorphism.hpp"
#include "linklab/graph.hpp"
#include "linklab/paths.hpp"

namespace linklab {

// The exhaustive search machinery is capped at this many vertices.
inline constexpr int oracle_max_vertices = 256;

// Node-expansion budget for one solve_config call: the LINKLAB_BUDGET
// environment variable when set to a positive integer, otherwise 10^7.
long long default_search_budget();

// Exhaustive backtracking search for pairwise vertex-disjoint paths joining
// each pairs[i].first to pairs[i].second.  Returns a system with identity
// pairing on success, nullopt when exhaustion proves none exists, and throws
// budget_exhausted when the node budget runs out before a verdict.
std::optional<PathSystem> solve_config(const Graph& g,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       long long budget = default_search_budget());

enum class LinkOutcome { linked, not_linked, undecided };

struct LinkReport {
    LinkOutcome outcome = LinkOutcome::undecided;
    // A configuration with no disjoint linkage (when not_linked).
    std::vector<std::pair<int, int>> witness;
    // Configurations actually solved (after symmetry skips).
    long long configs_checked = 0;
};

struct OracleOptions {
    long long budget = -1; // per-configuration; -1 means default_search_budget()
    int threads = 1;
    // Optional automorphism group: configurations that some group element
    // maps to a lexicographically smaller one are skipped (sound because the
    // minimum of each orbit is always processed).
    const std::vector<Permutation>* symmetry = nullptr;
};

// Decides k-linkedness by checking every canonical configuration of k
// disjoint terminal pairs.  Requires 1 <= k and 2k <= |V(g)|.
LinkReport is_k_linked(const Graph& g, int k, const OracleOptions& opts = {});

// Largest k such that g is k-linked (0 when g is disconnected or has fewer
// than two vertices).  Throws budget_exhausted if some level is undecided.
int link_number(const Graph& g, const OracleOptions& opts = {});

} // namespace linklab

#endif
