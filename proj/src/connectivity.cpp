#include "linklab/connectivity.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "flow.hpp"

namespace linklab {

namespace {

// Shared split network for s-t vertex connectivity: every vertex other than
// s and t becomes in-node 2v -> out-node 2v+1 with a unit arc; s and t keep
// a single uncapacitated node.  Edge arcs are uncapacitated, so min cuts
// consist of split arcs only.
struct SplitFlow {
    detail::FlowNetwork net;
    int s, t;
    long flow = 0;

    SplitFlow(const Graph& g, int s_, int t_) : net(2 * g.size()), s(s_), t(t_) {
        const int n = g.size();
        auto out_node = [&](int v) { return (v == s || v == t) ? 2 * v : 2 * v + 1; };
        const long inf = std::numeric_limits<int>::max();
        for (int v = 0; v < n; ++v)
            if (v != s && v != t)
                net.add_arc(2 * v, 2 * v + 1, 1);
        for (int u = 0; u < n; ++u)
            for (int v : g.neighbors(u))
                net.add_arc(out_node(u), 2 * v, inf);
        flow = net.max_flow(out_node(s), 2 * t, inf);
    }
};

void check_local_args(const Graph& g, int s, int t) {
    if (s == t)
        throw std::invalid_argument("local connectivity endpoints must differ");
    if (g.adjacent(s, t))
        throw std::invalid_argument("local connectivity endpoints must be non-adjacent");
}

std::vector<int> local_cut(const Graph& g, int s, int t) {
    check_local_args(g, s, t);
    SplitFlow sf(g, s, t);
    auto out_node = [&](int v) { return (v == s || v == t) ? 2 * v : 2 * v + 1; };
    auto reach = sf.net.residual_reachable(out_node(s));
    std::vector<int> cut;
    for (int v = 0; v < g.size(); ++v)
        if (v != s && v != t && reach[2 * v] && !reach[2 * v + 1])
            cut.push_back(v);
    return cut;
}

} // namespace

int local_vertex_connectivity(const Graph& g, int s, int t) {
    check_local_args(g, s, t);
    return static_cast<int>(SplitFlow(g, s, t).flow);
}

int vertex_connectivity(const Graph& g) {
    const int n = g.size();
    if (n <= 1)
        return 0;
    if (g.is_complete())
        return n - 1;
    return static_cast<int>(minimum_separator(g).size());
}

std::vector<int> minimum_separator(const Graph& g) {
    const int n = g.size();
    if (n <= 1 || g.is_complete())
        throw std::invalid_argument("graph has no vertex cut");
    if (!g.is_connected())
        return {};

    // Fix a minimum-degree vertex v.  Any minimum separator either avoids v
    // (then it separates v from some non-neighbor) or contains v (then it
    // separates two non-adjacent neighbors of v).
    int v = 0;
    for (int u = 1; u < n; ++u)
        if (g.degree(u) < g.degree(v))
            v = u;

    std::vector<int> best;
    auto consider = [&](int s, int t) {
        if (best.size() == 1)
            return; // cannot improve on a cut vertex
        auto cut = local_cut(g, s, t);
        if (best.empty() || cut.size() < best.size())
            best = std::move(cut);
    };
    for (int u = 0; u < n; ++u)
        if (u != v && !g.adjacent(u, v))
            consider(v, u);
    auto nbrs = g.neighbors(v);
    for (size_t i = 0; i < nbrs.size(); ++i)
        for (size_t j = i + 1; j < nbrs.size(); ++j)
            if (!g.adjacent(nbrs[i], nbrs[j]))
                consider(nbrs[i], nbrs[j]);
    return best;
}

int spacapan_connectivity(const Graph& g, const Graph& h) {
    if (g.size() == 0 || h.size() == 0)
        throw std::invalid_argument("spacapan_connectivity needs non-empty factors");
    long a = static_cast<long>(g.min_degree()) + h.min_degree();
    long b = static_cast<long>(vertex_connectivity(g)) * h.size();
    long c = static_cast<long>(vertex_connectivity(h)) * g.size();
    return static_cast<int>(std::min({a, b, c}));
}

} // namespace linklab
