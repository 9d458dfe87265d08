#include "linklab/menger.hpp"

#include <algorithm>
#include <stdexcept>

#include "flow.hpp"
#include "linklab/errors.hpp"

namespace linklab {

MengerResult menger_link(const Graph& g, const MengerRequest& request) {
    const int n = g.size();
    std::vector<int> sources = request.sources;
    std::vector<int> sinks = request.sinks;
    std::sort(sources.begin(), sources.end());
    std::sort(sinks.begin(), sinks.end());

    if (sources.empty())
        throw std::invalid_argument("menger_link needs at least one source");
    if (sources.size() > sinks.size())
        throw std::invalid_argument("menger_link needs |sources| <= |sinks|");

    std::vector<char> role(n, 0); // 1 source, 2 sink, 3 forbidden
    auto claim = [&](int v, char r) {
        if (v < 0 || v >= n)
            throw std::invalid_argument("menger_link vertex out of range");
        if (role[v] != 0)
            throw std::invalid_argument("menger_link sets overlap at vertex " +
                                        std::to_string(v));
        role[v] = r;
    };
    for (int v : sources)
        claim(v, 1);
    for (int v : sinks)
        claim(v, 2);
    for (int v : request.forbidden)
        claim(v, 3);

    // Vertex-split digraph: v_in = 2v, v_out = 2v+1, unit arc between them.
    // Super-source = 2n, super-sink = 2n+1; their arcs also carry unit
    // capacity, so a saturated one marks that source/sink as cut.
    const int super_source = 2 * n;
    const int super_sink = 2 * n + 1;
    detail::FlowNetwork net(2 * n + 2);
    std::vector<int> split_arc(n, -1), source_arc(n, -1), sink_arc(n, -1);
    for (int v = 0; v < n; ++v)
        if (role[v] != 3)
            split_arc[v] = net.add_arc(2 * v, 2 * v + 1, 1);
    // Edge arcs are uncapacitated so every min cut consists of vertex arcs.
    const int inf = n + 1;
    for (int u = 0; u < n; ++u) {
        if (role[u] == 3)
            continue;
        for (int v : g.neighbors(u))
            if (role[v] != 3)
                net.add_arc(2 * u + 1, 2 * v, inf);
    }
    for (int v : sources)
        source_arc[v] = net.add_arc(super_source, 2 * v, 1);
    for (int v : sinks)
        sink_arc[v] = net.add_arc(2 * v + 1, super_sink, 1);

    const long want = static_cast<long>(sources.size());
    long flow = net.max_flow(super_source, super_sink, want);

    MengerResult result;
    if (flow < want) {
        // Min cut in the residual graph; every saturated cut arc corresponds
        // to one vertex of the separator.
        std::vector<char> reach = net.residual_reachable(super_source);
        for (int v = 0; v < n; ++v) {
            bool cut = false;
            if (split_arc[v] >= 0 && reach[2 * v] && !reach[2 * v + 1])
                cut = true;
            if (source_arc[v] >= 0 && !reach[2 * v])
                cut = true;
            if (sink_arc[v] >= 0 && reach[2 * v + 1] && !reach[super_sink])
                cut = true;
            if (cut)
                result.separator.push_back(v);
        }
        return result;
    }

    // Decompose, scanning sources in ascending id order.  Unit vertex
    // capacities give every flow-carrying vertex a unique successor, so each
    // walk is a simple path; stray flow cycles never touch it.
    result.success = true;
    for (int s : sources) {
        std::vector<int> path{s};
        int v = s;
        while (true) {
            int arc = net.flow_successor(2 * v + 1);
            if (arc < 0)
                throw internal_error("menger_link: flow decomposition lost a path");
            int head = net.arc_head(arc);
            if (head == super_sink)
                break;
            v = head / 2;
            path.push_back(v);
        }
        auto it = std::lower_bound(sinks.begin(), sinks.end(), v);
        result.system.pairing.push_back(static_cast<int>(it - sinks.begin()));
        result.system.paths.push_back(std::move(path));
    }
    return result;
}

} // namespace linklab
