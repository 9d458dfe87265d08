#include "flow.hpp"

#include <deque>

namespace linklab::detail {

FlowNetwork::FlowNetwork(int nodes) : n_(nodes), out_(static_cast<size_t>(nodes)) {}

int FlowNetwork::add_arc(int u, int v, long cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({v, cap, 0});
    arcs_.push_back({u, 0, 0});
    out_[u].push_back(id);
    out_[v].push_back(id + 1);
    return id;
}

bool FlowNetwork::augment_once(int source, int sink) {
    std::vector<int> parent_arc(n_, -1);
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty() && !seen[sink]) {
        int v = queue.front();
        queue.pop_front();
        for (int id : out_[v]) {
            const Arc& a = arcs_[id];
            if (a.flow < a.cap && !seen[a.to]) {
                seen[a.to] = 1;
                parent_arc[a.to] = id;
                if (a.to == sink)
                    break;
                queue.push_back(a.to);
            }
        }
    }
    if (!seen[sink])
        return false;
    long push = -1;
    for (int v = sink; v != source;) {
        const Arc& a = arcs_[parent_arc[v]];
        long residual = a.cap - a.flow;
        push = (push < 0 || residual < push) ? residual : push;
        v = arcs_[parent_arc[v] ^ 1].to;
    }
    for (int v = sink; v != source;) {
        arcs_[parent_arc[v]].flow += push;
        arcs_[parent_arc[v] ^ 1].flow -= push;
        v = arcs_[parent_arc[v] ^ 1].to;
    }
    return true;
}

long FlowNetwork::max_flow(int source, int sink, long limit) {
    long total = 0;
    while (total < limit && augment_once(source, sink)) {
        // unit vertex capacities keep every augmentation at exactly the
        // bottleneck, which is 1 on all networks built in this project
        total = 0;
        for (int id : out_[source])
            if ((id & 1) == 0)
                total += arcs_[id].flow;
    }
    return total;
}

std::vector<char> FlowNetwork::residual_reachable(int source) const {
    std::vector<char> seen(n_, 0);
    std::deque<int> queue{source};
    seen[source] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int id : out_[v]) {
            const Arc& a = arcs_[id];
            if (a.flow < a.cap && !seen[a.to]) {
                seen[a.to] = 1;
                queue.push_back(a.to);
            }
        }
    }
    return seen;
}

int FlowNetwork::flow_successor(int node) const {
    for (int id : out_[node])
        if ((id & 1) == 0 && arcs_[id].flow > 0)
            return id;
    return -1;
}

} // namespace linklab::detail
