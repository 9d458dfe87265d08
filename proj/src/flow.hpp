#ifndef LINKLAB_FLOW_HPP
#define LINKLAB_FLOW_HPP

#include <vector>

namespace linklab::detail {

// Integer-capacity flow network with BFS (shortest) augmenting paths.
// Arcs are stored in creation order together with their reverse arcs, so
// every run over the same construction sequence is deterministic.
class FlowNetwork {
  public:
    explicit FlowNetwork(int nodes);

    // Adds arc u -> v and its zero-capacity reverse; returns the arc id.
    int add_arc(int u, int v, long cap);

    // Augments until no path remains or `limit` units have been sent.
    long max_flow(int source, int sink, long limit);

    long flow_on(int arc) const { return arcs_[arc].flow; }
    long capacity_of(int arc) const { return arcs_[arc].cap; }
    int arc_head(int arc) const { return arcs_[arc].to; }

    // After max_flow: nodes reachable from `source` in the residual graph.
    std::vector<char> residual_reachable(int source) const;

    // Unique positive-flow successor arc out of `node`, or -1.
    int flow_successor(int node) const;

  private:
    struct Arc {
        int to;
        long cap;
        long flow;
    };

    bool augment_once(int source, int sink);

    int n_;
    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_; // arc ids per node, creation order
};

} // namespace linklab::detail

#endif
