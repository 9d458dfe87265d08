#ifndef LINKLAB_GRAPH_HPP
#define LINKLAB_GRAPH_HPP

#include <span>
#include <utility>
#include <vector>

namespace linklab {

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// No self-loops; duplicate add_edge calls are ignored.
class Graph {
  public:
    Graph() = default;
    explicit Graph(int n);

    void add_edge(int u, int v);

    int size() const { return n_; }
    std::span<const int> neighbors(int v) const;
    bool adjacent(int u, int v) const;
    int degree(int v) const;
    long edge_count() const;
    int min_degree() const;
    bool is_complete() const;
    bool is_connected() const;

    // All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    // Subgraph induced by `keep` (ids relabelled by position in `keep`).
    Graph induced(const std::vector<int>& keep) const;

    bool operator==(const Graph& other) const = default;

  private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
};

Graph make_path(int m);     // P_m, m >= 1 vertices
Graph make_cycle(int m);    // C_m, m >= 3
Graph make_complete(int n); // K_n, n >= 1

// K_n plus one extra vertex (id n) joined to the 2k-1 lowest-id vertices.
// Requires n >= 2k-1, k >= 1.  This graph is k-linked, (2k-1)-connected.
Graph make_sharpness_graph(int n, int k);

} // namespace linklab

#endif
