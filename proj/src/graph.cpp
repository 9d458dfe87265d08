#include "linklab/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "linklab/errors.hpp"

namespace linklab {

Graph::Graph(int n) : n_(n), adj_(static_cast<size_t>(std::max(n, 0))) {
    if (n < 0)
        throw std::invalid_argument("graph size must be non-negative");
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range [0, " +
                                    std::to_string(n_) + ")");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    auto& au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
        return; // duplicate edge, ignore
    au.insert(it, v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
}

std::span<const int> Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

bool Graph::adjacent(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

int Graph::degree(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

long Graph::edge_count() const {
    long twice = 0;
    for (const auto& a : adj_)
        twice += static_cast<long>(a.size());
    return twice / 2;
}

int Graph::min_degree() const {
    if (n_ == 0)
        return 0;
    int d = degree(0);
    for (int v = 1; v < n_; ++v)
        d = std::min(d, degree(v));
    return d;
}

bool Graph::is_complete() const {
    return edge_count() == static_cast<long>(n_) * (n_ - 1) / 2;
}

bool Graph::is_connected() const {
    if (n_ <= 1)
        return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    return count == n_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(edge_count()));
    for (int u = 0; u < n_; ++u)
        for (int v : adj_[u])
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

Graph Graph::induced(const std::vector<int>& keep) const {
    std::vector<int> local(n_, -1);
    for (size_t i = 0; i < keep.size(); ++i) {
        check_vertex(keep[i]);
        if (local[keep[i]] != -1)
            throw std::invalid_argument("duplicate vertex in induced-subgraph selection");
        local[keep[i]] = static_cast<int>(i);
    }
    Graph sub(static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (int w : adj_[keep[i]])
            if (local[w] > static_cast<int>(i))
                sub.add_edge(static_cast<int>(i), local[w]);
    return sub;
}

Graph make_path(int m) {
    if (m < 1)
        throw std::invalid_argument("path needs at least 1 vertex");
    Graph g(m);
    for (int i = 0; i + 1 < m; ++i)
        g.add_edge(i, i + 1);
    return g;
}

Graph make_cycle(int m) {
    if (m < 3)
        throw std::invalid_argument("cycle needs at least 3 vertices");
    Graph g(m);
    for (int i = 0; i < m; ++i)
        g.add_edge(i, (i + 1) % m);
    return g;
}

Graph make_complete(int n) {
    if (n < 1)
        throw std::invalid_argument("complete graph needs at least 1 vertex");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph make_sharpness_graph(int n, int k) {
    if (k < 1)
        throw std::invalid_argument("sharpness graph needs k >= 1");
    if (n < 2 * k - 1)
        throw std::invalid_argument("sharpness graph needs n >= 2k-1");
    Graph g(n + 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    for (int v = 0; v < 2 * k - 1; ++v)
        g.add_edge(n, v);
    return g;
}

} // namespace linklab
