#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace support {
namespace {

using linklab::Graph;

struct Search {
    const Graph& g;
    const std::vector<std::pair<int, int>>& pairs;
    std::vector<char> used;
    std::vector<std::vector<int>> acc;
    long long steps = 0;
    long long cap;

    bool start(size_t i) {
        if (i == pairs.size())
            return true;
        acc[i] = {pairs[i].first};
        return walk(i);
    }

    bool walk(size_t i) {
        if (++steps > cap)
            throw std::runtime_error("reference search exceeded its step cap");
        int cur = acc[i].back();
        int goal = pairs[i].second;
        if (cur == goal)
            return start(i + 1);
        for (int w : g.neighbors(cur)) {
            if (w == goal) {
                acc[i].push_back(w);
                if (start(i + 1))
                    return true;
                acc[i].pop_back();
            } else if (!used[w]) {
                used[w] = 1;
                acc[i].push_back(w);
                if (walk(i))
                    return true;
                used[w] = 0;
                acc[i].pop_back();
            }
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<std::vector<int>>> reference_disjoint_paths(
    const Graph& g, const std::vector<std::pair<int, int>>& pairs,
    const std::vector<int>& forbidden, long long cap) {
    Search s{g, pairs, std::vector<char>(g.size(), 0),
             std::vector<std::vector<int>>(pairs.size()), 0, cap};
    for (auto [a, b] : pairs) {
        if (a == b || s.used[a] || s.used[b])
            throw std::invalid_argument("reference search: terminals clash");
        s.used[a] = s.used[b] = 1;
    }
    for (int v : forbidden) {
        if (s.used[v])
            throw std::invalid_argument("reference search: forbidden terminal");
        s.used[v] = 1;
    }
    if (s.start(0))
        return s.acc;
    return std::nullopt;
}

bool reference_menger_exists(const Graph& g, std::vector<int> sources,
                             std::vector<int> sinks,
                             const std::vector<int>& forbidden, long long cap) {
    std::sort(sources.begin(), sources.end());
    std::sort(sinks.begin(), sinks.end());
    const int k = static_cast<int>(sources.size());
    const int m = static_cast<int>(sinks.size());
    if (k > m)
        return false;
    std::vector<char> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    // All k-subsets of the sinks, then all assignments within the subset.
    do {
        std::vector<int> chosen;
        for (int i = 0; i < m; ++i)
            if (pick[i])
                chosen.push_back(sinks[i]);
        std::sort(chosen.begin(), chosen.end());
        do {
            std::vector<std::pair<int, int>> pairs;
            for (int i = 0; i < k; ++i)
                pairs.emplace_back(sources[i], chosen[i]);
            if (reference_disjoint_paths(g, pairs, forbidden, cap))
                return true;
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return false;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
    Graph g(n);
    std::bernoulli_distribution flip(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng))
                g.add_edge(u, v);
    return g;
}

Graph random_connected_graph(std::mt19937& rng, int n, double p) {
    Graph g(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> pred(0, i - 1);
        g.add_edge(order[i], order[pred(rng)]);
    }
    std::bernoulli_distribution flip(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (flip(rng))
                g.add_edge(u, v);
    return g;
}

std::vector<int> sample_vertices(std::mt19937& rng, int n, int k) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> at(i, n - 1);
        std::swap(ids[i], ids[at(rng)]);
    }
    ids.resize(k);
    return ids;
}

std::vector<std::pair<int, int>> sample_pairs(std::mt19937& rng, int n, int k) {
    auto ids = sample_vertices(rng, n, 2 * k);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        pairs.emplace_back(ids[2 * i], ids[2 * i + 1]);
    return pairs;
}

} // namespace support
