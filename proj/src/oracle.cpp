#include "linklab/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cerrno>
#include <climits>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "linklab/connectivity.hpp"
#include "linklab/errors.hpp"
#include "linklab/menger.hpp"

namespace linklab {
namespace {

using Mask = std::bitset<oracle_max_vertices>;
using Config = std::vector<std::pair<int, int>>;

void check_instance(const Graph& g, const Config& pairs) {
    if (g.size() > oracle_max_vertices)
        throw std::invalid_argument("oracle: graph exceeds " +
                                    std::to_string(oracle_max_vertices) + " vertices");
    Mask seen;
    for (const auto& [s, t] : pairs)
        for (int v : {s, t}) {
            if (v < 0 || v >= g.size())
                throw std::invalid_argument("oracle: terminal out of range");
            if (seen.test(v))
                throw std::invalid_argument("oracle: terminals must be distinct");
            seen.set(v);
        }
}

int bfs_distance(const Graph& g, int from, int to) {
    if (from == to)
        return 0;
    std::vector<int> dist(g.size(), INT_MAX);
    std::vector<int> queue{from};
    dist[from] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int w : g.neighbors(v))
            if (dist[w] == INT_MAX) {
                dist[w] = dist[v] + 1;
                if (w == to)
                    return dist[w];
                queue.push_back(w);
            }
    }
    return INT_MAX;
}

std::vector<std::vector<int>> all_pairs_distance(const Graph& g) {
    const int n = g.size();
    std::vector<std::vector<int>> dist(n);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        auto& d = dist[s];
        d.assign(n, INT_MAX);
        d[s] = 0;
        queue.assign(1, s);
        for (size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int w : g.neighbors(v))
                if (d[w] == INT_MAX) {
                    d[w] = d[v] + 1;
                    queue.push_back(w);
                }
        }
    }
    return dist;
}

// Backtracking search for one configuration.  Pairs are routed shortest
// distance first; every extension is guarded by a reachability test and
// every completed path by a relaxed (unpaired) Menger feasibility test.
// Reusable across configurations to keep scratch allocations warm.
class ConfigSearch {
  public:
    explicit ConfigSearch(const Graph& g) : g_(g) {}

    // dist[i] is the g-distance between the endpoints of pairs[i].
    std::optional<PathSystem> run(const Config& pairs, const std::vector<int>& dist,
                                  long long budget) {
        const int k = static_cast<int>(pairs.size());
        budget_ = budget;
        if (k == 0)
            return PathSystem{};
        for (int d : dist)
            if (d == INT_MAX)
                return std::nullopt;
        order_.resize(k);
        for (int i = 0; i < k; ++i)
            order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return dist[a] < dist[b]; });
        pairs_.clear();
        for (int i : order_)
            pairs_.push_back(pairs[i]);
        forbidden_.assign(k, Mask{});
        for (int i = k - 2; i >= 0; --i) {
            forbidden_[i] = forbidden_[i + 1];
            forbidden_[i].set(pairs_[i + 1].first);
            forbidden_[i].set(pairs_[i + 1].second);
        }
        used_.reset();
        paths_.assign(k, {});
        if (!search(0))
            return std::nullopt;
        PathSystem out;
        out.paths.resize(k);
        out.pairing.resize(k);
        for (int i = 0; i < k; ++i) {
            out.paths[order_[i]] = std::move(paths_[i]);
            out.pairing[order_[i]] = order_[i];
        }
        return out;
    }

  private:
    bool search(int idx) {
        if (idx == static_cast<int>(pairs_.size()))
            return true;
        if (!feasible(idx))
            return false;
        const int s = pairs_[idx].first;
        used_.set(s);
        paths_[idx].assign(1, s);
        if (extend(idx, s))
            return true;
        used_.reset(s);
        paths_[idx].clear();
        return false;
    }

    bool extend(int idx, int v) {
        const int target = pairs_[idx].second;
        if (v == target)
            return search(idx + 1);
        Mask blocked = used_ | forbidden_[idx];
        blocked.reset(target);
        for (int w : g_.neighbors(v)) {
            if (blocked.test(w))
                continue;
            if (--budget_ < 0)
                throw budget_exhausted("solve_config: node-expansion budget exhausted");
            used_.set(w);
            paths_[idx].push_back(w);
            Mask inner = blocked;
            inner.set(w);
            if ((w == target || reaches(w, target, inner)) && extend(idx, w))
                return true;
            used_.reset(w);
            paths_[idx].pop_back();
        }
        return false;
    }

    bool reaches(int from, int to, const Mask& blocked) {
        Mask visited = blocked;
        visited.set(from);
        stack_.assign(1, from);
        while (!stack_.empty()) {
            int v = stack_.back();
            stack_.pop_back();
            for (int w : g_.neighbors(v)) {
                if (w == to)
                    return true;
                if (!visited.test(w)) {
                    visited.set(w);
                    stack_.push_back(w);
                }
            }
        }
        return false;
    }

    // Relaxed necessary condition: the remaining terminals must at least be
    // joinable by disjoint paths under some pairing.
    bool feasible(int idx) {
        MengerRequest req;
        for (int j = idx; j < static_cast<int>(pairs_.size()); ++j) {
            req.sources.push_back(pairs_[j].first);
            req.sinks.push_back(pairs_[j].second);
        }
        for (int v = 0; v < g_.size(); ++v)
            if (used_.test(v))
                req.forbidden.push_back(v);
        return menger_link(g_, req).success;
    }

    const Graph& g_;
    long long budget_ = 0;
    std::vector<int> order_;
    Config pairs_;
    std::vector<Mask> forbidden_;
    Mask used_;
    std::vector<std::vector<int>> paths_;
    std::vector<int> stack_;
};

// Pairs oriented s < t and sorted by first endpoint.
void canonicalize(Config& c) {
    for (auto& p : c)
        if (p.first > p.second)
            std::swap(p.first, p.second);
    std::sort(c.begin(), c.end());
}

// Visits every canonical configuration of k disjoint pairs over vertices
// 0..n-1 in lexicographic order; f returns false to stop the walk.
template <class F>
void for_each_config(int n, int k, F&& f) {
    Config cur;
    cur.reserve(k);
    std::vector<char> taken(n, 0);
    auto rec = [&](auto&& self, int prev_s) -> bool {
        if (static_cast<int>(cur.size()) == k)
            return f(cur);
        for (int s = prev_s + 1; s < n; ++s) {
            if (taken[s])
                continue;
            taken[s] = 1;
            for (int t = s + 1; t < n; ++t) {
                if (taken[t])
                    continue;
                taken[t] = 1;
                cur.emplace_back(s, t);
                bool go = self(self, s);
                cur.pop_back();
                taken[t] = 0;
                if (!go) {
                    taken[s] = 0;
                    return false;
                }
            }
            taken[s] = 0;
        }
        return true;
    };
    rec(rec, -1);
}

// True when no group element maps cfg to a lexicographically smaller
// canonical configuration.  Skipping non-minimal configurations is sound:
// the minimum of every orbit is always kept.
bool orbit_minimal(const Config& cfg, const std::vector<Permutation>& group, Config& scratch) {
    for (const auto& p : group) {
        scratch.clear();
        for (auto [s, t] : cfg) {
            int a = p[s];
            int b = p[t];
            if (a > b)
                std::swap(a, b);
            scratch.emplace_back(a, b);
        }
        std::sort(scratch.begin(), scratch.end());
        if (scratch < cfg)
            return false;
    }
    return true;
}

// A configuration with no disjoint linkage, built from a vertex cut of size
// < 2k-1: pair one vertex of each side of the cut, and spend the cut
// vertices as terminals of the other pairs, which the first path would have
// to cross.
Config cut_witness(const Graph& g, const std::vector<int>& cut, int k) {
    const int n = g.size();
    std::vector<char> in_cut(n, 0);
    for (int v : cut)
        in_cut[v] = 1;
    std::vector<int> comp(n, -1);
    int components = 0;
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (in_cut[s] || comp[s] >= 0)
            continue;
        comp[s] = components++;
        queue.assign(1, s);
        for (size_t head = 0; head < queue.size(); ++head)
            for (int w : g.neighbors(queue[head]))
                if (!in_cut[w] && comp[w] < 0) {
                    comp[w] = comp[s];
                    queue.push_back(w);
                }
    }
    int s1 = -1, t1 = -1;
    for (int v = 0; v < n && t1 < 0; ++v) {
        if (in_cut[v])
            continue;
        if (s1 < 0)
            s1 = v;
        else if (comp[v] != comp[s1])
            t1 = v;
    }
    if (s1 < 0 || t1 < 0)
        throw internal_error("cut_witness: cut does not separate");
    std::vector<int> pool = cut;
    for (int v = 0; v < n && static_cast<int>(pool.size()) < 2 * k - 2; ++v)
        if (!in_cut[v] && v != s1 && v != t1)
            pool.push_back(v);
    Config cfg{{s1, t1}};
    for (size_t i = 0; i + 1 < pool.size(); i += 2)
        cfg.emplace_back(pool[i], pool[i + 1]);
    canonicalize(cfg);
    return cfg;
}

struct ShardOutcome {
    long long attempted = 0;
    long long undecided = 0;
    long long fail_index = LLONG_MAX;
    Config fail_config;
};

ShardOutcome run_shard(const Graph& g, int k, long long budget,
                       const std::vector<Permutation>* symmetry,
                       const std::vector<std::vector<int>>& dist, int tid, int nthreads,
                       std::atomic<long long>& stop_at, std::atomic<bool>& abort) {
    ShardOutcome out;
    ConfigSearch search(g);
    Config scratch;
    std::vector<int> pdist(k);
    long long counter = 0;
    for_each_config(g.size(), k, [&](const Config& cfg) -> bool {
        const long long index = counter++;
        if (abort.load(std::memory_order_relaxed))
            return false;
        if (index > stop_at.load(std::memory_order_relaxed))
            return false;
        if (index % nthreads != tid)
            return true;
        if (symmetry && !orbit_minimal(cfg, *symmetry, scratch))
            return true;
        for (int i = 0; i < k; ++i)
            pdist[i] = dist[cfg[i].first][cfg[i].second];
        ++out.attempted;
        try {
            auto res = search.run(cfg, pdist, budget);
            if (res) {
                auto val = validate_path_system(g, cfg, res->paths);
                if (!val.ok)
                    throw internal_error("oracle produced invalid system: " + val.reason);
            } else if (index < out.fail_index) {
                out.fail_index = index;
                out.fail_config = cfg;
                long long cur = stop_at.load(std::memory_order_relaxed);
                while (index < cur && !stop_at.compare_exchange_weak(cur, index)) {
                }
            }
        } catch (const budget_exhausted&) {
            ++out.undecided;
        }
        return true;
    });
    return out;
}

} // namespace

long long default_search_budget() {
    if (const char* env = std::getenv("LINKLAB_BUDGET")) {
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (errno != 0 || end == env || *end != '\0' || v <= 0)
            throw std::invalid_argument("LINKLAB_BUDGET must be a positive integer");
        return v;
    }
    return 10'000'000;
}

std::optional<PathSystem> solve_config(const Graph& g,
                                       const std::vector<std::pair<int, int>>& pairs,
                                       long long budget) {
    check_instance(g, pairs);
    std::vector<int> dist(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i)
        dist[i] = bfs_distance(g, pairs[i].first, pairs[i].second);
    ConfigSearch search(g);
    auto res = search.run(pairs, dist, budget);
    if (res) {
        auto val = validate_path_system(g, pairs, res->paths);
        if (!val.ok)
            throw internal_error("solve_config produced invalid system: " + val.reason);
    }
    return res;
}

LinkReport is_k_linked(const Graph& g, int k, const OracleOptions& opts) {
    const int n = g.size();
    if (k < 1)
        throw std::invalid_argument("is_k_linked: k must be positive");
    if (2 * k > n)
        throw std::invalid_argument("is_k_linked: need at least 2k vertices");
    if (n > oracle_max_vertices)
        throw std::invalid_argument("is_k_linked: graph exceeds " +
                                    std::to_string(oracle_max_vertices) + " vertices");
    if (opts.symmetry)
        for (const auto& p : *opts.symmetry)
            if (static_cast<int>(p.size()) != n)
                throw std::invalid_argument("is_k_linked: group permutation size mismatch");

    // k-linked graphs are (2k-1)-connected; a smaller cut gives an explicit
    // witness without enumeration.
    if (!g.is_complete()) {
        auto cut = minimum_separator(g);
        if (static_cast<int>(cut.size()) < 2 * k - 1)
            return {LinkOutcome::not_linked, cut_witness(g, cut, k), 0};
    }

    const long long budget = opts.budget >= 0 ? opts.budget : default_search_budget();
    const int nthreads = std::max(1, opts.threads);
    const auto dist = all_pairs_distance(g);
    std::atomic<long long> stop_at{LLONG_MAX};
    std::atomic<bool> abort{false};

    std::vector<ShardOutcome> shards(nthreads);
    if (nthreads == 1) {
        shards[0] = run_shard(g, k, budget, opts.symmetry, dist, 0, 1, stop_at, abort);
    } else {
        std::vector<std::thread> workers;
        std::mutex mtx;
        std::exception_ptr error;
        for (int tid = 0; tid < nthreads; ++tid)
            workers.emplace_back([&, tid] {
                try {
                    shards[tid] = run_shard(g, k, budget, opts.symmetry, dist, tid, nthreads,
                                            stop_at, abort);
                } catch (...) {
                    std::scoped_lock lock(mtx);
                    if (!error)
                        error = std::current_exception();
                    abort.store(true);
                }
            });
        for (auto& w : workers)
            w.join();
        if (error)
            std::rethrow_exception(error);
    }

    LinkReport report;
    long long undecided = 0;
    long long best = LLONG_MAX;
    for (const auto& sh : shards) {
        report.configs_checked += sh.attempted;
        undecided += sh.undecided;
        if (sh.fail_index < best) {
            best = sh.fail_index;
            report.witness = sh.fail_config;
        }
    }
    if (best != LLONG_MAX)
        report.outcome = LinkOutcome::not_linked;
    else if (undecided > 0)
        report.outcome = LinkOutcome::undecided;
    else
        report.outcome = LinkOutcome::linked;
    return report;
}

int link_number(const Graph& g, const OracleOptions& opts) {
    const int n = g.size();
    if (n <= 1 || !g.is_connected())
        return 0;
    const int kappa = vertex_connectivity(g);
    const int cap = std::min(n / 2, (kappa + 1) / 2);
    int best = 0;
    for (int k = 1; k <= cap; ++k) {
        LinkReport rep = is_k_linked(g, k, opts);
        if (rep.outcome == LinkOutcome::undecided)
            throw budget_exhausted("link_number: level " + std::to_string(k) +
                                   " undecided under budget");
        if (rep.outcome == LinkOutcome::not_linked)
            return best;
        best = k;
    }
    return best;
}

} // namespace linklab
