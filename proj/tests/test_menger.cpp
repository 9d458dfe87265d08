#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "linklab/errors.hpp"
#include "linklab/menger.hpp"
#include "linklab/paths.hpp"
#include "support.hpp"

using namespace linklab;

namespace {

// Full check of a successful fan-in result against its request.
void check_success(const Graph& g, const MengerRequest& req,
                   const MengerResult& res) {
    auto sources = req.sources;
    auto sinks = req.sinks;
    std::sort(sources.begin(), sources.end());
    std::sort(sinks.begin(), sinks.end());
    REQUIRE(res.system.paths.size() == sources.size());
    REQUIRE(res.system.pairing.size() == sources.size());
    std::set<int> seen;
    std::set<int> sinks_taken;
    std::set<int> banned(req.forbidden.begin(), req.forbidden.end());
    for (size_t i = 0; i < sources.size(); ++i) {
        const auto& path = res.system.paths[i];
        REQUIRE(!path.empty());
        CHECK(path.front() == sources[i]);
        int pairing = res.system.pairing[i];
        REQUIRE(pairing >= 0);
        REQUIRE(pairing < static_cast<int>(sinks.size()));
        CHECK(path.back() == sinks[pairing]);
        CHECK(sinks_taken.insert(pairing).second);
        for (size_t j = 0; j + 1 < path.size(); ++j)
            CHECK(g.adjacent(path[j], path[j + 1]));
        for (int v : path) {
            CHECK(seen.insert(v).second);
            CHECK(!banned.count(v));
        }
    }
}

// A failure separator must be small and must really cut every residual
// source-to-sink connection.
void check_separator(const Graph& g, const MengerRequest& req,
                     const MengerResult& res) {
    CHECK(res.separator.size() < req.sources.size());
    std::vector<char> removed(g.size(), 0);
    for (int v : req.forbidden)
        removed[v] = 1;
    for (int v : res.separator)
        removed[v] = 1;
    std::vector<char> reach(g.size(), 0);
    std::vector<int> stack;
    for (int s : req.sources)
        if (!removed[s]) {
            reach[s] = 1;
            stack.push_back(s);
        }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (!removed[w] && !reach[w]) {
                reach[w] = 1;
                stack.push_back(w);
            }
    }
    for (int t : req.sinks)
        CHECK((removed[t] || !reach[t]));
}

} // namespace

TEST_CASE("complete graph routes any fan-in") {
    Graph g = make_complete(5);
    MengerRequest req{{0, 1}, {3, 4}, {2}};
    auto res = menger_link(g, req);
    REQUIRE(res.success);
    check_success(g, req, res);
}

TEST_CASE("path graph has an obvious bottleneck") {
    // Both sources sit left of vertex 2, so two disjoint routes cannot fit.
    Graph g = make_path(5);
    MengerRequest req{{0, 1}, {3, 4}, {}};
    auto res = menger_link(g, req);
    REQUIRE(!res.success);
    check_separator(g, req, res);
}

TEST_CASE("surplus sinks stay optional") {
    Graph g = make_path(5);
    MengerRequest req{{0}, {2, 4}, {}};
    auto res = menger_link(g, req);
    REQUIRE(res.success);
    check_success(g, req, res);
}

TEST_CASE("malformed requests are rejected") {
    Graph g = make_cycle(6);
    CHECK_THROWS_AS(menger_link(g, {{0, 1}, {1, 2}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(menger_link(g, {{0}, {2}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(menger_link(g, {{0, 1, 2}, {3, 4}, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(menger_link(g, {{0}, {6}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(menger_link(g, {{}, {1}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(menger_link(g, {{0, 0}, {1, 2}, {}}), std::invalid_argument);
}

TEST_CASE("random requests agree with the reference enumeration") {
    std::mt19937 rng(411791);
    int done = 0;
    while (done < 220) {
        std::uniform_int_distribution<int> size(4, 10);
        const int n = size(rng);
        std::uniform_real_distribution<double> dens(0.25, 0.55);
        Graph g = support::random_graph(rng, n, dens(rng));
        std::uniform_int_distribution<int> nsrc(1, 3);
        const int ks = std::min(nsrc(rng), n / 3);
        if (ks < 1)
            continue;
        std::uniform_int_distribution<int> nsink(ks, 4);
        const int kt = std::min(nsink(rng), n - ks - 1);
        if (kt < ks)
            continue;
        std::uniform_int_distribution<int> nban(0, 2);
        const int kb = std::min(nban(rng), n - ks - kt);
        auto ids = support::sample_vertices(rng, n, ks + kt + kb);
        MengerRequest req;
        req.sources.assign(ids.begin(), ids.begin() + ks);
        req.sinks.assign(ids.begin() + ks, ids.begin() + ks + kt);
        req.forbidden.assign(ids.begin() + ks + kt, ids.end());
        auto res = menger_link(g, req);
        bool expected = support::reference_menger_exists(g, req.sources,
                                                         req.sinks,
                                                         req.forbidden);
        CHECK(res.success == expected);
        if (res.success)
            check_success(g, req, res);
        else
            check_separator(g, req, res);
        ++done;
    }
    CHECK(done >= 200);
}

TEST_CASE("truncation returns the shortest accepted prefix") {
    std::mt19937 rng(99172);
    int cases = 0;
    while (cases < 520) {
        std::uniform_int_distribution<int> len(1, 12);
        const int m = len(rng);
        auto path = support::sample_vertices(rng, 40, m);
        std::bernoulli_distribution flip(0.2);
        std::vector<char> ok(40, 0);
        for (int v = 0; v < 40; ++v)
            ok[v] = flip(rng);
        auto accept = [&](int v) { return ok[v] != 0; };
        int first = -1;
        for (int i = 0; i < m && first < 0; ++i)
            if (ok[path[i]])
                first = i;
        if (first < 0) {
            CHECK_THROWS_AS(truncate_path(path, accept), not_found);
        } else {
            auto pre = truncate_path(path, accept);
            REQUIRE(static_cast<int>(pre.size()) == first + 1);
            for (int i = 0; i <= first; ++i)
                CHECK(pre[i] == path[i]);
            CHECK(accept(pre.back()));
            for (size_t i = 0; i + 1 < pre.size(); ++i)
                CHECK(!accept(pre[i]));
        }
        ++cases;
    }
    CHECK(cases >= 500);
}
