#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "linklab/connectivity.hpp"
#include "linklab/errors.hpp"
#include "linklab/families.hpp"
#include "linklab/oracle.hpp"

using namespace linklab;

namespace {

bool is_automorphism(const Graph& g, const Permutation& pi) {
    if (static_cast<int>(pi.size()) != g.size())
        return false;
    for (auto [u, v] : g.edges())
        if (!g.adjacent(pi[u], pi[v]))
            return false;
    return true;
}

} // namespace

TEST_CASE("display names") {
    CHECK(family_name({"hypercube", {4}}) == "Q4");
    CHECK(family_name({"torus", {3, 4}}) == "C3xC4");
    CHECK(family_name({"grid", {2, 3, 3}}) == "P2xP3xP3");
}

TEST_CASE("expected link numbers follow the established table") {
    CHECK(expected_link({"hypercube", {1}}) == 1);
    CHECK(expected_link({"hypercube", {2}}) == 1);
    CHECK(expected_link({"hypercube", {3}}) == 1); // the n = 3 exception
    CHECK(expected_link({"hypercube", {4}}) == 2);
    CHECK(expected_link({"hypercube", {5}}) == 3);
    CHECK(expected_link({"hypercube", {6}}) == 3);
    CHECK(expected_link({"hypercube", {7}}) == 4);

    CHECK(expected_link({"torus", {4}}) == 1);
    CHECK(expected_link({"torus", {3, 3}}) == 2);
    CHECK(expected_link({"torus", {5, 7}}) == 2);
    CHECK(expected_link({"torus", {3, 3, 3}}) == 3);
    CHECK(expected_link({"torus", {3, 4, 5, 6}}) == 4);

    CHECK(expected_link({"grid", {5}}) == 1);
    CHECK(expected_link({"grid", {2, 2}}) == 1);
    CHECK(expected_link({"grid", {4, 7}}) == 1);
    CHECK(expected_link({"grid", {2, 2, 2}}) == 1);
    CHECK(expected_link({"grid", {2, 2, 9}}) == 1);
    CHECK(expected_link({"grid", {3, 3, 3}}) == 2);
    CHECK(expected_link({"grid", {3, 4, 5}}) == 2);
    CHECK(expected_link({"grid", {2, 3, 3}}) == 2);
    CHECK(expected_link({"grid", {2, 2, 2, 2}}) == 2);
    CHECK(expected_link({"grid", {2, 3, 4, 5, 6}}) == 3);

    // Sizes are order-insensitive for the three-factor special cases.
    CHECK(expected_link({"grid", {3, 2, 3}}) == 2);
    CHECK(expected_link({"grid", {9, 2, 2}}) == 1);
}

TEST_CASE("the undetermined grid shapes refuse a value") {
    CHECK_THROWS_AS(expected_link({"grid", {2, 3, 4}}), unsupported_instance);
    CHECK_THROWS_AS(expected_link({"grid", {2, 4, 4}}), unsupported_instance);
    CHECK_THROWS_AS(expected_link({"grid", {5, 2, 3}}), unsupported_instance);
}

TEST_CASE("malformed specs are rejected") {
    CHECK_THROWS_AS(expected_link({"hypercube", {0}}), std::invalid_argument);
    CHECK_THROWS_AS(expected_link({"hypercube", {2, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(expected_link({"torus", {2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(expected_link({"torus", {}}), std::invalid_argument);
    CHECK_THROWS_AS(expected_link({"grid", {1, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(expected_link({"mesh", {3}}), std::invalid_argument);
    CHECK_THROWS_AS(build_family({"mesh", {3}}), std::invalid_argument);
}

TEST_CASE("built families have the right shape") {
    ProductGraph q4 = build_family({"hypercube", {4}});
    CHECK(q4.graph.size() == 16);
    for (int v = 0; v < 16; ++v)
        CHECK(q4.graph.degree(v) == 4);
    CHECK(vertex_connectivity(q4.graph) == 4);

    ProductGraph t = build_family({"torus", {3, 4}});
    CHECK(t.graph.size() == 12);
    for (int v = 0; v < 12; ++v)
        CHECK(t.graph.degree(v) == 4);

    ProductGraph g = build_family({"grid", {2, 3, 3}});
    CHECK(g.graph.size() == 18);
    CHECK(g.factors.size() == 3);
    CHECK(vertex_connectivity(g.graph) == 3);
}

TEST_CASE("family automorphism groups act on the family") {
    struct Row {
        FamilySpec spec;
        size_t order;
    };
    std::vector<Row> table = {
        {{"hypercube", {3}}, 48},   // 2^3 * 3!
        {{"torus", {3, 3}}, 72},    // (2*3)^2 * 2
        {{"torus", {3, 4}}, 48},    // 6 * 8, no factor swap
        {{"grid", {3, 3}}, 8},      // 2 * 2 * 2
        {{"grid", {2, 3}}, 4},
    };
    for (const Row& row : table) {
        ProductGraph p = build_family(row.spec);
        auto perms = family_automorphisms(row.spec);
        CHECK(perms.size() == row.order);
        std::set<Permutation> unique(perms.begin(), perms.end());
        CHECK(unique.size() == perms.size());
        for (const Permutation& pi : perms)
            CHECK(is_automorphism(p.graph, pi));
    }
    CHECK(family_automorphisms({"hypercube", {7}}).empty());
}

TEST_CASE("small expected values agree with the oracle") {
    CHECK(link_number(build_family({"hypercube", {2}}).graph) ==
          expected_link({"hypercube", {2}}));
    CHECK(link_number(build_family({"hypercube", {3}}).graph) ==
          expected_link({"hypercube", {3}}));
    CHECK(link_number(build_family({"grid", {2, 4}}).graph) ==
          expected_link({"grid", {2, 4}}));
    CHECK(link_number(build_family({"torus", {3, 3}}).graph) ==
          expected_link({"torus", {3, 3}}));
}

TEST_CASE("reproduction table passes at exhaustive sizes") {
    auto rows = reproduce_families(16, false, 2);
    REQUIRE(!rows.empty());
    std::set<std::string> names;
    for (const ReproRow& r : rows) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.ok);
        CHECK(r.mode == "oracle");
        CHECK(r.computed == r.expected);
        CHECK(r.vertices <= 16);
        names.insert(r.name);
    }
    CHECK(names.count("Q4"));
    CHECK(names.count("C3xC3"));
    CHECK(names.count("C4xC4"));
    CHECK(names.count("P2xP2"));
    CHECK(!names.count("Q5"));
    CHECK(names.size() == rows.size()); // no duplicate rows
}

TEST_CASE("reproduction table certifies sampled sizes") {
    auto rows = reproduce_families(28, false, 2);
    bool sampled = false;
    for (const ReproRow& r : rows) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.ok);
        CHECK(r.mode != "bound");
        if (r.mode == "sampled") {
            sampled = true;
            CHECK(r.configs_checked > 0);
            CHECK(r.computed == -1);
        }
    }
    CHECK(sampled);
}
