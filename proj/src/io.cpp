#include "linklab/io.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace linklab {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument("malformed JSON");
    return j;
}

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("malformed input: " + what);
}

int get_int(const json& j, const char* what) {
    if (!j.is_number_integer())
        bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::vector<std::pair<int, int>> int_pairs(const json& j, const char* what) {
    if (!j.is_array())
        bad(std::string(what) + " must be an array");
    std::vector<std::pair<int, int>> out;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2)
            bad(std::string(what) + " entries must be [int, int]");
        out.emplace_back(get_int(e[0], what), get_int(e[1], what));
    }
    return out;
}

Graph graph_from(const json& j) {
    if (!j.is_object() || !j.contains("n"))
        bad("graph object needs an \"n\" field");
    int n = get_int(j["n"], "n");
    if (n < 0)
        bad("n must be non-negative");
    Graph g(n);
    if (j.contains("edges"))
        for (auto [u, v] : int_pairs(j["edges"], "edges")) {
            if (u < 0 || u >= n || v < 0 || v >= n || u == v)
                bad("edge [" + std::to_string(u) + ", " + std::to_string(v) +
                    "] is out of range");
            g.add_edge(u, v);
        }
    return g;
}

ProductGraph product_from(const json& j) {
    if (j.is_object() && j.contains("factors")) {
        if (!j["factors"].is_array() || j["factors"].empty())
            bad("\"factors\" must be a non-empty array");
        std::vector<Graph> factors;
        for (const json& f : j["factors"])
            factors.push_back(graph_from(f));
        return product_of(std::move(factors));
    }
    return product_of({graph_from(j)});
}

json graph_json(const Graph& g) {
    json j;
    j["n"] = g.size();
    j["edges"] = json::array();
    for (auto [u, v] : g.edges())
        j["edges"].push_back({u, v});
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

Graph graph_from_json(const std::string& text) {
    json j = parse(text);
    if (j.is_object() && j.contains("factors"))
        return product_from(j).graph;
    return graph_from(j);
}

ProductGraph product_from_json(const std::string& text) {
    return product_from(parse(text));
}

Instance instance_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("pairs"))
        bad("instance needs a \"pairs\" field");
    Instance inst;
    inst.product = product_from(j);
    inst.pairs = int_pairs(j["pairs"], "pairs");
    if (j.contains("a"))
        inst.a = get_int(j["a"], "a");
    if (j.contains("b"))
        inst.b = get_int(j["b"], "b");
    return inst;
}

Certificate certificate_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("paths"))
        bad("certificate needs a \"paths\" field");
    if (!j["paths"].is_array())
        bad("\"paths\" must be an array");
    Certificate cert;
    for (const json& p : j["paths"]) {
        if (!p.is_array())
            bad("each path must be an array of vertex ids");
        std::vector<int> path;
        for (const json& v : p)
            path.push_back(get_int(v, "path vertex"));
        cert.system.paths.push_back(std::move(path));
    }
    if (j.contains("pairing")) {
        if (!j["pairing"].is_array())
            bad("\"pairing\" must be an array");
        for (const json& v : j["pairing"])
            cert.system.pairing.push_back(get_int(v, "pairing"));
    } else {
        for (size_t i = 0; i < cert.system.paths.size(); ++i)
            cert.system.pairing.push_back(static_cast<int>(i));
    }
    if (j.contains("trace")) {
        if (!j["trace"].is_array())
            bad("\"trace\" must be an array of strings");
        for (const json& s : j["trace"]) {
            if (!s.is_string())
                bad("\"trace\" must be an array of strings");
            cert.trace.push_back(s.get<std::string>());
        }
    }
    return cert;
}

std::vector<std::pair<int, int>> pairs_from_json(const std::string& text) {
    json j = parse(text);
    if (j.is_object()) {
        if (!j.contains("pairs"))
            bad("no \"pairs\" field");
        return int_pairs(j["pairs"], "pairs");
    }
    return int_pairs(j, "pairs");
}

std::optional<FamilySpec> family_tag_from_json(const std::string& text) {
    json j = parse(text);
    if (!j.is_object() || !j.contains("family"))
        return std::nullopt;
    const json& f = j["family"];
    if (!f.is_object() || !f.contains("kind") || !f.contains("sizes") ||
        !f["kind"].is_string() || !f["sizes"].is_array())
        return std::nullopt;
    FamilySpec spec;
    spec.kind = f["kind"].get<std::string>();
    for (const json& s : f["sizes"])
        spec.sizes.push_back(get_int(s, "sizes"));
    return spec;
}

std::string graph_to_json(const Graph& g) { return dump(graph_json(g)); }

std::string product_to_json(const ProductGraph& p, const FamilySpec* family) {
    json j;
    j["factors"] = json::array();
    for (const Graph& f : p.factors)
        j["factors"].push_back(graph_json(f));
    if (family) {
        j["family"] = {{"kind", family->kind}, {"sizes", family->sizes}};
    }
    return dump(j);
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["factors"] = json::array();
    for (const Graph& f : inst.product.factors)
        j["factors"].push_back(graph_json(f));
    j["pairs"] = json::array();
    for (auto [s, t] : inst.pairs)
        j["pairs"].push_back({s, t});
    if (inst.a > 0)
        j["a"] = inst.a;
    if (inst.b > 0)
        j["b"] = inst.b;
    return dump(j);
}

std::string certificate_to_json(const Certificate& cert) {
    json j;
    j["paths"] = json::array();
    for (const auto& p : cert.system.paths)
        j["paths"].push_back(p);
    j["pairing"] = cert.system.pairing;
    j["trace"] = cert.trace;
    return dump(j);
}

Graph graph_from_edgelist(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#')
            continue;
        std::istringstream ls(line);
        long u, v;
        if (!(ls >> u >> v) || u < 0 || v < 0 || u == v || u > 1 << 30 ||
            v > 1 << 30)
            bad("edge list line \"" + line + "\"");
        std::string rest;
        if (ls >> rest)
            bad("edge list line \"" + line + "\" has trailing tokens");
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
        n = std::max(n, static_cast<int>(std::max(u, v)) + 1);
    }
    Graph g(n);
    for (auto [u, v] : edges)
        g.add_edge(u, v);
    return g;
}

} // namespace linklab
