#ifndef LINKLAB_IO_HPP
#define LINKLAB_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linklab/families.hpp"
#include "linklab/graph.hpp"
#include "linklab/paths.hpp"
#include "linklab/product.hpp"

namespace linklab {

// JSON formats.  Every loader throws std::invalid_argument with a short
// reason on malformed input.
//
//   graph     {"n": int, "edges": [[u, v], ...]}
//   product   {"factors": [graph, ...], "family"?: {"kind": str, "sizes": [int, ...]}}
//   instance  {"factors": [graph, ...], "pairs": [[s, t], ...], "a"?: int, "b"?: int}
//   cert      {"paths": [[v, ...], ...], "pairing": [int, ...], "trace"?: [str, ...]}
//
// A plain graph object is accepted wherever a product is expected (it
// becomes the sole factor), and a product wherever a graph is expected (it
// flattens on load).  "pairs" alone (a bare [[s, t], ...] array or an
// object with a "pairs" key) is accepted by pairs_from_json.

struct Instance {
    ProductGraph product;
    std::vector<std::pair<int, int>> pairs;
    int a = 0; // 0 when the field is absent
    int b = 0;
};

struct Certificate {
    PathSystem system;
    std::vector<std::string> trace;
};

Graph graph_from_json(const std::string& text);
ProductGraph product_from_json(const std::string& text);
Instance instance_from_json(const std::string& text);
Certificate certificate_from_json(const std::string& text);
std::vector<std::pair<int, int>> pairs_from_json(const std::string& text);

// The "family" tag emitted by the generator, when present and well formed.
std::optional<FamilySpec> family_tag_from_json(const std::string& text);

std::string graph_to_json(const Graph& g);
std::string product_to_json(const ProductGraph& p,
                            const FamilySpec* family = nullptr);
std::string instance_to_json(const Instance& inst);
std::string certificate_to_json(const Certificate& cert);

// Whitespace-separated "u v" lines; n is one past the largest id seen.
// Blank lines and lines starting with '#' are skipped.
Graph graph_from_edgelist(const std::string& text);

} // namespace linklab

#endif
