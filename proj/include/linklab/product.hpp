#ifndef LINKLAB_PRODUCT_HPP
#define LINKLAB_PRODUCT_HPP

#include <vector>

#include "linklab/graph.hpp"

namespace linklab {

// Cartesian product of one or more factors.  Vertex ids are row-major over
// factor coordinates: the last factor's coordinate varies fastest.
struct ProductGraph {
    Graph graph;                // flattened product
    std::vector<Graph> factors; // factor list, in order
    std::vector<int> strides;   // strides[i] = product of sizes of factors after i

    int id_of(const std::vector<int>& coords) const;
    std::vector<int> coord_of(int v) const;
    int coord_of(int v, int factor) const;
};

// Identifies one layer: the copy of factors[factor_index] obtained by
// freezing every other coordinate.  fixed[factor_index] is ignored (use -1).
struct LayerRef {
    int factor_index = 0;
    std::vector<int> fixed;
};

struct LayerView {
    Graph graph;                 // induced subgraph, isomorphic to the factor
    std::vector<int> vertex_ids; // product ids, indexed by factor-local vertex
};

ProductGraph product_of(std::vector<Graph> factors);
ProductGraph cartesian_product(const Graph& g, const Graph& h);

// Q_n as the n-fold product of P_2 factors.  Vertex v has coordinate i
// equal to the i-th most significant bit of v.
ProductGraph make_hypercube(int n);

// Induced layer; by construction its graph equals the factor exactly.
LayerView layer(const ProductGraph& p, const LayerRef& ref);

// Image of vertex v in the given layer: keep v's coordinate along the
// layer's factor, replace all others by the layer's fixed coordinates.
int projection(const ProductGraph& p, int v, const LayerRef& ref);

} // namespace linklab

#endif
