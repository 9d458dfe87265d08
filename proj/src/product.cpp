#include "linklab/product.hpp"

#include <stdexcept>
#include <string>

namespace linklab {

int ProductGraph::id_of(const std::vector<int>& coords) const {
    if (coords.size() != factors.size())
        throw std::invalid_argument("coordinate tuple has wrong arity");
    int id = 0;
    for (size_t i = 0; i < factors.size(); ++i) {
        int c = coords[i];
        if (c < 0 || c >= factors[i].size())
            throw std::invalid_argument("coordinate " + std::to_string(c) +
                                        " out of range for factor " + std::to_string(i));
        id += c * strides[i];
    }
    return id;
}

std::vector<int> ProductGraph::coord_of(int v) const {
    if (v < 0 || v >= graph.size())
        throw std::invalid_argument("product vertex out of range");
    std::vector<int> coords(factors.size());
    for (size_t i = 0; i < factors.size(); ++i)
        coords[i] = (v / strides[i]) % factors[i].size();
    return coords;
}

int ProductGraph::coord_of(int v, int factor) const {
    if (v < 0 || v >= graph.size())
        throw std::invalid_argument("product vertex out of range");
    if (factor < 0 || factor >= static_cast<int>(factors.size()))
        throw std::invalid_argument("factor index out of range");
    return (v / strides[factor]) % factors[factor].size();
}

ProductGraph product_of(std::vector<Graph> factors) {
    if (factors.empty())
        throw std::invalid_argument("product needs at least one factor");
    long total = 1;
    for (const Graph& f : factors) {
        if (f.size() == 0)
            throw std::invalid_argument("product factors must be non-empty");
        total *= f.size();
        if (total > (1L << 30))
            throw std::invalid_argument("product too large");
    }

    ProductGraph p;
    p.factors = std::move(factors);
    p.strides.assign(p.factors.size(), 1);
    for (int i = static_cast<int>(p.factors.size()) - 2; i >= 0; --i)
        p.strides[i] = p.strides[i + 1] * p.factors[i + 1].size();

    p.graph = Graph(static_cast<int>(total));
    // Edges change exactly one coordinate along an edge of that factor.
    for (int v = 0; v < p.graph.size(); ++v) {
        for (size_t i = 0; i < p.factors.size(); ++i) {
            int c = (v / p.strides[i]) % p.factors[i].size();
            for (int w : p.factors[i].neighbors(c))
                if (w > c)
                    p.graph.add_edge(v, v + (w - c) * p.strides[i]);
        }
    }
    return p;
}

ProductGraph cartesian_product(const Graph& g, const Graph& h) {
    return product_of({g, h});
}

ProductGraph make_hypercube(int n) {
    if (n < 1)
        throw std::invalid_argument("hypercube dimension must be >= 1");
    if (n > 20)
        throw std::invalid_argument("hypercube dimension too large");
    return product_of(std::vector<Graph>(static_cast<size_t>(n), make_path(2)));
}

static void check_layer_ref(const ProductGraph& p, const LayerRef& ref) {
    if (ref.factor_index < 0 || ref.factor_index >= static_cast<int>(p.factors.size()))
        throw std::invalid_argument("layer factor index out of range");
    if (ref.fixed.size() != p.factors.size())
        throw std::invalid_argument("layer fixed-coordinate tuple has wrong arity");
    for (size_t i = 0; i < p.factors.size(); ++i) {
        if (static_cast<int>(i) == ref.factor_index)
            continue;
        if (ref.fixed[i] < 0 || ref.fixed[i] >= p.factors[i].size())
            throw std::invalid_argument("layer fixed coordinate out of range for factor " +
                                        std::to_string(i));
    }
}

LayerView layer(const ProductGraph& p, const LayerRef& ref) {
    check_layer_ref(p, ref);
    int base = 0;
    for (size_t i = 0; i < p.factors.size(); ++i)
        if (static_cast<int>(i) != ref.factor_index)
            base += ref.fixed[i] * p.strides[i];

    LayerView view;
    const Graph& factor = p.factors[ref.factor_index];
    int stride = p.strides[ref.factor_index];
    view.vertex_ids.resize(factor.size());
    for (int c = 0; c < factor.size(); ++c)
        view.vertex_ids[c] = base + c * stride;
    // Induce from the product adjacency rather than copying the factor, so
    // tests can confirm the two agree.
    view.graph = p.graph.induced(view.vertex_ids);
    return view;
}

int projection(const ProductGraph& p, int v, const LayerRef& ref) {
    check_layer_ref(p, ref);
    if (v < 0 || v >= p.graph.size())
        throw std::invalid_argument("product vertex out of range");
    int base = 0;
    for (size_t i = 0; i < p.factors.size(); ++i)
        if (static_cast<int>(i) != ref.factor_index)
            base += ref.fixed[i] * p.strides[i];
    return base + p.coord_of(v, ref.factor_index) * p.strides[ref.factor_index];
}

} // namespace linklab
