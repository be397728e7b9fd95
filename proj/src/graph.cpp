#include "ifalign/graph.hpp"

#include <string>

namespace ifalign {

std::vector<int> GroundingGraph::out_edges(int v) const {
    std::vector<int> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].src == v) out.push_back(static_cast<int>(e));
    return out;
}

Validation validate_grounding_graph(const GroundingGraph& g) {
    const int n = static_cast<int>(g.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto& edge = g.edges[e];
        if (edge.src < 0 || edge.src >= n || edge.dst < 0 || edge.dst >= n)
            return Validation::fail("BadEdgeIndex", "edge " + std::to_string(e) + " endpoint out of range");
    }
    if (g.root < 0 || g.root >= n)
        return Validation::fail("BadRootIndex", "root " + std::to_string(g.root) + " of " + std::to_string(n));
    return Validation::pass();
}

}  // namespace ifalign
