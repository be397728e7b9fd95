#ifndef IFALIGN_GRAPH_HPP
#define IFALIGN_GRAPH_HPP

#include <cstddef>
#include <vector>

#include "ifalign/errors.hpp"
#include "ifalign/label.hpp"

namespace ifalign {

/// Labeled directed graph describing a (state, action, state) triple. Cycles
/// and self-loops are permitted. The root vertex carries the primitive
/// action's labels.
struct GroundingGraph {
    struct Edge {
        int src = 0;
        int dst = 0;
        LabelSet labels;
        bool operator==(const Edge&) const = default;
    };

    std::vector<LabelSet> vertexLabels;
    std::vector<Edge> edges;
    int root = 0;

    std::size_t size() const { return vertexLabels.size(); }

    int add_vertex(LabelSet labels) {
        vertexLabels.push_back(std::move(labels));
        return static_cast<int>(vertexLabels.size()) - 1;
    }
    void add_edge(int src, int dst, LabelSet labels = {}) {
        edges.push_back({src, dst, std::move(labels)});
    }

    /// Indices into `edges` of the out-edges of vertex v, in insertion order.
    std::vector<int> out_edges(int v) const;

    bool operator==(const GroundingGraph&) const = default;
};

/// ok iff edge endpoints and root are in range. Cycles and self-loops pass.
/// Violations report codes BadEdgeIndex, BadRootIndex.
Validation validate_grounding_graph(const GroundingGraph& g);

}  // namespace ifalign

#endif
