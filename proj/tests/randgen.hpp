#ifndef IFALIGN_TESTS_RANDGEN_HPP
#define IFALIGN_TESTS_RANDGEN_HPP

// Random small instances shared by the property tests and the acceptance
// suite: trees with a few tokens, graphs with cycles and self-loops, weights
// drawn from [-1, 1] over the instance's own feature index.

#include <string>
#include <vector>

#include "ifalign/features.hpp"
#include "ifalign/graph.hpp"
#include "ifalign/params.hpp"
#include "ifalign/rng.hpp"
#include "ifalign/structalign.hpp"
#include "ifalign/tree.hpp"

namespace testgen {

inline ifalign::DependencyTree random_tree(ifalign::Rng& rng, std::size_t maxTokens) {
    static const std::vector<std::string> words = {"go", "left", "two", "blocks", "turn", "hall", "red"};
    static const std::vector<std::string> rels = {"dobj", "prep", "amod", "det"};
    const std::size_t m = 1 + rng.below(maxTokens);
    ifalign::DependencyTree t;
    t.tokens.resize(m);
    t.heads.resize(m);
    t.depLabels.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        t.tokens[i].insert_symbol("word", words[rng.below(words.size())]);
        if (i == 0) {
            t.heads[i] = ifalign::DependencyTree::kRoot;
        } else {
            t.heads[i] = static_cast<int>(rng.below(i));
            t.depLabels[i].insert_symbol("rel", rels[rng.below(rels.size())]);
        }
    }
    return t;
}

inline ifalign::GroundingGraph random_graph(ifalign::Rng& rng, std::size_t maxVertices,
                                            std::size_t maxOutDegree = 3) {
    static const std::vector<std::string> types = {"move", "rotate", "clear"};
    static const std::vector<std::string> dirs = {"left", "right"};
    static const std::vector<std::string> edgeRels = {"at-dist", "destination", "self", "leaves"};
    const std::size_t n = 1 + rng.below(maxVertices);
    ifalign::GroundingGraph g;
    for (std::size_t j = 0; j < n; ++j) {
        ifalign::LabelSet labels;
        labels.insert_symbol("type", types[rng.below(types.size())]);
        if (rng.below(2) == 0) labels.insert_symbol("dir", dirs[rng.below(dirs.size())]);
        if (rng.below(3) == 0) labels.insert_real("magnitude", 1.0 + static_cast<double>(rng.below(3)));
        g.add_vertex(labels);
    }
    g.root = static_cast<int>(rng.below(n));
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t degree = rng.below(maxOutDegree + 1);
        for (std::size_t e = 0; e < degree; ++e) {
            // uniform destination: self-loops and cycles arise freely
            int dst = static_cast<int>(rng.below(n));
            ifalign::LabelSet labels;
            labels.insert_symbol("rel", edgeRels[rng.below(edgeRels.size())]);
            if (rng.below(2) == 0) labels.insert_symbol("dist", std::to_string(1 + rng.below(3)));
            g.add_edge(static_cast<int>(j), dst, labels);
        }
    }
    return g;
}

/// theta over exactly the names this instance can fire, weights in [-1, 1].
inline ifalign::ParamVector random_theta(ifalign::Rng& rng, const ifalign::DependencyTree& t,
                                         const ifalign::GroundingGraph& g,
                                         const ifalign::FeatureTemplateConfig& cfg) {
    ifalign::ParamVector theta;
    ifalign::extract_pair_features(t, g, cfg, theta.index, ifalign::IndexMode::Grow);
    theta.sync_with_index();
    for (double& w : theta.weights) w = rng.uniform(-1.0, 1.0);
    return theta;
}

}  // namespace testgen

#endif
