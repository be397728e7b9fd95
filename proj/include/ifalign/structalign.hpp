#ifndef IFALIGN_STRUCTALIGN_HPP
#define IFALIGN_STRUCTALIGN_HPP

#include <map>
#include <vector>

#include "ifalign/features.hpp"
#include "ifalign/graph.hpp"
#include "ifalign/params.hpp"
#include "ifalign/tree.hpp"

namespace ifalign {

/// Hidden correspondence b: token index -> vertex index. The root token maps
/// to the root vertex; a mapped token's vertex is reached from its head's
/// vertex by one out-edge. `edgeChoice` records which out-edge realizes each
/// non-root token (needed when parallel edges exist).
struct StructAlignment {
    std::map<int, int> pairs;               // token -> vertex
    std::map<int, int> edgeChoice;          // token -> edge index into g.edges

    bool operator==(const StructAlignment&) const = default;
};

/// |tokens| x |vertices| array of log-domain inside scores; entries finite
/// or -inf.
struct PairChart {
    std::size_t tokens = 0;
    std::size_t vertices = 0;
    std::vector<double> logScores;  // row-major [token][vertex]

    double at(std::size_t i, std::size_t j) const { return logScores[i * vertices + j]; }
    double& at(std::size_t i, std::size_t j) { return logScores[i * vertices + j]; }
};

/// theta-independent feature material for one (tree, graph) pair: every
/// node-pair and edge-pair join vector, extracted once so repeated rescoring
/// under changing theta is pure arithmetic.
struct PairFeatures {
    std::size_t tokens = 0;
    std::size_t vertices = 0;
    std::size_t edgeCount = 0;                    // graph edges
    std::vector<int> order;                       // reverse topological token order
    std::vector<std::vector<int>> deps;           // dependents per token
    std::vector<std::vector<int>> outEdges;       // out-edge ids per vertex
    std::vector<int> edgeDst;                     // per graph edge
    int rootToken = 0;
    int rootVertex = 0;
    std::vector<SparseVec> nodeVec;               // [token*vertices + vertex]
    std::vector<SparseVec> edgeVec;               // [token*edgeCount + edge], rows only for non-root tokens

    const SparseVec& node(std::size_t i, std::size_t j) const { return nodeVec[i * vertices + j]; }
    const SparseVec& edge(std::size_t k, std::size_t e) const { return edgeVec[k * edgeCount + e]; }
};

/// Extract all join vectors for the pair. In Grow mode this is the point
/// where new feature names are interned.
PairFeatures extract_pair_features(const DependencyTree& x, const GroundingGraph& g,
                                   const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                                   IndexMode mode);

/// log sum over all alignments b of psi(x, g, b), by the inside recurrence:
/// for tokens in reverse topological order and every vertex j,
///   chart[i][j] = theta . phi(tok_i, vert_j)
///               + sum_{k in deps(i)} logsumexp_{e out of j} (theta . phi(dep_ik, edge_e) + chart[k][dst(e)])
/// Result is chart[rootToken][rootVertex]; -inf when no alignment embeds
/// (a token with dependents aligned to a vertex with no out-edges contributes
/// an empty sum).
double pair_log_score_cached(const PairFeatures& pf, const ParamVector& theta, PairChart* chartOut = nullptr);
double pair_log_score_cached(const PairFeatures& pf, const std::vector<double>& weights,
                             PairChart* chartOut = nullptr);

std::pair<double, PairChart> pair_log_score(const DependencyTree& x, const GroundingGraph& g,
                                            const ParamVector& theta, const FeatureTemplateConfig& cfg,
                                            FeatureIndex& idx, IndexMode mode = IndexMode::Frozen);

/// Gradient of pair_log_score w.r.t. theta: the expected total feature vector
/// under the alignment posterior, by an outside pass over the inside chart.
/// Accumulates into `grad` (dense, sized >= theta.dim()). Throws
/// DegenerateScore when the log score is -inf.
void pair_score_gradient_cached(const PairFeatures& pf, const ParamVector& theta,
                                std::vector<double>& grad, double scale = 1.0);
void pair_score_gradient_cached(const PairFeatures& pf, const std::vector<double>& weights,
                                std::vector<double>& grad, double scale = 1.0);

SparseVec pair_score_gradient(const DependencyTree& x, const GroundingGraph& g,
                              const ParamVector& theta, const FeatureTemplateConfig& cfg,
                              FeatureIndex& idx);

/// argmax_b log psi(x, g, b) and its score; ties broken toward the lowest
/// vertex index (then lowest edge id). Throws DegenerateScore when no
/// alignment embeds.
std::pair<StructAlignment, double> best_structure_alignment_cached(const PairFeatures& pf,
                                                                   const ParamVector& theta);

std::pair<StructAlignment, double> best_structure_alignment(const DependencyTree& x, const GroundingGraph& g,
                                                            const ParamVector& theta,
                                                            const FeatureTemplateConfig& cfg, FeatureIndex& idx);

/// Test oracle: exact log sum over all alignments by explicit enumeration of
/// every (vertex, edge-choice) assignment. Throws TooLarge beyond 6 tokens or
/// 6 vertices.
double brute_force_pair_score(const DependencyTree& x, const GroundingGraph& g,
                              const ParamVector& theta, const FeatureTemplateConfig& cfg,
                              FeatureIndex& idx);

}  // namespace ifalign

#endif
