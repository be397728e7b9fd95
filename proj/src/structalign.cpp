#include "ifalign/structalign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ifalign/errors.hpp"

namespace ifalign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double logsumexp(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

/// theta-dependent scores of every cached join vector.
struct DotTables {
    std::vector<double> node;  // [token * V + vertex]
    std::vector<double> edge;  // [token * E + edge]
};

DotTables compute_dots(const PairFeatures& pf, const std::vector<double>& weights) {
    DotTables dots;
    dots.node.resize(pf.nodeVec.size());
    for (std::size_t p = 0; p < pf.nodeVec.size(); ++p) dots.node[p] = sparse_dot(pf.nodeVec[p], weights);
    dots.edge.resize(pf.edgeVec.size());
    for (int i : pf.order) {
        if (i == pf.rootToken) continue;
        for (std::size_t e = 0; e < pf.edgeCount; ++e) {
            std::size_t p = static_cast<std::size_t>(i) * pf.edgeCount + e;
            dots.edge[p] = sparse_dot(pf.edgeVec[p], weights);
        }
    }
    return dots;
}

/// Inside recurrence over the dot tables; returns the chart.
PairChart inside_chart(const PairFeatures& pf, const DotTables& dots) {
    PairChart chart;
    chart.tokens = pf.tokens;
    chart.vertices = pf.vertices;
    chart.logScores.assign(pf.tokens * pf.vertices, kNegInf);
    std::vector<double> terms;
    for (int i : pf.order) {
        const auto& deps = pf.deps[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < pf.vertices; ++j) {
            double s = dots.node[static_cast<std::size_t>(i) * pf.vertices + j];
            for (int k : deps) {
                terms.clear();
                for (int e : pf.outEdges[j]) {
                    double inner = chart.at(static_cast<std::size_t>(k),
                                            static_cast<std::size_t>(pf.edgeDst[static_cast<std::size_t>(e)]));
                    if (inner == kNegInf) continue;
                    terms.push_back(dots.edge[static_cast<std::size_t>(k) * pf.edgeCount +
                                              static_cast<std::size_t>(e)] +
                                    inner);
                }
                double lse = logsumexp(terms);
                if (lse == kNegInf) {
                    s = kNegInf;
                    break;
                }
                s += lse;
            }
            chart.at(static_cast<std::size_t>(i), j) = s;
        }
    }
    return chart;
}

}  // namespace

PairFeatures extract_pair_features(const DependencyTree& x, const GroundingGraph& g,
                                   const FeatureTemplateConfig& cfg, FeatureIndex& idx, IndexMode mode) {
    PairFeatures pf;
    pf.tokens = x.size();
    pf.vertices = g.size();
    pf.edgeCount = g.edges.size();
    pf.order = reverse_topological_order(x);
    pf.deps.resize(pf.tokens);
    for (std::size_t i = 0; i < pf.tokens; ++i) pf.deps[i] = x.dependents(static_cast<int>(i));
    pf.outEdges.resize(pf.vertices);
    for (std::size_t j = 0; j < pf.vertices; ++j) pf.outEdges[j] = g.out_edges(static_cast<int>(j));
    pf.edgeDst.resize(pf.edgeCount);
    for (std::size_t e = 0; e < pf.edgeCount; ++e) pf.edgeDst[e] = g.edges[e].dst;
    pf.rootToken = x.root();
    pf.rootVertex = g.root;

    pf.nodeVec.resize(pf.tokens * pf.vertices);
    for (std::size_t i = 0; i < pf.tokens; ++i)
        for (std::size_t j = 0; j < pf.vertices; ++j)
            pf.nodeVec[i * pf.vertices + j] = join_features(x.tokens[i], g.vertexLabels[j], cfg, idx, mode);

    pf.edgeVec.resize(pf.tokens * pf.edgeCount);
    for (std::size_t k = 0; k < pf.tokens; ++k) {
        if (static_cast<int>(k) == pf.rootToken) continue;
        for (std::size_t e = 0; e < pf.edgeCount; ++e)
            pf.edgeVec[k * pf.edgeCount + e] = join_features(x.depLabels[k], g.edges[e].labels, cfg, idx, mode);
    }
    return pf;
}

double pair_log_score_cached(const PairFeatures& pf, const std::vector<double>& weights,
                             PairChart* chartOut) {
    DotTables dots = compute_dots(pf, weights);
    PairChart chart = inside_chart(pf, dots);
    double score = chart.at(static_cast<std::size_t>(pf.rootToken), static_cast<std::size_t>(pf.rootVertex));
    if (chartOut) *chartOut = std::move(chart);
    return score;
}

double pair_log_score_cached(const PairFeatures& pf, const ParamVector& theta, PairChart* chartOut) {
    return pair_log_score_cached(pf, theta.weights, chartOut);
}

std::pair<double, PairChart> pair_log_score(const DependencyTree& x, const GroundingGraph& g,
                                            const ParamVector& theta, const FeatureTemplateConfig& cfg,
                                            FeatureIndex& idx, IndexMode mode) {
    PairFeatures pf = extract_pair_features(x, g, cfg, idx, mode);
    PairChart chart;
    double score = pair_log_score_cached(pf, theta, &chart);
    return {score, std::move(chart)};
}

void pair_score_gradient_cached(const PairFeatures& pf, const std::vector<double>& weights,
                                std::vector<double>& grad, double scale) {
    DotTables dots = compute_dots(pf, weights);
    PairChart in = inside_chart(pf, dots);
    const std::size_t rt = static_cast<std::size_t>(pf.rootToken);
    const std::size_t rv = static_cast<std::size_t>(pf.rootVertex);
    const double z = in.at(rt, rv);
    if (z == kNegInf) throw Error(Err::DegenerateScore, "no alignment embeds; gradient undefined");

    // outside scores, heads before dependents
    std::vector<double> out(pf.tokens * pf.vertices, kNegInf);
    out[rt * pf.vertices + rv] = 0.0;

    // per (head, vertex, dependent): logsumexp over the head vertex's
    // out-edges of edge score + dependent inside
    auto dep_lse = [&](std::size_t k, std::size_t j) {
        double acc = kNegInf;
        for (int e : pf.outEdges[j]) {
            double inner = in.at(k, static_cast<std::size_t>(pf.edgeDst[static_cast<std::size_t>(e)]));
            if (inner == kNegInf) continue;
            acc = log_add(acc, dots.edge[k * pf.edgeCount + static_cast<std::size_t>(e)] + inner);
        }
        return acc;
    };

    std::vector<int> forward(pf.order.rbegin(), pf.order.rend());
    for (int i : forward) {
        const auto& deps = pf.deps[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < pf.vertices; ++j) {
            double oij = out[static_cast<std::size_t>(i) * pf.vertices + j];
            if (oij == kNegInf) continue;

            // node posterior
            double pij = std::exp(oij + in.at(static_cast<std::size_t>(i), j) - z);
            if (pij > 0.0)
                for (const auto& [c, v] : pf.node(static_cast<std::size_t>(i), j).entries())
                    grad[static_cast<std::size_t>(c)] += scale * pij * v;

            if (deps.empty()) continue;
            std::vector<double> lse(deps.size());
            for (std::size_t d = 0; d < deps.size(); ++d)
                lse[d] = dep_lse(static_cast<std::size_t>(deps[d]), j);

            for (std::size_t d = 0; d < deps.size(); ++d) {
                // sibling total without d; recomputed rather than subtracted so
                // a -inf sibling can never produce -inf minus -inf
                double base = 0.0;
                for (std::size_t d2 = 0; d2 < deps.size(); ++d2) {
                    if (d2 == d) continue;
                    if (lse[d2] == kNegInf) {
                        base = kNegInf;
                        break;
                    }
                    base += lse[d2];
                }
                if (base == kNegInf) continue;
                const std::size_t k = static_cast<std::size_t>(deps[d]);
                double prefix = oij + dots.node[static_cast<std::size_t>(i) * pf.vertices + j] + base;
                for (int e : pf.outEdges[j]) {
                    double contrib = prefix + dots.edge[k * pf.edgeCount + static_cast<std::size_t>(e)];
                    std::size_t dst = static_cast<std::size_t>(pf.edgeDst[static_cast<std::size_t>(e)]);
                    double& slot = out[k * pf.vertices + dst];
                    slot = log_add(slot, contrib);
                    double inner = in.at(k, dst);
                    if (inner == kNegInf) continue;
                    double pEdge = std::exp(contrib + inner - z);
                    if (pEdge > 0.0)
                        for (const auto& [c, v] : pf.edge(k, static_cast<std::size_t>(e)).entries())
                            grad[static_cast<std::size_t>(c)] += scale * pEdge * v;
                }
            }
        }
    }
}

void pair_score_gradient_cached(const PairFeatures& pf, const ParamVector& theta,
                                std::vector<double>& grad, double scale) {
    pair_score_gradient_cached(pf, theta.weights, grad, scale);
}

SparseVec pair_score_gradient(const DependencyTree& x, const GroundingGraph& g, const ParamVector& theta,
                              const FeatureTemplateConfig& cfg, FeatureIndex& idx) {
    PairFeatures pf = extract_pair_features(x, g, cfg, idx, IndexMode::Frozen);
    std::vector<double> grad(static_cast<std::size_t>(theta.dim()), 0.0);
    pair_score_gradient_cached(pf, theta, grad);
    SparseVec out;
    for (std::size_t c = 0; c < grad.size(); ++c)
        if (grad[c] != 0.0) out.add(static_cast<int>(c), grad[c]);
    return out;
}

std::pair<StructAlignment, double> best_structure_alignment_cached(const PairFeatures& pf,
                                                                   const ParamVector& theta) {
    DotTables dots = compute_dots(pf, theta.weights);
    std::vector<double> chart(pf.tokens * pf.vertices, kNegInf);
    // choice[i][j * deg + d] = argmax edge for dependent d of token i at vertex j
    std::vector<std::vector<int>> choice(pf.tokens);
    for (std::size_t i = 0; i < pf.tokens; ++i)
        choice[i].assign(pf.vertices * pf.deps[i].size(), -1);

    for (int i : pf.order) {
        const auto& deps = pf.deps[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < pf.vertices; ++j) {
            double s = dots.node[static_cast<std::size_t>(i) * pf.vertices + j];
            for (std::size_t d = 0; d < deps.size() && s != kNegInf; ++d) {
                const std::size_t k = static_cast<std::size_t>(deps[d]);
                double best = kNegInf;
                int bestE = -1, bestDst = -1;
                for (int e : pf.outEdges[j]) {
                    int dst = pf.edgeDst[static_cast<std::size_t>(e)];
                    double inner = chart[k * pf.vertices + static_cast<std::size_t>(dst)];
                    if (inner == kNegInf) continue;
                    double cand = dots.edge[k * pf.edgeCount + static_cast<std::size_t>(e)] + inner;
                    // ties resolve to the lowest destination vertex, then the
                    // lowest edge id (ascending e makes the latter automatic)
                    if (cand > best || (cand == best && dst < bestDst)) {
                        best = cand;
                        bestE = e;
                        bestDst = dst;
                    }
                }
                if (bestE < 0) {
                    s = kNegInf;
                    break;
                }
                s += best;
                choice[static_cast<std::size_t>(i)][j * deps.size() + d] = bestE;
            }
            chart[static_cast<std::size_t>(i) * pf.vertices + j] = s;
        }
    }

    const std::size_t rt = static_cast<std::size_t>(pf.rootToken);
    const std::size_t rv = static_cast<std::size_t>(pf.rootVertex);
    double best = chart[rt * pf.vertices + rv];
    if (best == kNegInf) throw Error(Err::DegenerateScore, "no alignment embeds");

    StructAlignment a;
    auto backtrack = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        a.pairs[static_cast<int>(i)] = static_cast<int>(j);
        const auto& deps = pf.deps[i];
        for (std::size_t d = 0; d < deps.size(); ++d) {
            int e = choice[i][j * deps.size() + d];
            a.edgeChoice[deps[d]] = e;
            self(self, static_cast<std::size_t>(deps[d]),
                 static_cast<std::size_t>(pf.edgeDst[static_cast<std::size_t>(e)]));
        }
    };
    backtrack(backtrack, rt, rv);
    return {std::move(a), best};
}

std::pair<StructAlignment, double> best_structure_alignment(const DependencyTree& x, const GroundingGraph& g,
                                                            const ParamVector& theta,
                                                            const FeatureTemplateConfig& cfg,
                                                            FeatureIndex& idx) {
    PairFeatures pf = extract_pair_features(x, g, cfg, idx, IndexMode::Frozen);
    return best_structure_alignment_cached(pf, theta);
}

double brute_force_pair_score(const DependencyTree& x, const GroundingGraph& g, const ParamVector& theta,
                              const FeatureTemplateConfig& cfg, FeatureIndex& idx) {
    if (x.size() > 6 || g.size() > 6)
        throw Error(Err::TooLarge, "enumeration oracle is capped at 6 tokens and 6 vertices");
    PairFeatures pf = extract_pair_features(x, g, cfg, idx, IndexMode::Frozen);
    DotTables dots = compute_dots(pf, theta.weights);

    const int T = static_cast<int>(pf.tokens);
    std::vector<int> assign(pf.tokens, -1);
    std::vector<double> terms;

    // for a fixed vertex assignment, walk every edge choice of every non-root
    // token and record one term per complete configuration
    auto edges_rec = [&](auto&& self, int pos, double acc) -> void {
        if (pos == T) {
            terms.push_back(acc);
            return;
        }
        const std::size_t k = static_cast<std::size_t>(pos);
        if (pos == pf.rootToken) {
            self(self, pos + 1, acc);
            return;
        }
        const int head = x.heads[k];
        for (std::size_t e = 0; e < pf.edgeCount; ++e) {
            if (g.edges[e].src != assign[static_cast<std::size_t>(head)] ||
                g.edges[e].dst != assign[k])
                continue;
            self(self, pos + 1, acc + dots.edge[k * pf.edgeCount + e]);
        }
    };

    auto vertices_rec = [&](auto&& self, int pos) -> void {
        if (pos == T) {
            double acc = 0.0;
            for (int i = 0; i < T; ++i)
                acc += dots.node[static_cast<std::size_t>(i) * pf.vertices +
                                 static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
            edges_rec(edges_rec, 0, acc);
            return;
        }
        if (pos == pf.rootToken) {
            assign[static_cast<std::size_t>(pos)] = pf.rootVertex;
            self(self, pos + 1);
            return;
        }
        for (std::size_t j = 0; j < pf.vertices; ++j) {
            assign[static_cast<std::size_t>(pos)] = static_cast<int>(j);
            self(self, pos + 1);
        }
    };
    vertices_rec(vertices_rec, 0);
    return logsumexp(terms);
}

}  // namespace ifalign
