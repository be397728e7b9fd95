#include "ifalign/seqmodel.hpp"

#include <limits>
#include <string>

#include "ifalign/errors.hpp"

namespace ifalign {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

PairScoreMatrix build_pair_matrix(const InstructionSequence& x, const Path& y, const ParamVector& theta,
                                  const FeatureTemplateConfig& cfg, FeatureIndex& idx, IndexMode mode) {
    PairScoreMatrix P;
    P.m = x.length();
    P.n = y.length();
    P.scores.resize(P.m * P.n, 0.0);
    for (std::size_t i = 0; i < P.m; ++i)
        for (std::size_t j = 0; j < P.n; ++j)
            P.at(i, j) = pair_log_score(x.sentences[i], y.steps[j].graph, theta, cfg, idx, mode).first;
    return P;
}

PathPotentialBreakdown path_log_potential(const InstructionSequence& x, const Path& y,
                                          const SeqAlignment& a, const ParamVector& theta,
                                          const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                                          IndexMode mode) {
    if (a.size() != x.length())
        throw Error(Err::IndexOutOfRange, "alignment covers " + std::to_string(a.size()) + " of " +
                                              std::to_string(x.length()) + " instructions");
    if (!a.monotone()) throw Error(Err::NonMonotoneAlignment, "assignments decrease");
    if (!a.in_range(y.length()))
        throw Error(Err::IndexOutOfRange, "assignment exceeds path length " + std::to_string(y.length()));

    PathPotentialBreakdown b;
    b.lengthTerm = sparse_dot(length_features(y.length(), cfg, idx, mode), theta);
    b.total = b.lengthTerm;
    b.stepTerms.reserve(y.length());
    for (const auto& step : y.steps) {
        double t = sparse_dot(path_features(step.graph, cfg, idx, mode), theta);
        b.stepTerms.push_back(t);
        b.total += t;
    }
    b.pairTerms.reserve(x.length());
    for (std::size_t i = 0; i < x.length(); ++i) {
        double t = pair_log_score(x.sentences[i], y.steps[static_cast<std::size_t>(a.assign[i])].graph,
                                  theta, cfg, idx, mode)
                       .first;
        b.pairTerms.emplace_back(static_cast<int>(i), t);
        b.total += t;
    }
    return b;
}

std::pair<SeqAlignment, double> viterbi_sequence_alignment(const PairScoreMatrix& P) {
    if (P.m == 0 || P.n == 0) throw Error(Err::EmptyMatrix, "alignment needs at least one row and column");
    const std::size_t m = P.m, n = P.n;
    // G[i][j]: best total over rows i..m-1 with row i assigned to column j.
    // suffix[i][j] = max over j' >= j of G[i][j'], so maxima are exact copies
    // and the forward scan can compare with ==.
    std::vector<double> G(m * n), suffix(m * n);
    for (std::size_t ii = m; ii-- > 0;) {
        for (std::size_t jj = n; jj-- > 0;) {
            double below = ii + 1 < m ? suffix[(ii + 1) * n + jj] : 0.0;
            G[ii * n + jj] = P.at(ii, jj) + below;
            suffix[ii * n + jj] = G[ii * n + jj];
            if (jj + 1 < n && suffix[ii * n + jj + 1] > suffix[ii * n + jj])
                suffix[ii * n + jj] = suffix[ii * n + jj + 1];
        }
    }
    SeqAlignment a;
    a.assign.resize(m);
    std::size_t lo = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double target = suffix[i * n + lo];
        std::size_t j = lo;
        while (G[i * n + j] != target) ++j;
        a.assign[i] = static_cast<int>(j);
        lo = j;
    }
    return {std::move(a), suffix[0]};
}

std::pair<SeqAlignment, double> brute_force_alignment(const PairScoreMatrix& P) {
    if (P.m == 0 || P.n == 0) throw Error(Err::EmptyMatrix, "alignment needs at least one row and column");
    if (P.m > 6 || P.n > 6) throw Error(Err::TooLarge, "enumeration oracle is capped at 6x6");
    SeqAlignment best;
    double bestScore = kNegInf;
    std::vector<int> cur(P.m);
    // lexicographic enumeration keeping the first strict maximum mirrors the
    // forward-smallest tie-break of the exact decoder
    auto rec = [&](auto&& self, std::size_t i, int lo, double acc) -> void {
        if (i == P.m) {
            if (acc > bestScore) {
                bestScore = acc;
                best.assign = cur;
            }
            return;
        }
        for (int j = lo; j < static_cast<int>(P.n); ++j) {
            cur[i] = j;
            self(self, i + 1, j, acc + P.at(i, static_cast<std::size_t>(j)));
        }
    };
    rec(rec, 0, 0, 0.0);
    return {std::move(best), bestScore};
}

}  // namespace ifalign
