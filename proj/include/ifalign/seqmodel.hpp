#ifndef IFALIGN_SEQMODEL_HPP
#define IFALIGN_SEQMODEL_HPP

#include <utility>
#include <vector>

#include "ifalign/features.hpp"
#include "ifalign/params.hpp"
#include "ifalign/pathseq.hpp"
#include "ifalign/structalign.hpp"

namespace ifalign {

/// m x n matrix of cached pair log-potentials psi(x_i, y_j).
struct PairScoreMatrix {
    std::size_t m = 0;  // instructions
    std::size_t n = 0;  // actions
    std::vector<double> scores;  // row-major

    double at(std::size_t i, std::size_t j) const { return scores[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return scores[i * n + j]; }
};

PairScoreMatrix build_pair_matrix(const InstructionSequence& x, const Path& y,
                                  const ParamVector& theta, const FeatureTemplateConfig& cfg,
                                  FeatureIndex& idx, IndexMode mode = IndexMode::Frozen);

/// The three additive pieces of the path potential.
struct PathPotentialBreakdown {
    double lengthTerm = 0.0;                 // psi(n)
    std::vector<double> stepTerms;           // psi(y_j) per step
    std::vector<std::pair<int, double>> pairTerms;  // (instruction i, psi(x_i, y_{a_i}))
    double total = 0.0;
};

/// psi(n) + sum_j psi(y_j) + sum_i psi(x_i, y_{a_i}). Throws
/// NonMonotoneAlignment / IndexOutOfRange on a bad alignment.
PathPotentialBreakdown path_log_potential(const InstructionSequence& x, const Path& y,
                                          const SeqAlignment& a, const ParamVector& theta,
                                          const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                                          IndexMode mode = IndexMode::Frozen);

/// argmax over monotone non-decreasing alignments of sum_i P[i][a_i], exact
/// in O(mn). Ties resolve to the forward-lexicographically smallest argmax
/// (each a_i as small as possible, from i = 0 up). Throws EmptyMatrix when
/// m = 0 or n = 0.
std::pair<SeqAlignment, double> viterbi_sequence_alignment(const PairScoreMatrix& P);

/// Test oracle: exhaustive enumeration over all monotone alignments in
/// lexicographic order, keeping the first maximum. Throws TooLarge beyond
/// m, n = 6.
std::pair<SeqAlignment, double> brute_force_alignment(const PairScoreMatrix& P);

}  // namespace ifalign

#endif
