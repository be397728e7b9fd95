#ifndef IFALIGN_LEARN_HPP
#define IFALIGN_LEARN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ifalign/env.hpp"
#include "ifalign/features.hpp"
#include "ifalign/lbfgs.hpp"
#include "ifalign/params.hpp"
#include "ifalign/pathseq.hpp"

namespace ifalign {

/// Alternative actions for one demonstrated step; the gold action is always
/// a member.
struct StepCandidates {
    std::vector<ActionStep> options;
    std::size_t goldIndex = 0;
};

using CandidateSet = std::vector<StepCandidates>;  // per step

struct TrainConfig {
    int k = 16;                 // candidate cap per step
    int icmRounds = 5;
    std::uint64_t seed = 1;
    double l2 = 1e-3;
    double initScale = 0.01;
    OptimizerSettings optimizer;

    Validation validate() const;
};

struct RoundDiagnostics {
    int round = 0;
    int alignmentChanges = 0;
    double objectiveBefore = 0.0;
    double objectiveAfter = 0.0;
    int optimizerIterations = 0;
};

struct TrainedModel {
    ParamVector theta;
    FeatureTemplateConfig featureConfig;
    TrainConfig trainConfig;
    std::string envKind;
    std::vector<RoundDiagnostics> diagnostics;
    bool converged = false;  // alignments reached a fixed point before the round cap
};

/// All legal successors of each step's pre-state when they fit the cap K,
/// otherwise a seeded uniform sample of K-1 plus the gold action.
CandidateSet build_candidate_sets(const Demonstration& demo, const EnvironmentModel& env,
                                  int k, std::uint64_t seed);

/// Per-step contrastive log-likelihood with its exact gradient:
///   sum_demos sum_j [ s(gold_j) - logsumexp_{y in cand_j} s(y) ] - l2/2 |theta|^2
/// where s(y) = psi(y) + sum_{i: a_i = j} psi(x_i, y). The length potential
/// psi(n) cancels per step and is excluded. `mode` Grow materializes feature
/// coordinates (init-filled by the caller's sync policy).
std::pair<double, SparseVec> contrastive_objective(
    const std::vector<Demonstration>& demos, const std::vector<SeqAlignment>& alignments,
    const std::vector<CandidateSet>& candidates, ParamVector& theta,
    const FeatureTemplateConfig& cfg, double l2, IndexMode mode = IndexMode::Frozen);

/// Iterated conditional modes over (alignments, theta): exact Viterbi
/// re-alignment against the gold path, then L-BFGS on the contrastive
/// objective, candidate sets refreshed each round with a round-salted seed.
/// Stops early when no alignment changes.
TrainedModel train_icm(const std::vector<Demonstration>& demos, const EnvironmentModel& env,
                       const TrainConfig& cfg, const FeatureTemplateConfig& featureCfg);

/// Variant taking a per-demonstration environment (each demo may carry its
/// own instance, as the synthetic datasets do).
TrainedModel train_icm(const std::vector<Demonstration>& demos,
                       const std::vector<const EnvironmentModel*>& envs,
                       const TrainConfig& cfg, const FeatureTemplateConfig& featureCfg);

/// Max relative error between the analytic gradient and central finite
/// differences over all (or a sampled 200) coordinates; denominator
/// max(1, |analytic|, |numeric|).
double finite_difference_gradcheck(const ObjectiveFn& f, const std::vector<double>& theta,
                                   double step, int maxCoords = 200);

}  // namespace ifalign

#endif
