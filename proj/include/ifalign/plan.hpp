#ifndef IFALIGN_PLAN_HPP
#define IFALIGN_PLAN_HPP

#include <optional>
#include <string>

#include "ifalign/env.hpp"
#include "ifalign/features.hpp"
#include "ifalign/params.hpp"
#include "ifalign/pathseq.hpp"
#include "ifalign/seqmodel.hpp"

namespace ifalign {

enum class LengthMode {
    Fixed,             // only paths of exactly maxLength complete
    BoundedAllLengths, // best complete path per length 1..maxLength
};

struct PlanConfig {
    int beamWidth = 32;
    int maxLength = 8;
    LengthMode lengthMode = LengthMode::BoundedAllLengths;
    int icmRoundsInfer = 3;

    Validation validate() const;
};

struct PlanResult {
    Path path;
    SeqAlignment alignment;
    double score = 0.0;  // psi(n) + sum psi(y_j) + aligned pair terms
};

/// Beam search over action prefixes. Incomplete prefixes are ranked by
/// sum psi(y_j) plus pair terms under the fixed alignment when given, else a
/// greedy frontier alignment (each instruction binds to its best prefix step,
/// monotonically, left to right). Complete paths are scored exactly
/// (Viterbi alignment over the full prefix) including psi(n); in
/// bounded-all-lengths mode the best complete path per length competes in a
/// final argmax. For goal-bearing environments only goal states complete.
/// Ties break toward the smaller action-serialization sequence, prefixes
/// before their extensions. Throws NoPathFound.
PlanResult beam_search_plan(const InstructionSequence& x, const EnvironmentModel& env,
                            const StateId& start, const std::optional<SeqAlignment>& fixedAlignment,
                            const ParamVector& theta, const FeatureTemplateConfig& cfg,
                            FeatureIndex& idx, const PlanConfig& planCfg);

/// Test-time iterated conditional modes: initialize the alignment against a
/// text-free beam plan, then alternate beam planning under the fixed
/// alignment with exact Viterbi re-alignment, keeping only strict joint-score
/// improvements. At most icmRoundsInfer rounds or until a fixed point.
PlanResult icm_infer(const InstructionSequence& x, const EnvironmentModel& env,
                     const StateId& start, const ParamVector& theta,
                     const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                     const PlanConfig& planCfg);

/// Test oracle: joint argmax over all paths (per the same completeness rule)
/// and monotone alignments by explicit enumeration. Throws TooLarge when the
/// reachable state space exceeds 10^4 states or the prefix count explodes.
PlanResult exhaustive_plan(const InstructionSequence& x, const EnvironmentModel& env,
                           const StateId& start, const ParamVector& theta,
                           const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                           const PlanConfig& planCfg);

}  // namespace ifalign

#endif
