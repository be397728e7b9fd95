#ifndef IFALIGN_PATHSEQ_HPP
#define IFALIGN_PATHSEQ_HPP

#include <string>
#include <vector>

#include "ifalign/graph.hpp"
#include "ifalign/label.hpp"
#include "ifalign/tree.hpp"

namespace ifalign {

/// Environment states are opaque ids owned by the env module; nothing outside
/// env ever interprets them.
using StateId = std::string;

struct ActionStep {
    StateId preState;
    LabelSet action;
    StateId postState;
    GroundingGraph graph;  // root vertex carries the action's labels
};

/// Demonstrated or predicted action sequence; consecutive steps chain.
struct Path {
    std::vector<ActionStep> steps;

    std::size_t length() const { return steps.size(); }
    bool empty() const { return steps.empty(); }

    /// ok iff postState of each step equals preState of the next and every
    /// step's graph root carries the step's action labels.
    Validation validate() const;
};

struct InstructionSequence {
    std::vector<DependencyTree> sentences;

    std::size_t length() const { return sentences.size(); }
    bool empty() const { return sentences.empty(); }
};

/// Monotone map from instruction index to action index: assign[i] in [0, n)
/// and assign is non-decreasing. Many instructions may share one action;
/// actions may be skipped entirely (implicit actions).
struct SeqAlignment {
    std::vector<int> assign;

    std::size_t size() const { return assign.size(); }
    bool monotone() const;
    bool in_range(std::size_t pathLength) const;

    bool operator==(const SeqAlignment&) const = default;
};

struct Demonstration {
    std::string id;
    std::string environmentId;  // env kind: maze | crossblock | map
    std::string instanceJson;   // env-specific instance, owned-by-env schema
    StateId startState;
    InstructionSequence instructions;
    Path path;
};

}  // namespace ifalign

#endif
