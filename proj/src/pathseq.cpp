#include "ifalign/pathseq.hpp"

#include <string>

namespace ifalign {

Validation Path::validate() const {
    for (std::size_t t = 0; t < steps.size(); ++t) {
        const auto& s = steps[t];
        Validation g = validate_grounding_graph(s.graph);
        if (!g.ok()) return g;
        if (s.graph.vertexLabels[s.graph.root] != s.action)
            return Validation::fail("RootActionMismatch",
                                    "step " + std::to_string(t) + " graph root does not carry the action labels");
        if (t + 1 < steps.size() && s.postState != steps[t + 1].preState)
            return Validation::fail("BrokenChain",
                                    "step " + std::to_string(t) + " post-state differs from next pre-state");
    }
    return Validation::pass();
}

bool SeqAlignment::monotone() const {
    for (std::size_t i = 1; i < assign.size(); ++i)
        if (assign[i] < assign[i - 1]) return false;
    return true;
}

bool SeqAlignment::in_range(std::size_t pathLength) const {
    for (int j : assign)
        if (j < 0 || j >= static_cast<int>(pathLength)) return false;
    return true;
}

}  // namespace ifalign
