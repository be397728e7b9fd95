#ifndef IFALIGN_TREE_HPP
#define IFALIGN_TREE_HPP

#include <vector>

#include "ifalign/errors.hpp"
#include "ifalign/label.hpp"

namespace ifalign {

/// Rooted labeled dependency tree over sentence tokens. `heads[i]` is the head
/// token index, or kRoot for the single root token. `depLabels[i]` labels the
/// edge heads[i] -> i (empty for the root).
struct DependencyTree {
    static constexpr int kRoot = -1;

    std::vector<LabelSet> tokens;     // per-token labels, word form at minimum
    std::vector<int> heads;
    std::vector<LabelSet> depLabels;  // parallel to tokens

    std::size_t size() const { return tokens.size(); }
    int root() const;

    /// Dependent indices of token i, ascending.
    std::vector<int> dependents(int i) const;
};

/// ok iff: exactly one root, heads in range, head relation acyclic.
/// Violations report codes CyclicParse, MultipleRoots, DanglingHead.
Validation validate_dependency_tree(const DependencyTree& t);

/// Token order where every token appears after all of its dependents and the
/// root comes last. Siblings are emitted in ascending token index.
/// Precondition: t valid.
std::vector<int> reverse_topological_order(const DependencyTree& t);

}  // namespace ifalign

#endif
