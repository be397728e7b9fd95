#include "ifalign/tree.hpp"

#include <string>

namespace ifalign {

int DependencyTree::root() const {
    for (std::size_t i = 0; i < heads.size(); ++i)
        if (heads[i] == kRoot) return static_cast<int>(i);
    return kRoot;
}

std::vector<int> DependencyTree::dependents(int i) const {
    std::vector<int> out;
    for (std::size_t j = 0; j < heads.size(); ++j)
        if (heads[j] == i) out.push_back(static_cast<int>(j));
    return out;
}

Validation validate_dependency_tree(const DependencyTree& t) {
    const int n = static_cast<int>(t.size());
    if (t.heads.size() != t.tokens.size() || t.depLabels.size() != t.tokens.size())
        return Validation::fail("DanglingHead", "parallel arrays disagree in length");
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        int h = t.heads[i];
        if (h == DependencyTree::kRoot) {
            ++roots;
        } else if (h < 0 || h >= n) {
            return Validation::fail("DanglingHead",
                                    "token " + std::to_string(i) + " heads out-of-range " + std::to_string(h));
        } else if (h == i) {
            return Validation::fail("CyclicParse", "token " + std::to_string(i) + " heads itself");
        }
    }
    if (roots > 1) return Validation::fail("MultipleRoots", std::to_string(roots) + " ROOT tokens");
    // chase heads; with all heads in range, never reaching ROOT means a cycle
    // (this also covers the zero-root case)
    for (int i = 0; i < n; ++i) {
        int cur = i;
        int steps = 0;
        while (cur != DependencyTree::kRoot) {
            cur = t.heads[cur];
            if (++steps > n)
                return Validation::fail("CyclicParse", "head chain from token " + std::to_string(i) + " cycles");
        }
    }
    return Validation::pass();
}

std::vector<int> reverse_topological_order(const DependencyTree& t) {
    std::vector<int> out;
    out.reserve(t.size());
    // post-order walk, dependents ascending, so the root lands last
    auto walk = [&](auto&& self, int i) -> void {
        for (int d : t.dependents(i)) self(self, d);
        out.push_back(i);
    };
    walk(walk, t.root());
    return out;
}

}  // namespace ifalign
