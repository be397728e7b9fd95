#ifndef IFALIGN_PARAMS_HPP
#define IFALIGN_PARAMS_HPP

#include <string>
#include <unordered_map>
#include <vector>

#include "ifalign/errors.hpp"

namespace ifalign {

/// How feature lookups treat names not yet in the index.
enum class IndexMode {
    Grow,         // intern unseen names (training)
    Frozen,       // drop unseen names silently (inference)
    FrozenStrict, // throw FrozenIndexMiss on unseen names
};

/// Bijection feature name <-> dense coordinate. Insertion-ordered, so the
/// mapping is deterministic given the computation order that created it.
class FeatureIndex {
public:
    /// Coordinate for `name` under `mode`; -1 when dropped (Frozen).
    int lookup(const std::string& name, IndexMode mode);

    /// Coordinate or -1; never grows.
    int find(const std::string& name) const;

    const std::string& name(int coord) const { return names_.at(coord); }
    const std::vector<std::string>& names() const { return names_; }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> byName_;
};

/// Dense weight vector plus the feature-name bijection over its coordinates.
/// The index may run ahead of the weights while features materialize;
/// sync_with_index() pads new coordinates with `fill`.
struct ParamVector {
    FeatureIndex index;
    std::vector<double> weights;

    int dim() const { return static_cast<int>(weights.size()); }

    double weight(const std::string& name) const {
        int c = index.find(name);
        return c < 0 ? 0.0 : weights.at(c);
    }
    void set(const std::string& name, double w, IndexMode mode = IndexMode::Grow);

    void sync_with_index(double fill = 0.0) {
        weights.resize(static_cast<std::size_t>(index.size()), fill);
    }

    /// all weights finite and index total over weights
    Validation validate() const;
};

}  // namespace ifalign

#endif
