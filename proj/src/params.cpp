#include "ifalign/params.hpp"

#include <cmath>

namespace ifalign {

int FeatureIndex::lookup(const std::string& name, IndexMode mode) {
    auto it = byName_.find(name);
    if (it != byName_.end()) return it->second;
    switch (mode) {
        case IndexMode::Grow: {
            int coord = static_cast<int>(names_.size());
            names_.push_back(name);
            byName_.emplace(name, coord);
            return coord;
        }
        case IndexMode::Frozen:
            return -1;
        case IndexMode::FrozenStrict:
            throw Error(Err::FrozenIndexMiss, name);
    }
    return -1;
}

int FeatureIndex::find(const std::string& name) const {
    auto it = byName_.find(name);
    return it == byName_.end() ? -1 : it->second;
}

void ParamVector::set(const std::string& name, double w, IndexMode mode) {
    int c = index.lookup(name, mode);
    if (c < 0) return;
    sync_with_index();
    weights[static_cast<std::size_t>(c)] = w;
}

Validation ParamVector::validate() const {
    if (index.size() != dim())
        return Validation::fail("DimensionMismatch",
                                std::to_string(index.size()) + " names over " + std::to_string(dim()) + " weights");
    for (double w : weights)
        if (!std::isfinite(w)) return Validation::fail("NonFiniteWeight", "");
    return Validation::pass();
}

}  // namespace ifalign
