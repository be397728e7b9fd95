#ifndef IFALIGN_FEATURES_HPP
#define IFALIGN_FEATURES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ifalign/graph.hpp"
#include "ifalign/label.hpp"
#include "ifalign/params.hpp"

namespace ifalign {

/// Sparse feature vector: sorted unique (coordinate, value) pairs with no
/// explicit zeros.
class SparseVec {
public:
    using Entry = std::pair<int, double>;

    SparseVec() = default;

    void add(int coord, double value);
    double get(int coord) const;
    void scale(double a);
    void axpy(double a, const SparseVec& other);  // this += a * other

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    int max_coord() const { return entries_.empty() ? -1 : entries_.back().first; }

    bool operator==(const SparseVec&) const = default;

private:
    std::vector<Entry> entries_;  // sorted by coordinate
};

/// sum over entries of value * weight. Throws CoordinateOutOfRange if any
/// coordinate exceeds the parameter dimension.
double sparse_dot(const SparseVec& v, const ParamVector& theta);
double sparse_dot(const SparseVec& v, const std::vector<double>& weights);

/// Unit-cost insert/delete/substitute edit distance.
std::size_t levenshtein(const std::string& s, const std::string& t);

/// 1 - dist/max(|s|,|t|); two empty strings compare as 1.0.
double edit_similarity(const std::string& s, const std::string& t);

/// Which joining templates are enabled and their options. The two path-level
/// toggles control the text-independent potentials built from these same
/// parameters (root-label indicators and length buckets).
struct FeatureTemplateConfig {
    bool bias = true;
    bool symbolConjunction = true;
    bool stringEditBucket = true;
    bool symbolRealProduct = true;

    /// Strictly increasing similarity boundaries; the largest boundary <= sim
    /// fires a single indicator, below the lowest nothing fires.
    std::vector<double> editBuckets = {0.5, 0.75, 0.9, 1.0};

    /// When nonempty, only these (left key, right key) pairs join in the
    /// conjunction/edit/product templates.
    std::vector<std::pair<std::string, std::string>> keyPairFilter;

    /// Text-independent potentials: per-step root-label indicators psi(y) and
    /// path-length buckets psi(n).
    bool pathFeatures = true;
    bool lengthFeatures = true;

    /// Length bucket cap: exact-n indicators up to this, one overflow beyond.
    int lengthBucketMax = 20;

    bool failOnUnseen = false;

    IndexMode effective(IndexMode requested) const {
        if (requested != IndexMode::Grow && failOnUnseen) return IndexMode::FrozenStrict;
        return requested;
    }

    Validation validate() const;
};

/// The joining feature function phi: maps a pair of label sets (linguistic
/// side first) to a sparse feature vector. Deterministic given (a, b, cfg);
/// unseen names grow the index in Grow mode and drop in Frozen mode.
SparseVec join_features(const LabelSet& a, const LabelSet& b,
                        const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                        IndexMode mode);

/// Text-independent per-step features psi(y): one indicator per symbol label
/// on the grounding-graph root, namespaced "path:".
SparseVec path_features(const GroundingGraph& g, const FeatureTemplateConfig& cfg,
                        FeatureIndex& idx, IndexMode mode);

/// Path-length features psi(n): exact-length indicator up to the bucket cap,
/// overflow bucket beyond.
SparseVec length_features(std::size_t n, const FeatureTemplateConfig& cfg,
                          FeatureIndex& idx, IndexMode mode);

}  // namespace ifalign

#endif
