#include "ifalign/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifalign/errors.hpp"

namespace ifalign {

void SparseVec::add(int coord, double value) {
    if (value == 0.0) return;
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                               [](const Entry& e, int c) { return e.first < c; });
    if (it != entries_.end() && it->first == coord) {
        it->second += value;
        if (it->second == 0.0) entries_.erase(it);
        return;
    }
    entries_.insert(it, {coord, value});
}

double SparseVec::get(int coord) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), coord,
                               [](const Entry& e, int c) { return e.first < c; });
    return (it != entries_.end() && it->first == coord) ? it->second : 0.0;
}

void SparseVec::scale(double a) {
    if (a == 0.0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_) e.second *= a;
}

void SparseVec::axpy(double a, const SparseVec& other) {
    if (a == 0.0) return;
    for (const auto& e : other.entries_) add(e.first, a * e.second);
}

double sparse_dot(const SparseVec& v, const std::vector<double>& weights) {
    double acc = 0.0;
    for (const auto& [coord, value] : v.entries()) {
        if (coord < 0 || static_cast<std::size_t>(coord) >= weights.size())
            throw Error(Err::CoordinateOutOfRange, "coordinate " + std::to_string(coord) + " over dim " +
                                                       std::to_string(weights.size()));
        acc += value * weights[static_cast<std::size_t>(coord)];
    }
    return acc;
}

double sparse_dot(const SparseVec& v, const ParamVector& theta) { return sparse_dot(v, theta.weights); }

std::size_t levenshtein(const std::string& s, const std::string& t) {
    const std::size_t m = s.size(), n = t.size();
    if (m == 0) return n;
    if (n == 0) return m;
    std::vector<std::size_t> prev(n + 1), cur(n + 1);
    for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= n; ++j) {
            std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

double edit_similarity(const std::string& s, const std::string& t) {
    if (s.empty() && t.empty()) return 1.0;
    double denom = static_cast<double>(std::max(s.size(), t.size()));
    return 1.0 - static_cast<double>(levenshtein(s, t)) / denom;
}

Validation FeatureTemplateConfig::validate() const {
    for (std::size_t i = 0; i < editBuckets.size(); ++i) {
        if (editBuckets[i] <= 0.0 || editBuckets[i] > 1.0)
            return Validation::fail("BadEditBuckets", "boundaries must lie in (0, 1]");
        if (i > 0 && editBuckets[i] <= editBuckets[i - 1])
            return Validation::fail("BadEditBuckets", "boundaries must increase strictly");
    }
    if (lengthBucketMax < 1) return Validation::fail("BadLengthBucketMax", "cap must be at least 1");
    return Validation::pass();
}

namespace {

std::string real_to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

bool pair_allowed(const FeatureTemplateConfig& cfg, const std::string& ka, const std::string& kb) {
    if (cfg.keyPairFilter.empty()) return true;
    for (const auto& [l, r] : cfg.keyPairFilter)
        if (l == ka && r == kb) return true;
    return false;
}

void emit(SparseVec& out, FeatureIndex& idx, IndexMode mode, const std::string& name, double value) {
    int coord = idx.lookup(name, mode);
    if (coord >= 0) out.add(coord, value);
}

}  // namespace

SparseVec join_features(const LabelSet& a, const LabelSet& b, const FeatureTemplateConfig& cfg,
                        FeatureIndex& idx, IndexMode mode) {
    const IndexMode em = cfg.effective(mode);
    SparseVec out;
    if (cfg.bias) emit(out, idx, em, "bias", 1.0);
    for (const auto& la : a.labels()) {
        for (const auto& lb : b.labels()) {
            if (!pair_allowed(cfg, la.key, lb.key)) continue;
            if (cfg.symbolConjunction && is_symbol(la.value) && is_symbol(lb.value)) {
                emit(out, idx, em,
                     la.key + "=" + std::get<Symbol>(la.value).text + "∧" + lb.key + "=" +
                         std::get<Symbol>(lb.value).text,
                     1.0);
            }
            if (cfg.stringEditBucket && is_string(la.value) && is_string(lb.value)) {
                double sim = edit_similarity(std::get<StringVal>(la.value).text,
                                             std::get<StringVal>(lb.value).text);
                // single indicator for the largest boundary at or below sim
                const double* best = nullptr;
                for (const double& b0 : cfg.editBuckets)
                    if (b0 <= sim) best = &b0;
                if (best)
                    emit(out, idx, em, "edit:" + la.key + "~" + lb.key + ">=" + real_to_string(*best), 1.0);
            }
            if (cfg.symbolRealProduct) {
                if (is_symbol(la.value) && is_real(lb.value))
                    emit(out, idx, em, la.key + "=" + std::get<Symbol>(la.value).text + "*" + lb.key,
                         std::get<double>(lb.value));
                if (is_real(la.value) && is_symbol(lb.value))
                    emit(out, idx, em, la.key + "*" + lb.key + "=" + std::get<Symbol>(lb.value).text,
                         std::get<double>(la.value));
            }
        }
    }
    return out;
}

SparseVec path_features(const GroundingGraph& g, const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                        IndexMode mode) {
    SparseVec out;
    if (!cfg.pathFeatures) return out;
    const IndexMode em = cfg.effective(mode);
    for (const auto& l : g.vertexLabels[static_cast<std::size_t>(g.root)].labels())
        if (is_symbol(l.value))
            emit(out, idx, em, "path:" + l.key + "=" + std::get<Symbol>(l.value).text, 1.0);
    return out;
}

SparseVec length_features(std::size_t n, const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                          IndexMode mode) {
    SparseVec out;
    if (!cfg.lengthFeatures) return out;
    const IndexMode em = cfg.effective(mode);
    if (n <= static_cast<std::size_t>(cfg.lengthBucketMax))
        emit(out, idx, em, "len=" + std::to_string(n), 1.0);
    else
        emit(out, idx, em, "len>" + std::to_string(cfg.lengthBucketMax), 1.0);
    return out;
}

}  // namespace ifalign
