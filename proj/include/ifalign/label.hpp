#ifndef IFALIGN_LABEL_HPP
#define IFALIGN_LABEL_HPP

#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace ifalign {

/// A symbol is a bare identifier-like atom (e.g. North); a string is free text
/// (e.g. a landmark name) and participates in edit-distance features instead of
/// indicator conjunctions.
struct Symbol {
    std::string text;
    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

struct StringVal {
    std::string text;
    bool operator==(const StringVal&) const = default;
    auto operator<=>(const StringVal&) const = default;
};

using LabelValue = std::variant<Symbol, StringVal, double>;

struct Label {
    std::string key;
    LabelValue value;

    bool operator==(const Label&) const = default;
    auto operator<=>(const Label&) const = default;
};

inline bool is_symbol(const LabelValue& v) { return std::holds_alternative<Symbol>(v); }
inline bool is_string(const LabelValue& v) { return std::holds_alternative<StringVal>(v); }
inline bool is_real(const LabelValue& v) { return std::holds_alternative<double>(v); }

/// Canonical text form: symbols print bare, strings quoted, reals via %g.
std::string value_to_string(const LabelValue& v);

/// A finite set of labels; kept sorted by (key, value) so iteration order,
/// serialization, and feature names are canonical. Duplicate (key, value)
/// pairs collapse.
class LabelSet {
public:
    LabelSet() = default;
    LabelSet(std::initializer_list<Label> init);

    void insert(Label l);
    void insert_symbol(const std::string& key, const std::string& sym) {
        insert({key, Symbol{sym}});
    }
    void insert_string(const std::string& key, const std::string& s) {
        insert({key, StringVal{s}});
    }
    void insert_real(const std::string& key, double x) { insert({key, x}); }

    const std::vector<Label>& labels() const { return labels_; }
    bool empty() const { return labels_.empty(); }
    std::size_t size() const { return labels_.size(); }
    bool contains(const Label& l) const;

    /// All values stored under `key` (a key may carry several values).
    std::vector<LabelValue> values(const std::string& key) const;

    /// First symbol value under `key`, or empty string if none.
    std::string symbol(const std::string& key) const;

    /// Canonical "k=v,k=v" form; used for tie-breaks and state-free hashing.
    std::string canonical() const;

    bool operator==(const LabelSet&) const = default;

private:
    std::vector<Label> labels_;  // sorted, unique
};

}  // namespace ifalign

#endif
