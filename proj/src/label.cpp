#include "ifalign/label.hpp"

#include <algorithm>
#include <cstdio>

namespace ifalign {

std::string value_to_string(const LabelValue& v) {
    if (const auto* s = std::get_if<Symbol>(&v)) return s->text;
    if (const auto* s = std::get_if<StringVal>(&v)) return "\"" + s->text + "\"";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", std::get<double>(v));
    return buf;
}

LabelSet::LabelSet(std::initializer_list<Label> init) {
    for (const auto& l : init) insert(l);
}

void LabelSet::insert(Label l) {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it != labels_.end() && *it == l) return;
    labels_.insert(it, std::move(l));
}

bool LabelSet::contains(const Label& l) const {
    return std::binary_search(labels_.begin(), labels_.end(), l);
}

std::vector<LabelValue> LabelSet::values(const std::string& key) const {
    std::vector<LabelValue> out;
    for (const auto& l : labels_)
        if (l.key == key) out.push_back(l.value);
    return out;
}

std::string LabelSet::symbol(const std::string& key) const {
    for (const auto& l : labels_)
        if (l.key == key && is_symbol(l.value)) return std::get<Symbol>(l.value).text;
    return "";
}

std::string LabelSet::canonical() const {
    std::string out;
    for (const auto& l : labels_) {
        if (!out.empty()) out += ",";
        out += l.key;
        out += "=";
        out += value_to_string(l.value);
    }
    return out;
}

}  // namespace ifalign
