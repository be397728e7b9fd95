#ifndef IFALIGN_IO_HPP
#define IFALIGN_IO_HPP

#include <string>
#include <vector>

#include "ifalign/features.hpp"
#include "ifalign/learn.hpp"
#include "ifalign/pathseq.hpp"

#include "json.hpp"

namespace ifalign {

using Json = nlohmann::ordered_json;

// Label values in JSON: number -> real, string -> symbol, {"str": ...} -> string.
Json labelset_to_json(const LabelSet& s);
LabelSet labelset_from_json(const Json& j);

Json tree_to_json(const DependencyTree& t);
DependencyTree tree_from_json(const Json& j);

/// One dataset record: instructions with their parses, the environment
/// instance, the start state, and the action sequence. The path is rebuilt by
/// replay on load.
Json demonstration_to_json(const Demonstration& d);
Demonstration demonstration_from_json(const Json& j);  // replays + validates

std::vector<Demonstration> read_demonstrations_jsonl(const std::string& path);
void write_demonstrations_jsonl(const std::vector<Demonstration>& demos, const std::string& path);

/// Versioned model file with an explicit feature-name table and an FNV-1a
/// checksum over the canonical payload.
constexpr int kModelFormatVersion = 1;

std::string model_to_string(const TrainedModel& m);
TrainedModel model_from_string(const std::string& text);  // throws ChecksumMismatch / UnknownVersion

void model_save(const TrainedModel& m, const std::string& path);
TrainedModel model_load(const std::string& path);

Json feature_config_to_json(const FeatureTemplateConfig& cfg);
FeatureTemplateConfig feature_config_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ifalign

#endif
