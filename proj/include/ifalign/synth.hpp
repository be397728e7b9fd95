#ifndef IFALIGN_SYNTH_HPP
#define IFALIGN_SYNTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ifalign/pathseq.hpp"
#include "ifalign/tree.hpp"

namespace ifalign {

/// One instruction template: a line of tokens with hand-built dependency
/// structure and placeholder slots (<num>, <floor>, <object>, <name>,
/// <sidew>, <posw>, <orientw>) filled at generation time.
struct InstructionTemplate {
    std::string slot;               // e.g. "maze.rotate.left"
    std::vector<std::string> words; // may contain placeholders
    std::vector<int> heads;         // kRoot for the root token
    std::vector<std::string> deps;  // dependency relation per token ("" for root)
};

/// Template bank parsed from the plain-text format:
///   <slot> :: word/head/dep word/head/dep ...
/// with head 0 meaning ROOT, otherwise the 1-based index of the head token.
/// '#' starts a comment line.
struct TemplateBank {
    std::vector<InstructionTemplate> templates;

    std::vector<const InstructionTemplate*> for_slot(const std::string& slot) const;
    bool empty() const { return templates.empty(); }
};

TemplateBank parse_template_bank(const std::string& text);
TemplateBank load_template_bank(const std::string& path);

/// The default bank shipped with the generator (same format as the file).
const std::string& builtin_template_text();

struct GeneratorOptions {
    std::string envKind = "maze";     // maze | crossblock | map
    int count = 100;
    std::uint64_t seed = 1;
    double redundancyRate = 0.0;      // chance of a duplicate paraphrase sentence
    double dropRate = 0.0;            // chance a step's sentence is dropped
    bool singleInstruction = false;   // emit one-sentence, one-action demos
    bool holdoutVocabulary = false;   // draw open-class fillers from the held-out pool
};

/// Deterministic synthetic demonstrations: sampled instances, gold paths
/// planned under a generator-truth scoring rule, templated instructions with
/// hand-built parses. Every demonstration replays to its recorded end state.
/// Throws GenerationFailure when no solvable instance emerges after bounded
/// retries.
std::vector<Demonstration> generate_synthetic_dataset(const GeneratorOptions& opts,
                                                      const TemplateBank& bank);

}  // namespace ifalign

#endif
