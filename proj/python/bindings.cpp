#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ifalign/features.hpp"
#include "ifalign/io.hpp"
#include "ifalign/seqmodel.hpp"
#include "ifalign/synth.hpp"

namespace py = pybind11;

namespace {

std::pair<std::vector<int>, double> viterbi_alignment(
    const std::vector<std::vector<double>>& scores) {
    ifalign::PairScoreMatrix P;
    P.m = scores.size();
    P.n = P.m == 0 ? 0 : scores[0].size();
    for (const auto& row : scores) {
        if (row.size() != P.n) throw py::value_error("score rows differ in length");
        P.scores.insert(P.scores.end(), row.begin(), row.end());
    }
    auto [a, s] = ifalign::viterbi_sequence_alignment(P);
    return {a.assign, s};
}

std::vector<std::string> generate_dataset(const std::string& env, int count, std::uint64_t seed,
                                          double redundancy_rate, double drop_rate,
                                          bool single_instruction, bool holdout_vocabulary) {
    ifalign::GeneratorOptions opts;
    opts.envKind = env;
    opts.count = count;
    opts.seed = seed;
    opts.redundancyRate = redundancy_rate;
    opts.dropRate = drop_rate;
    opts.singleInstruction = single_instruction;
    opts.holdoutVocabulary = holdout_vocabulary;
    ifalign::TemplateBank bank = ifalign::parse_template_bank(ifalign::builtin_template_text());
    std::vector<std::string> lines;
    for (const ifalign::Demonstration& d : ifalign::generate_synthetic_dataset(opts, bank))
        lines.push_back(ifalign::demonstration_to_json(d).dump());
    return lines;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "alignment primitives from the native engine";
    m.def("levenshtein", &ifalign::levenshtein, py::arg("s"), py::arg("t"),
          "unit-cost edit distance");
    m.def("edit_similarity", &ifalign::edit_similarity, py::arg("s"), py::arg("t"),
          "1 - dist / max(len); 1.0 for two empty strings");
    m.def("viterbi_alignment", &viterbi_alignment, py::arg("scores"),
          "best monotone sentence-to-step alignment for an m x n score matrix; "
          "returns (assignment, score)");
    m.def("generate_dataset", &generate_dataset, py::arg("env"), py::arg("count"),
          py::arg("seed") = 1, py::arg("redundancy_rate") = 0.0, py::arg("drop_rate") = 0.0,
          py::arg("single_instruction") = false, py::arg("holdout_vocabulary") = false,
          "synthesize demonstrations; returns JSONL lines");
}
