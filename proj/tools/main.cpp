#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ifalign/commands.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/io.hpp"

namespace {

int exit_code_for(ifalign::Err e) {
    using ifalign::Err;
    switch (e) {
        case Err::UsageError:
            return ifalign::kExitUsage;
        case Err::DataError:
        case Err::ChecksumMismatch:
        case Err::UnknownVersion:
        case Err::IdMismatch:
            return ifalign::kExitData;
        default:
            return ifalign::kExitRuntime;
    }
}

void report(const char* code, const std::string& detail) {
    std::cerr << ifalign::Json{{"error", code}, {"detail", detail}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"instruction-following alignment engine"};
    app.require_subcommand(1);

    std::string configPath, envKind, outDir;
    long seed = 1;
    app.add_option("--config", configPath, "experiment config (JSON)");
    app.add_option("--env", envKind, "environment kind: maze | crossblock | map");
    auto* seedOpt = app.add_option("--seed", seed, "global random seed");
    app.add_option("--out", outDir, "output directory");

    std::string trainData, testData, modelPath, predictionsPath, goldPath, metric;
    auto* train = app.add_subcommand("train", "fit a model on a demonstration set");
    train->add_option("--data", trainData, "training demonstrations (JSONL)");
    auto* predict = app.add_subcommand("predict", "plan paths for instruction sets");
    predict->add_option("--data", testData, "input demonstrations (JSONL)");
    predict->add_option("--model", modelPath, "model file");
    auto* eval = app.add_subcommand("eval", "score predictions against gold");
    eval->add_option("--predictions", predictionsPath, "predictions file (JSONL)");
    eval->add_option("--gold", goldPath, "gold demonstrations (JSONL)");
    eval->add_option("--metric", metric, "all | exact | success | transitions");
    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
    auto* align = app.add_subcommand("align", "dump model alignments for demonstrations");
    align->add_option("--data", goldPath, "demonstrations to align (JSONL)");
    align->add_option("--model", modelPath, "model file");

    CLI11_PARSE(app, argc, argv);

    try {
        ifalign::ExperimentConfig cfg;
        if (!configPath.empty()) {
            cfg = ifalign::load_experiment_config(configPath);
        } else {
            ifalign::apply_env_overrides(cfg);
        }
        if (!envKind.empty()) cfg.envKind = envKind;
        if (seedOpt->count() > 0) {
            cfg.seed = seed;
            cfg.train.seed = static_cast<std::uint64_t>(seed);
        }
        if (!outDir.empty()) cfg.outDir = outDir;
        if (!trainData.empty()) cfg.trainData = trainData;
        if (!testData.empty()) cfg.testData = testData;
        if (!modelPath.empty()) cfg.modelPath = modelPath;
        if (!predictionsPath.empty()) cfg.predictionsPath = predictionsPath;
        if (!goldPath.empty()) cfg.goldPath = goldPath;
        if (!metric.empty()) cfg.metric = metric;

        if (train->parsed()) return ifalign::cmd_train(cfg);
        if (predict->parsed()) return ifalign::cmd_predict(cfg);
        if (eval->parsed()) return ifalign::cmd_eval(cfg);
        if (gen->parsed()) return ifalign::cmd_gen(cfg);
        if (align->parsed()) return ifalign::cmd_align(cfg);
        report("UsageError", "no subcommand");
        return ifalign::kExitUsage;
    } catch (const ifalign::Error& e) {
        report(ifalign::err_name(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        report("RuntimeError", e.what());
        return ifalign::kExitRuntime;
    }
}
