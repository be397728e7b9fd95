#ifndef IFALIGN_COMMANDS_HPP
#define IFALIGN_COMMANDS_HPP

#include <string>

#include "ifalign/features.hpp"
#include "ifalign/io.hpp"
#include "ifalign/learn.hpp"
#include "ifalign/plan.hpp"

namespace ifalign {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitRuntime = 4;

/// Generator settings for `ifalign gen`.
struct GenConfig {
    int count = 100;
    double redundancyRate = 0.0;
    double dropRate = 0.0;
    double testFraction = 0.2;
    bool singleInstruction = false;
    std::string templateBankPath;  // empty = builtin bank
};

/// Everything a run needs. Loaded from a JSON config file; any key can be
/// overridden through IFALIGN_<SECTION>_<KEY> environment variables
/// (IFALIGN_TRAIN_ICMROUNDS=2, IFALIGN_PLAN_BEAMWIDTH=8, IFALIGN_ENV=maze).
struct ExperimentConfig {
    std::string envKind = "maze";
    std::string trainData;
    std::string testData;
    std::string modelPath;
    std::string predictionsPath;
    std::string goldPath;
    std::string outDir = "out";
    std::string metric = "all";  // all | exact | success | transitions
    long seed = 1;
    TrainConfig train;
    PlanConfig plan;
    FeatureTemplateConfig features;
    GenConfig gen;
};

ExperimentConfig experiment_config_from_json(const Json& j);
Json experiment_config_to_json(const ExperimentConfig& cfg);

/// Reads the file, applies env overrides, validates. Throws Error(UsageError)
/// on malformed keys and Error(DataError) on unreadable files.
ExperimentConfig load_experiment_config(const std::string& path);

/// Applies IFALIGN_* overrides onto an already-parsed config.
void apply_env_overrides(ExperimentConfig& cfg);

/// Subcommands. Each returns a process exit code (kExit*) and reports
/// failures as machine-readable JSON error records on stderr.
int cmd_train(const ExperimentConfig& cfg);
int cmd_predict(const ExperimentConfig& cfg);
int cmd_eval(const ExperimentConfig& cfg);
int cmd_gen(const ExperimentConfig& cfg);
int cmd_align(const ExperimentConfig& cfg);

}  // namespace ifalign

#endif
