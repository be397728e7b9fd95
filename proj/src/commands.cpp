#include "ifalign/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "ifalign/env.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/metrics.hpp"
#include "ifalign/rng.hpp"
#include "ifalign/seqmodel.hpp"
#include "ifalign/structalign.hpp"
#include "ifalign/synth.hpp"

namespace ifalign {

namespace {

namespace fs = std::filesystem;

long env_long(const char* value, const std::string& name) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != std::string(value).size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Err::UsageError, name + " is not an integer: '" + std::string(value) + "'");
    }
}

double env_double(const char* value, const std::string& name) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != std::string(value).size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(Err::UsageError, name + " is not a number: '" + std::string(value) + "'");
    }
}

bool env_bool(const char* value, const std::string& name) {
    std::string v(value);
    if (v == "1" || v == "true" || v == "yes") return true;
    if (v == "0" || v == "false" || v == "no") return false;
    throw Error(Err::UsageError, name + " is not a boolean: '" + v + "'");
}

LengthMode length_mode_of(const std::string& s) {
    if (s == "fixed") return LengthMode::Fixed;
    if (s == "bounded") return LengthMode::BoundedAllLengths;
    throw Error(Err::UsageError, "lengthMode must be 'fixed' or 'bounded', got '" + s + "'");
}

std::string length_mode_name(LengthMode m) {
    return m == LengthMode::Fixed ? "fixed" : "bounded";
}

void check_experiment(const ExperimentConfig& cfg) {
    if (cfg.envKind != "maze" && cfg.envKind != "crossblock" && cfg.envKind != "map")
        throw Error(Err::UsageError, "unknown env '" + cfg.envKind + "'");
    if (cfg.metric != "all" && cfg.metric != "exact" && cfg.metric != "success" &&
        cfg.metric != "transitions")
        throw Error(Err::UsageError, "unknown metric '" + cfg.metric + "'");
    if (Validation v = cfg.train.validate(); !v.ok())
        throw Error(Err::UsageError, "train: " + v.code + ": " + v.detail);
    if (Validation v = cfg.plan.validate(); !v.ok())
        throw Error(Err::UsageError, "plan: " + v.code + ": " + v.detail);
    if (Validation v = cfg.features.validate(); !v.ok())
        throw Error(Err::UsageError, "features: " + v.code + ": " + v.detail);
    if (cfg.gen.count < 0) throw Error(Err::UsageError, "gen.count is negative");
    if (cfg.gen.testFraction < 0.0 || cfg.gen.testFraction > 1.0)
        throw Error(Err::UsageError, "gen.testFraction must be in [0, 1]");
}

std::string model_path_of(const ExperimentConfig& cfg) {
    return cfg.modelPath.empty() ? cfg.outDir + "/model.json" : cfg.modelPath;
}

std::string predictions_path_of(const ExperimentConfig& cfg) {
    return cfg.predictionsPath.empty() ? cfg.outDir + "/predictions.jsonl" : cfg.predictionsPath;
}

void ensure_out_dir(const ExperimentConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.outDir, ec);
    if (ec) throw Error(Err::DataError, "cannot create out dir '" + cfg.outDir + "': " + ec.message());
}

std::vector<std::unique_ptr<EnvironmentModel>> envs_for(const std::vector<Demonstration>& demos,
                                                        const std::string& expectedKind) {
    std::vector<std::unique_ptr<EnvironmentModel>> envs;
    for (const Demonstration& d : demos) {
        if (d.environmentId != expectedKind)
            throw Error(Err::DataError, "demonstration '" + d.id + "' is for env '" + d.environmentId +
                                            "', expected '" + expectedKind + "'");
        envs.push_back(make_env(d.environmentId, d.instanceJson));
    }
    return envs;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const Json& j) {
    ExperimentConfig cfg;
    if (j.contains("env")) cfg.envKind = j["env"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<long>();
    if (j.contains("out")) cfg.outDir = j["out"].get<std::string>();
    if (j.contains("metric")) cfg.metric = j["metric"].get<std::string>();
    if (j.contains("trainData")) cfg.trainData = j["trainData"].get<std::string>();
    if (j.contains("testData")) cfg.testData = j["testData"].get<std::string>();
    if (j.contains("model")) cfg.modelPath = j["model"].get<std::string>();
    if (j.contains("predictions")) cfg.predictionsPath = j["predictions"].get<std::string>();
    if (j.contains("gold")) cfg.goldPath = j["gold"].get<std::string>();

    if (j.contains("train")) {
        const Json& t = j["train"];
        if (t.contains("k")) cfg.train.k = t["k"].get<int>();
        if (t.contains("icmRounds")) cfg.train.icmRounds = t["icmRounds"].get<int>();
        if (t.contains("seed")) cfg.train.seed = t["seed"].get<std::uint64_t>();
        if (t.contains("l2")) cfg.train.l2 = t["l2"].get<double>();
        if (t.contains("initScale")) cfg.train.initScale = t["initScale"].get<double>();
        if (t.contains("optimizer")) {
            const Json& o = t["optimizer"];
            if (o.contains("memory")) cfg.train.optimizer.memory = o["memory"].get<int>();
            if (o.contains("maxIters")) cfg.train.optimizer.maxIters = o["maxIters"].get<int>();
            if (o.contains("gradTol")) cfg.train.optimizer.gradTol = o["gradTol"].get<double>();
            if (o.contains("armijoC1")) cfg.train.optimizer.armijoC1 = o["armijoC1"].get<double>();
            if (o.contains("wolfeC2")) cfg.train.optimizer.wolfeC2 = o["wolfeC2"].get<double>();
            if (o.contains("backtrackFactor"))
                cfg.train.optimizer.backtrackFactor = o["backtrackFactor"].get<double>();
            if (o.contains("maxBacktracks"))
                cfg.train.optimizer.maxBacktracks = o["maxBacktracks"].get<int>();
        }
    }
    if (!j.contains("train") || !j["train"].contains("seed"))
        cfg.train.seed = static_cast<std::uint64_t>(cfg.seed);

    if (j.contains("plan")) {
        const Json& p = j["plan"];
        if (p.contains("beamWidth")) cfg.plan.beamWidth = p["beamWidth"].get<int>();
        if (p.contains("maxLength")) cfg.plan.maxLength = p["maxLength"].get<int>();
        if (p.contains("lengthMode")) cfg.plan.lengthMode = length_mode_of(p["lengthMode"].get<std::string>());
        if (p.contains("icmRoundsInfer")) cfg.plan.icmRoundsInfer = p["icmRoundsInfer"].get<int>();
    }
    if (j.contains("features")) cfg.features = feature_config_from_json(j["features"]);
    if (j.contains("gen")) {
        const Json& g = j["gen"];
        if (g.contains("count")) cfg.gen.count = g["count"].get<int>();
        if (g.contains("redundancyRate")) cfg.gen.redundancyRate = g["redundancyRate"].get<double>();
        if (g.contains("dropRate")) cfg.gen.dropRate = g["dropRate"].get<double>();
        if (g.contains("testFraction")) cfg.gen.testFraction = g["testFraction"].get<double>();
        if (g.contains("singleInstruction")) cfg.gen.singleInstruction = g["singleInstruction"].get<bool>();
        if (g.contains("templateBank")) cfg.gen.templateBankPath = g["templateBank"].get<std::string>();
    }
    return cfg;
}

Json experiment_config_to_json(const ExperimentConfig& cfg) {
    return Json{
        {"env", cfg.envKind},
        {"seed", cfg.seed},
        {"out", cfg.outDir},
        {"metric", cfg.metric},
        {"trainData", cfg.trainData},
        {"testData", cfg.testData},
        {"model", cfg.modelPath},
        {"predictions", cfg.predictionsPath},
        {"gold", cfg.goldPath},
        {"train",
         Json{{"k", cfg.train.k},
              {"icmRounds", cfg.train.icmRounds},
              {"seed", cfg.train.seed},
              {"l2", cfg.train.l2},
              {"initScale", cfg.train.initScale},
              {"optimizer",
               Json{{"memory", cfg.train.optimizer.memory},
                    {"maxIters", cfg.train.optimizer.maxIters},
                    {"gradTol", cfg.train.optimizer.gradTol},
                    {"armijoC1", cfg.train.optimizer.armijoC1},
                    {"wolfeC2", cfg.train.optimizer.wolfeC2},
                    {"backtrackFactor", cfg.train.optimizer.backtrackFactor},
                    {"maxBacktracks", cfg.train.optimizer.maxBacktracks}}}}},
        {"plan",
         Json{{"beamWidth", cfg.plan.beamWidth},
              {"maxLength", cfg.plan.maxLength},
              {"lengthMode", length_mode_name(cfg.plan.lengthMode)},
              {"icmRoundsInfer", cfg.plan.icmRoundsInfer}}},
        {"features", feature_config_to_json(cfg.features)},
        {"gen",
         Json{{"count", cfg.gen.count},
              {"redundancyRate", cfg.gen.redundancyRate},
              {"dropRate", cfg.gen.dropRate},
              {"testFraction", cfg.gen.testFraction},
              {"singleInstruction", cfg.gen.singleInstruction},
              {"templateBank", cfg.gen.templateBankPath}}}};
}

void apply_env_overrides(ExperimentConfig& cfg) {
    struct Var {
        const char* name;
        std::function<void(const char*)> apply;
    };
    const std::vector<Var> table = {
        {"IFALIGN_ENV", [&](const char* v) { cfg.envKind = v; }},
        {"IFALIGN_SEED",
         [&](const char* v) {
             cfg.seed = env_long(v, "IFALIGN_SEED");
             cfg.train.seed = static_cast<std::uint64_t>(cfg.seed);
         }},
        {"IFALIGN_OUT", [&](const char* v) { cfg.outDir = v; }},
        {"IFALIGN_METRIC", [&](const char* v) { cfg.metric = v; }},
        {"IFALIGN_TRAINDATA", [&](const char* v) { cfg.trainData = v; }},
        {"IFALIGN_TESTDATA", [&](const char* v) { cfg.testData = v; }},
        {"IFALIGN_MODEL", [&](const char* v) { cfg.modelPath = v; }},
        {"IFALIGN_PREDICTIONS", [&](const char* v) { cfg.predictionsPath = v; }},
        {"IFALIGN_GOLD", [&](const char* v) { cfg.goldPath = v; }},
        {"IFALIGN_TRAIN_K", [&](const char* v) { cfg.train.k = static_cast<int>(env_long(v, "IFALIGN_TRAIN_K")); }},
        {"IFALIGN_TRAIN_ICMROUNDS",
         [&](const char* v) { cfg.train.icmRounds = static_cast<int>(env_long(v, "IFALIGN_TRAIN_ICMROUNDS")); }},
        {"IFALIGN_TRAIN_SEED",
         [&](const char* v) { cfg.train.seed = static_cast<std::uint64_t>(env_long(v, "IFALIGN_TRAIN_SEED")); }},
        {"IFALIGN_TRAIN_L2", [&](const char* v) { cfg.train.l2 = env_double(v, "IFALIGN_TRAIN_L2"); }},
        {"IFALIGN_TRAIN_INITSCALE",
         [&](const char* v) { cfg.train.initScale = env_double(v, "IFALIGN_TRAIN_INITSCALE"); }},
        {"IFALIGN_PLAN_BEAMWIDTH",
         [&](const char* v) { cfg.plan.beamWidth = static_cast<int>(env_long(v, "IFALIGN_PLAN_BEAMWIDTH")); }},
        {"IFALIGN_PLAN_MAXLENGTH",
         [&](const char* v) { cfg.plan.maxLength = static_cast<int>(env_long(v, "IFALIGN_PLAN_MAXLENGTH")); }},
        {"IFALIGN_PLAN_LENGTHMODE", [&](const char* v) { cfg.plan.lengthMode = length_mode_of(v); }},
        {"IFALIGN_PLAN_ICMROUNDSINFER",
         [&](const char* v) {
             cfg.plan.icmRoundsInfer = static_cast<int>(env_long(v, "IFALIGN_PLAN_ICMROUNDSINFER"));
         }},
        {"IFALIGN_FEATURES_PATHFEATURES",
         [&](const char* v) { cfg.features.pathFeatures = env_bool(v, "IFALIGN_FEATURES_PATHFEATURES"); }},
        {"IFALIGN_FEATURES_LENGTHFEATURES",
         [&](const char* v) { cfg.features.lengthFeatures = env_bool(v, "IFALIGN_FEATURES_LENGTHFEATURES"); }},
        {"IFALIGN_FEATURES_FAILONUNSEEN",
         [&](const char* v) { cfg.features.failOnUnseen = env_bool(v, "IFALIGN_FEATURES_FAILONUNSEEN"); }},
        {"IFALIGN_GEN_COUNT",
         [&](const char* v) { cfg.gen.count = static_cast<int>(env_long(v, "IFALIGN_GEN_COUNT")); }},
        {"IFALIGN_GEN_REDUNDANCYRATE",
         [&](const char* v) { cfg.gen.redundancyRate = env_double(v, "IFALIGN_GEN_REDUNDANCYRATE"); }},
        {"IFALIGN_GEN_DROPRATE",
         [&](const char* v) { cfg.gen.dropRate = env_double(v, "IFALIGN_GEN_DROPRATE"); }},
        {"IFALIGN_GEN_TESTFRACTION",
         [&](const char* v) { cfg.gen.testFraction = env_double(v, "IFALIGN_GEN_TESTFRACTION"); }},
        {"IFALIGN_GEN_SINGLEINSTRUCTION",
         [&](const char* v) {
             cfg.gen.singleInstruction = env_bool(v, "IFALIGN_GEN_SINGLEINSTRUCTION");
         }},
        {"IFALIGN_GEN_TEMPLATEBANK", [&](const char* v) { cfg.gen.templateBankPath = v; }},
    };
    for (const Var& var : table)
        if (const char* v = std::getenv(var.name)) var.apply(v);
}

ExperimentConfig load_experiment_config(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw Error(Err::DataError, path + ": " + e.what());
    }
    ExperimentConfig cfg = experiment_config_from_json(j);
    apply_env_overrides(cfg);
    check_experiment(cfg);
    return cfg;
}

int cmd_train(const ExperimentConfig& cfg) {
    check_experiment(cfg);
    if (cfg.trainData.empty()) throw Error(Err::UsageError, "train needs trainData");
    ensure_out_dir(cfg);

    std::vector<Demonstration> demos = read_demonstrations_jsonl(cfg.trainData);
    if (demos.empty()) throw Error(Err::UsageError, "empty dataset '" + cfg.trainData + "'");
    auto envs = envs_for(demos, cfg.envKind);
    std::vector<const EnvironmentModel*> envPtrs;
    for (const auto& e : envs) envPtrs.push_back(e.get());

    TrainedModel model = train_icm(demos, envPtrs, cfg.train, cfg.features);
    model_save(model, model_path_of(cfg));

    Json rounds = Json::array();
    for (const RoundDiagnostics& d : model.diagnostics)
        rounds.push_back(Json{{"round", d.round},
                              {"alignmentChanges", d.alignmentChanges},
                              {"objectiveBefore", d.objectiveBefore},
                              {"objectiveAfter", d.objectiveAfter},
                              {"optimizerIterations", d.optimizerIterations}});
    Json report{{"demos", demos.size()},
                {"features", model.theta.index.size()},
                {"converged", model.converged},
                {"rounds", std::move(rounds)}};
    write_file(cfg.outDir + "/train_report.json", report.dump(2) + "\n");
    std::cout << "trained " << model.theta.index.size() << " features over " << demos.size()
              << " demonstrations -> " << model_path_of(cfg) << "\n";
    return kExitOk;
}

int cmd_predict(const ExperimentConfig& cfg) {
    check_experiment(cfg);
    if (cfg.testData.empty()) throw Error(Err::UsageError, "predict needs testData");
    ensure_out_dir(cfg);

    TrainedModel model = model_load(model_path_of(cfg));
    std::vector<Demonstration> demos = read_demonstrations_jsonl(cfg.testData);
    auto envs = envs_for(demos, model.envKind);

    std::ostringstream out;
    int failures = 0;
    for (std::size_t i = 0; i < demos.size(); ++i) {
        const Demonstration& d = demos[i];
        Json line{{"id", d.id}};
        try {
            PlanResult r = icm_infer(d.instructions, *envs[i], d.startState, model.theta,
                                     model.featureConfig, model.theta.index, cfg.plan);
            Json actions = Json::array(), states = Json::array({d.startState});
            for (const ActionStep& s : r.path.steps) {
                actions.push_back(labelset_to_json(s.action));
                states.push_back(s.postState);
            }
            line["failed"] = false;
            line["actions"] = std::move(actions);
            line["states"] = std::move(states);
            line["alignment"] = r.alignment.assign;
            line["score"] = r.score;
        } catch (const Error& e) {
            if (e.code() != Err::NoPathFound) throw;
            line["failed"] = true;
            line["error"] = e.what();
            ++failures;
        }
        out << line.dump() << "\n";
    }
    write_file(predictions_path_of(cfg), out.str());
    std::cout << "predicted " << demos.size() - failures << "/" << demos.size() << " -> "
              << predictions_path_of(cfg) << "\n";
    return kExitOk;
}

int cmd_eval(const ExperimentConfig& cfg) {
    check_experiment(cfg);
    std::string goldPath = cfg.goldPath.empty() ? cfg.testData : cfg.goldPath;
    if (goldPath.empty()) throw Error(Err::UsageError, "eval needs gold (or testData)");
    ensure_out_dir(cfg);

    std::vector<Demonstration> gold = read_demonstrations_jsonl(goldPath);
    std::vector<Prediction> preds;
    std::istringstream in(read_file(predictions_path_of(cfg)));
    std::string lineText;
    int lineNo = 0;
    while (std::getline(in, lineText)) {
        ++lineNo;
        if (lineText.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(lineText);
        } catch (const Json::parse_error& e) {
            throw Error(Err::DataError,
                        predictions_path_of(cfg) + ":" + std::to_string(lineNo) + ": " + e.what());
        }
        Prediction p;
        p.id = j.at("id").get<std::string>();
        p.failed = j.value("failed", false);
        if (!p.failed) {
            for (const Json& a : j.at("actions")) p.actions.push_back(labelset_from_json(a));
            p.states = j.at("states").get<std::vector<std::string>>();
        }
        preds.push_back(std::move(p));
    }

    MetricsReport rep = evaluate_predictions(preds, gold);
    Json perExample = Json::array();
    for (const ExampleMetrics& em : rep.perExample)
        perExample.push_back(Json{{"id", em.id},
                                  {"exactMatch", em.exactMatch},
                                  {"success", em.success},
                                  {"precision", em.precision},
                                  {"recall", em.recall},
                                  {"f1", em.f1}});
    Json out{{"examples", rep.perExample.size()},
             {"exactMatch", rep.exactMatch},
             {"success", rep.success},
             {"precision", rep.precision},
             {"recall", rep.recall},
             {"f1", rep.f1},
             {"perExample", std::move(perExample)}};
    write_file(cfg.outDir + "/metrics.json", out.dump(2) + "\n");

    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(4);
    if (cfg.metric == "all" || cfg.metric == "exact") line << "exactMatch " << rep.exactMatch << "  ";
    if (cfg.metric == "all" || cfg.metric == "success") line << "success " << rep.success << "  ";
    if (cfg.metric == "all" || cfg.metric == "transitions")
        line << "P " << rep.precision << "  R " << rep.recall << "  F1 " << rep.f1;
    std::cout << line.str() << "\n";
    return kExitOk;
}

int cmd_gen(const ExperimentConfig& cfg) {
    check_experiment(cfg);
    ensure_out_dir(cfg);

    GeneratorOptions opts;
    opts.envKind = cfg.envKind;
    opts.count = cfg.gen.count;
    opts.seed = static_cast<std::uint64_t>(cfg.seed);
    opts.redundancyRate = cfg.gen.redundancyRate;
    opts.dropRate = cfg.gen.dropRate;
    opts.singleInstruction = cfg.gen.singleInstruction;
    TemplateBank bank = cfg.gen.templateBankPath.empty()
                            ? parse_template_bank(builtin_template_text())
                            : load_template_bank(cfg.gen.templateBankPath);
    std::vector<Demonstration> demos = generate_synthetic_dataset(opts, bank);

    std::size_t nTest = static_cast<std::size_t>(cfg.gen.testFraction * static_cast<double>(demos.size()) + 0.5);
    std::vector<std::size_t> order(demos.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng split(opts.seed, "split");
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[split.below(i)]);

    std::vector<Demonstration> train, test;
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < nTest ? test : train).push_back(demos[order[i]]);
    auto byId = [](const Demonstration& a, const Demonstration& b) { return a.id < b.id; };
    std::sort(train.begin(), train.end(), byId);
    std::sort(test.begin(), test.end(), byId);

    write_demonstrations_jsonl(train, cfg.outDir + "/train.jsonl");
    write_demonstrations_jsonl(test, cfg.outDir + "/test.jsonl");
    Json manifest{{"env", cfg.envKind},
                  {"seed", cfg.seed},
                  {"splitSalt", "split"},
                  {"count", demos.size()},
                  {"train", train.size()},
                  {"test", test.size()}};
    write_file(cfg.outDir + "/gen_manifest.json", manifest.dump(2) + "\n");
    std::cout << "generated " << train.size() << " train + " << test.size() << " test -> "
              << cfg.outDir << "\n";
    return kExitOk;
}

int cmd_align(const ExperimentConfig& cfg) {
    check_experiment(cfg);
    std::string dataPath = !cfg.goldPath.empty() ? cfg.goldPath
                           : !cfg.testData.empty() ? cfg.testData
                                                   : cfg.trainData;
    if (dataPath.empty()) throw Error(Err::UsageError, "align needs gold, testData, or trainData");
    ensure_out_dir(cfg);

    TrainedModel model = model_load(model_path_of(cfg));
    std::vector<Demonstration> demos = read_demonstrations_jsonl(dataPath);
    envs_for(demos, model.envKind);  // kind check only; graphs already replayed

    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    for (const Demonstration& d : demos) {
        out << "# " << d.id << "\n";
        if (d.instructions.empty()) {
            out << "  (no instructions)\n";
            continue;
        }
        PairScoreMatrix P = build_pair_matrix(d.instructions, d.path, model.theta,
                                              model.featureConfig, model.theta.index);
        auto [a, pairTotal] = viterbi_sequence_alignment(P);
        PathPotentialBreakdown bd = path_log_potential(d.instructions, d.path, a, model.theta,
                                                       model.featureConfig, model.theta.index);
        for (std::size_t i = 0; i < a.assign.size(); ++i) {
            int j = a.assign[i];
            out << "  sentence " << i << " -> step " << j << "  ("
                << d.path.steps[static_cast<std::size_t>(j)].action.canonical()
                << ", pair " << P.at(i, static_cast<std::size_t>(j)) << ")\n";
            auto [sa, score] = best_structure_alignment(
                d.instructions.sentences[i], d.path.steps[static_cast<std::size_t>(j)].graph,
                model.theta, model.featureConfig, model.theta.index);
            (void)score;
            for (const auto& [tok, vert] : sa.pairs) {
                const LabelSet& tl = d.instructions.sentences[i].tokens[static_cast<std::size_t>(tok)];
                const LabelSet& vl =
                    d.path.steps[static_cast<std::size_t>(j)].graph.vertexLabels[static_cast<std::size_t>(vert)];
                out << "    token " << tok << " [" << tl.canonical() << "] -> vertex " << vert << " ["
                    << vl.canonical() << "]\n";
            }
        }
        out << "  length " << bd.lengthTerm << "  steps ";
        for (double s : bd.stepTerms) out << s << " ";
        out << " total " << bd.total << "\n";
    }
    write_file(cfg.outDir + "/align.txt", out.str());
    std::cout << out.str();
    return kExitOk;
}

}  // namespace ifalign
