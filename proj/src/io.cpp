#include "ifalign/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "ifalign/env.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/rng.hpp"

namespace ifalign {

namespace {

Json value_to_json(const LabelValue& v) {
    if (is_symbol(v)) return std::get<Symbol>(v).text;
    if (is_real(v)) return std::get<double>(v);
    return Json{{"str", std::get<StringVal>(v).text}};
}

LabelValue value_from_json(const Json& j) {
    if (j.is_string()) return Symbol{j.get<std::string>()};
    if (j.is_number()) return j.get<double>();
    if (j.is_object() && j.contains("str") && j["str"].is_string())
        return StringVal{j["str"].get<std::string>()};
    throw Error(Err::DataError, "bad label value: " + j.dump());
}

std::string checksum_hex(const std::string& payload) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload)));
    return buf;
}

}  // namespace

Json labelset_to_json(const LabelSet& s) {
    Json j = Json::object();
    for (const Label& l : s.labels()) {
        Json v = value_to_json(l.value);
        if (!j.contains(l.key)) {
            j[l.key] = std::move(v);
        } else if (j[l.key].is_array()) {
            // a single value is never an array, so an array always means
            // "several values under this key already"
            j[l.key].push_back(std::move(v));
        } else {
            Json arr = Json::array();
            arr.push_back(std::move(j[l.key]));
            arr.push_back(std::move(v));
            j[l.key] = std::move(arr);
        }
    }
    return j;
}

LabelSet labelset_from_json(const Json& j) {
    if (!j.is_object()) throw Error(Err::DataError, "label set must be an object: " + j.dump());
    LabelSet s;
    for (const auto& [key, val] : j.items()) {
        if (val.is_array())
            for (const Json& v : val) s.insert({key, value_from_json(v)});
        else
            s.insert({key, value_from_json(val)});
    }
    return s;
}

Json tree_to_json(const DependencyTree& t) {
    Json tokens = Json::array(), deps = Json::array();
    for (const LabelSet& tok : t.tokens) tokens.push_back(labelset_to_json(tok));
    for (const LabelSet& d : t.depLabels) deps.push_back(labelset_to_json(d));
    return Json{{"tokens", std::move(tokens)}, {"heads", t.heads}, {"deps", std::move(deps)}};
}

DependencyTree tree_from_json(const Json& j) {
    DependencyTree t;
    if (!j.is_object() || !j.contains("tokens") || !j.contains("heads") || !j.contains("deps"))
        throw Error(Err::DataError, "sentence record needs tokens/heads/deps");
    for (const Json& tok : j["tokens"]) t.tokens.push_back(labelset_from_json(tok));
    t.heads = j["heads"].get<std::vector<int>>();
    for (const Json& d : j["deps"]) t.depLabels.push_back(labelset_from_json(d));
    if (t.tokens.size() != t.heads.size() || t.tokens.size() != t.depLabels.size())
        throw Error(Err::DataError, "sentence arrays disagree in length");
    if (Validation v = validate_dependency_tree(t); !v.ok())
        throw Error(Err::DataError, "bad parse: " + v.code);
    return t;
}

Json demonstration_to_json(const Demonstration& d) {
    Json sentences = Json::array(), actions = Json::array();
    for (const DependencyTree& t : d.instructions.sentences) sentences.push_back(tree_to_json(t));
    for (const ActionStep& s : d.path.steps) actions.push_back(labelset_to_json(s.action));
    return Json{{"id", d.id},
                {"env", d.environmentId},
                {"instance", Json::parse(d.instanceJson)},
                {"start", d.startState},
                {"instructions", std::move(sentences)},
                {"actions", std::move(actions)}};
}

Demonstration demonstration_from_json(const Json& j) {
    for (const char* key : {"id", "env", "instance", "start", "instructions", "actions"})
        if (!j.contains(key))
            throw Error(Err::DataError, std::string("demonstration record needs '") + key + "'");
    Demonstration d;
    d.id = j["id"].get<std::string>();
    d.environmentId = j["env"].get<std::string>();
    d.instanceJson = j["instance"].dump();
    d.startState = j["start"].get<std::string>();
    for (const Json& s : j["instructions"]) d.instructions.sentences.push_back(tree_from_json(s));
    std::vector<LabelSet> actions;
    for (const Json& a : j["actions"]) actions.push_back(labelset_from_json(a));
    auto env = make_env(d.environmentId, d.instanceJson);
    d.path = replay_actions(*env, d.startState, actions);
    return d;
}

std::vector<Demonstration> read_demonstrations_jsonl(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<Demonstration> out;
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw Error(Err::DataError, path + ":" + std::to_string(lineNo) + ": " + e.what());
        }
        try {
            out.push_back(demonstration_from_json(j));
        } catch (const Error& e) {
            throw Error(e.code(), path + ":" + std::to_string(lineNo) + ": " + e.what());
        }
    }
    return out;
}

void write_demonstrations_jsonl(const std::vector<Demonstration>& demos, const std::string& path) {
    std::ostringstream out;
    for (const Demonstration& d : demos) out << demonstration_to_json(d).dump() << "\n";
    write_file(path, out.str());
}

Json feature_config_to_json(const FeatureTemplateConfig& cfg) {
    Json pairs = Json::array();
    for (const auto& [l, r] : cfg.keyPairFilter) pairs.push_back(Json::array({l, r}));
    return Json{{"bias", cfg.bias},
                {"symbolConjunction", cfg.symbolConjunction},
                {"stringEditBucket", cfg.stringEditBucket},
                {"symbolRealProduct", cfg.symbolRealProduct},
                {"editBuckets", cfg.editBuckets},
                {"keyPairFilter", std::move(pairs)},
                {"pathFeatures", cfg.pathFeatures},
                {"lengthFeatures", cfg.lengthFeatures},
                {"lengthBucketMax", cfg.lengthBucketMax},
                {"failOnUnseen", cfg.failOnUnseen}};
}

FeatureTemplateConfig feature_config_from_json(const Json& j) {
    FeatureTemplateConfig cfg;
    if (j.contains("bias")) cfg.bias = j["bias"].get<bool>();
    if (j.contains("symbolConjunction")) cfg.symbolConjunction = j["symbolConjunction"].get<bool>();
    if (j.contains("stringEditBucket")) cfg.stringEditBucket = j["stringEditBucket"].get<bool>();
    if (j.contains("symbolRealProduct")) cfg.symbolRealProduct = j["symbolRealProduct"].get<bool>();
    if (j.contains("editBuckets")) cfg.editBuckets = j["editBuckets"].get<std::vector<double>>();
    if (j.contains("keyPairFilter")) {
        cfg.keyPairFilter.clear();
        for (const Json& p : j["keyPairFilter"]) {
            if (!p.is_array() || p.size() != 2)
                throw Error(Err::DataError, "keyPairFilter entries are [left, right] pairs");
            cfg.keyPairFilter.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        }
    }
    if (j.contains("pathFeatures")) cfg.pathFeatures = j["pathFeatures"].get<bool>();
    if (j.contains("lengthFeatures")) cfg.lengthFeatures = j["lengthFeatures"].get<bool>();
    if (j.contains("lengthBucketMax")) cfg.lengthBucketMax = j["lengthBucketMax"].get<int>();
    if (j.contains("failOnUnseen")) cfg.failOnUnseen = j["failOnUnseen"].get<bool>();
    if (Validation v = cfg.validate(); !v.ok()) throw Error(Err::DataError, v.code + ": " + v.detail);
    return cfg;
}

namespace {

Json train_config_to_json(const TrainConfig& cfg) {
    return Json{{"k", cfg.k},
                {"icmRounds", cfg.icmRounds},
                {"seed", cfg.seed},
                {"l2", cfg.l2},
                {"initScale", cfg.initScale},
                {"optimizer",
                 Json{{"memory", cfg.optimizer.memory},
                      {"maxIters", cfg.optimizer.maxIters},
                      {"gradTol", cfg.optimizer.gradTol},
                      {"armijoC1", cfg.optimizer.armijoC1},
                      {"wolfeC2", cfg.optimizer.wolfeC2},
                      {"backtrackFactor", cfg.optimizer.backtrackFactor},
                      {"maxBacktracks", cfg.optimizer.maxBacktracks}}}};
}

TrainConfig train_config_from_json(const Json& j) {
    TrainConfig cfg;
    if (j.contains("k")) cfg.k = j["k"].get<int>();
    if (j.contains("icmRounds")) cfg.icmRounds = j["icmRounds"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("l2")) cfg.l2 = j["l2"].get<double>();
    if (j.contains("initScale")) cfg.initScale = j["initScale"].get<double>();
    if (j.contains("optimizer")) {
        const Json& o = j["optimizer"];
        if (o.contains("memory")) cfg.optimizer.memory = o["memory"].get<int>();
        if (o.contains("maxIters")) cfg.optimizer.maxIters = o["maxIters"].get<int>();
        if (o.contains("gradTol")) cfg.optimizer.gradTol = o["gradTol"].get<double>();
        if (o.contains("armijoC1")) cfg.optimizer.armijoC1 = o["armijoC1"].get<double>();
        if (o.contains("wolfeC2")) cfg.optimizer.wolfeC2 = o["wolfeC2"].get<double>();
        if (o.contains("backtrackFactor"))
            cfg.optimizer.backtrackFactor = o["backtrackFactor"].get<double>();
        if (o.contains("maxBacktracks")) cfg.optimizer.maxBacktracks = o["maxBacktracks"].get<int>();
    }
    return cfg;
}

}  // namespace

std::string model_to_string(const TrainedModel& m) {
    Json diags = Json::array();
    for (const RoundDiagnostics& d : m.diagnostics)
        diags.push_back(Json{{"round", d.round},
                             {"alignmentChanges", d.alignmentChanges},
                             {"objectiveBefore", d.objectiveBefore},
                             {"objectiveAfter", d.objectiveAfter},
                             {"optimizerIterations", d.optimizerIterations}});
    Json j{{"format", kModelFormatVersion},
           {"env", m.envKind},
           {"features", feature_config_to_json(m.featureConfig)},
           {"train", train_config_to_json(m.trainConfig)},
           {"names", m.theta.index.names()},
           {"weights", m.theta.weights},
           {"diagnostics", std::move(diags)},
           {"converged", m.converged}};
    j["checksum"] = checksum_hex(j.dump());
    return j.dump(2) + "\n";
}

TrainedModel model_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(Err::DataError, std::string("model file is not JSON: ") + e.what());
    }
    if (!j.contains("format") || !j["format"].is_number_integer())
        throw Error(Err::DataError, "model file has no format tag");
    if (j["format"].get<int>() != kModelFormatVersion)
        throw Error(Err::UnknownVersion, "model format " + j["format"].dump());
    if (!j.contains("checksum")) throw Error(Err::ChecksumMismatch, "model file has no checksum");
    std::string stored = j["checksum"].get<std::string>();
    j.erase("checksum");
    std::string computed = checksum_hex(j.dump());
    if (stored != computed)
        throw Error(Err::ChecksumMismatch, "stored " + stored + ", computed " + computed);

    TrainedModel m;
    m.envKind = j["env"].get<std::string>();
    m.featureConfig = feature_config_from_json(j["features"]);
    m.trainConfig = train_config_from_json(j["train"]);
    for (const Json& name : j["names"])
        m.theta.index.lookup(name.get<std::string>(), IndexMode::Grow);
    m.theta.weights = j["weights"].get<std::vector<double>>();
    if (Validation v = m.theta.validate(); !v.ok())
        throw Error(Err::DataError, v.code + ": " + v.detail);
    for (const Json& d : j["diagnostics"]) {
        RoundDiagnostics r;
        r.round = d["round"].get<int>();
        r.alignmentChanges = d["alignmentChanges"].get<int>();
        r.objectiveBefore = d["objectiveBefore"].get<double>();
        r.objectiveAfter = d["objectiveAfter"].get<double>();
        r.optimizerIterations = d["optimizerIterations"].get<int>();
        m.diagnostics.push_back(r);
    }
    m.converged = j["converged"].get<bool>();
    return m;
}

void model_save(const TrainedModel& m, const std::string& path) {
    write_file(path, model_to_string(m));
}

TrainedModel model_load(const std::string& path) { return model_from_string(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Err::DataError, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Err::DataError, "cannot write '" + path + "'");
    out << content;
    if (!out.flush()) throw Error(Err::DataError, "short write to '" + path + "'");
}

}  // namespace ifalign
