#include "ifalign/synth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "ifalign/env.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/features.hpp"
#include "ifalign/params.hpp"
#include "ifalign/plan.hpp"
#include "ifalign/rng.hpp"

namespace ifalign {

namespace {

const std::vector<std::string> kFloors = {"blue", "red", "green", "grey", "yellow", "brown"};
const std::vector<std::string> kWalls = {"plain", "striped", "dotted", "brick"};
const std::vector<std::string> kObjects = {"chair", "lamp", "sofa", "table", "plant", "stool"};

const std::vector<std::string> kTrainNames = {
    "Alhambra", "Barton",  "Castile", "Dunmore", "Elmwood", "Fairfax",
    "Granada",  "Halifax", "Ivywood", "Juniper", "Kenwood", "Lexford",
    "Marlowe",  "Norwood", "Oakmont", "Pembroke"};
const std::vector<std::string> kHeldoutNames = {"Quarry",  "Redmond", "Seabury", "Thornton",
                                                "Uplands", "Varney",  "Westgate", "Yardley"};

const std::vector<std::string>& side_words(const std::string& side) {
    static const std::vector<std::string> north = {"north", "top", "up"};
    static const std::vector<std::string> south = {"south", "bottom", "down"};
    static const std::vector<std::string> east = {"east", "right"};
    static const std::vector<std::string> west = {"west", "left"};
    if (side == "North") return north;
    if (side == "South") return south;
    if (side == "East") return east;
    return west;
}

struct Filler {
    enum Kind { Word, Number, Name } kind = Word;
    std::string word;
    double num = 0.0;
};

DependencyTree instantiate(const InstructionTemplate& t, const std::map<std::string, Filler>& slots) {
    DependencyTree tree;
    for (std::size_t i = 0; i < t.words.size(); ++i) {
        const std::string& w = t.words[i];
        LabelSet tok;
        if (!w.empty() && w.front() == '<' && w.back() == '>') {
            const Filler& f = slots.at(w);
            switch (f.kind) {
                case Filler::Word: tok.insert_symbol("word", f.word); break;
                case Filler::Number:
                    tok.insert_symbol("word", f.word);
                    tok.insert_real("num", f.num);
                    break;
                case Filler::Name: tok.insert_string("word", f.word); break;
            }
        } else {
            tok.insert_symbol("word", w);
        }
        tree.tokens.push_back(std::move(tok));
        tree.heads.push_back(t.heads[i]);
        LabelSet dep;
        if (t.heads[i] != DependencyTree::kRoot) dep.insert_symbol("rel", t.deps[i]);
        tree.depLabels.push_back(std::move(dep));
    }
    return tree;
}

const InstructionTemplate* pick_template(const TemplateBank& bank, const std::string& slot, Rng& rng,
                                         const InstructionTemplate* avoid = nullptr) {
    std::vector<const InstructionTemplate*> options = bank.for_slot(slot);
    if (avoid && options.size() > 1)
        options.erase(std::remove(options.begin(), options.end(), avoid), options.end());
    if (options.empty()) throw Error(Err::DataError, "template bank has no slot '" + slot + "'");
    return options[rng.below(options.size())];
}

struct RenderedStep {
    std::string slot;
    const InstructionTemplate* tpl = nullptr;
    std::map<std::string, Filler> fill;
};

/// noise model shared by every generator: optional duplicate paraphrase per
/// step, optional drop of a step's sentence
InstructionSequence assemble(const std::vector<RenderedStep>& steps, const TemplateBank& bank,
                             const GeneratorOptions& opts, Rng& rng) {
    InstructionSequence x;
    for (const RenderedStep& s : steps) {
        bool drop = opts.dropRate > 0.0 && rng.uniform01() < opts.dropRate;
        if (drop) continue;
        x.sentences.push_back(instantiate(*s.tpl, s.fill));
        if (opts.redundancyRate > 0.0 && rng.uniform01() < opts.redundancyRate) {
            const InstructionTemplate* alt = pick_template(bank, s.slot, rng, s.tpl);
            x.sentences.push_back(instantiate(*alt, s.fill));
        }
    }
    return x;
}

InstructionSequence base_sentences(const std::vector<RenderedStep>& steps) {
    InstructionSequence x;
    for (const RenderedStep& s : steps) x.sentences.push_back(instantiate(*s.tpl, s.fill));
    return x;
}

/// the generator-truth check: under hand weights that encode the intended
/// word-grounding correspondences, the rendered sentences must pick out the
/// intended path among all paths of the same length
bool identifies(const InstructionSequence& x, const EnvironmentModel& env, const StateId& start,
                ParamVector& truth, const std::vector<LabelSet>& goldActions) {
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    PlanConfig pc;
    pc.beamWidth = 64;
    pc.maxLength = static_cast<int>(goldActions.size());
    pc.lengthMode = LengthMode::Fixed;
    PlanResult r;
    try {
        r = beam_search_plan(x, env, start, std::nullopt, truth, cfg, truth.index, pc);
    } catch (const Error&) {
        return false;
    }
    if (r.path.length() != goldActions.size()) return false;
    for (std::size_t j = 0; j < goldActions.size(); ++j)
        if (!(r.path.steps[j].action == goldActions[j])) return false;
    return true;
}

Demonstration finish_demo(const std::string& id, const std::string& kind,
                          const std::string& instanceJson, const EnvironmentModel& env,
                          const StateId& start, const std::vector<LabelSet>& actions,
                          InstructionSequence x) {
    Demonstration d;
    d.id = id;
    d.environmentId = kind;
    d.instanceJson = instanceJson;
    d.startState = start;
    d.instructions = std::move(x);
    d.path = replay_actions(env, start, actions);
    return d;
}

// ---------------------------------------------------------------------------
// maze

MazeInstance sample_maze(Rng& rng) {
    MazeInstance inst;
    inst.width = 5;
    inst.height = 5;
    inst.cells.resize(25);
    for (MazeCell& c : inst.cells) {
        c.open = rng.uniform01() < 0.75;
        if (!c.open) continue;
        c.floor = kFloors[rng.below(kFloors.size())];
        c.wall = kWalls[rng.below(kWalls.size())];
        if (rng.uniform01() < 0.5) c.object = kObjects[rng.below(kObjects.size())];
    }
    std::vector<int> openIdx;
    for (int i = 0; i < 25; ++i)
        if (inst.cells[static_cast<std::size_t>(i)].open) openIdx.push_back(i);
    if (openIdx.empty()) {
        inst.cells[12].open = true;
        inst.cells[12].floor = kFloors[0];
        inst.cells[12].wall = kWalls[0];
        openIdx.push_back(12);
    }
    int at = openIdx[rng.below(openIdx.size())];
    static const char* kDirs[] = {"N", "E", "S", "W"};
    inst.start = std::to_string(at % 5) + "," + std::to_string(at / 5) + "," +
                 kDirs[rng.below(4)];
    return inst;
}

ParamVector maze_truth() {
    ParamVector t;
    t.set("word=left∧dir=left", 8.0);
    t.set("word=right∧dir=right", 8.0);
    for (int k = 1; k <= 3; ++k)
        t.set("word=" + std::to_string(k) + "∧dist=" + std::to_string(k), 8.0);
    t.set("rel=dobj∧rel=destination", 4.0);
    for (const auto& f : kFloors) t.set("word=" + f + "∧floor=" + f, 4.0);
    for (const auto& o : kObjects) t.set("word=" + o + "∧object=" + o, 4.0);
    return t;
}

bool maze_demo(std::vector<Demonstration>& out, const std::string& id, const GeneratorOptions& opts,
               const TemplateBank& bank, Rng& rng, ParamVector& truth) {
    MazeInstance inst = sample_maze(rng);
    auto env = make_maze_env(inst);
    StateId start = inst.start;

    std::size_t L = opts.singleInstruction ? 1 : 2 + rng.below(3);
    std::vector<LabelSet> actions;
    std::vector<RenderedStep> steps;
    StateId cur = start;
    for (std::size_t j = 0; j < L; ++j) {
        std::vector<Successor> succs = env->successors(cur);
        const Successor& pick = succs[rng.below(succs.size())];
        RenderedStep rs;
        if (pick.action.symbol("type") == "rotate") {
            rs.slot = "maze.rotate." + pick.action.symbol("dir");
            rs.tpl = pick_template(bank, rs.slot, rng);
        } else {
            int mag = std::stoi(pick.action.symbol("mag"));
            // a "go to the <floor> <object>" rendition needs the destination
            // cell to carry an object and be unique among the cells ahead
            GroundingGraph g = env->grounding_graph(cur, pick.action, pick.next);
            std::vector<std::pair<std::string, std::string>> ahead;  // (floor, object) at k = 1..
            for (std::size_t v = 0; v < g.vertexLabels.size(); ++v) {
                if (static_cast<int>(v) == g.root) continue;
                ahead.emplace_back(g.vertexLabels[v].symbol("floor"), g.vertexLabels[v].symbol("object"));
            }
            std::size_t destAt = static_cast<std::size_t>(mag - 1);
            bool unique = destAt < ahead.size() && !ahead[destAt].second.empty();
            for (std::size_t k = 0; unique && k < ahead.size(); ++k)
                if (k != destAt && ahead[k] == ahead[destAt]) unique = false;
            if (unique && rng.uniform01() < 0.5) {
                rs.slot = "maze.move.goto";
                rs.tpl = pick_template(bank, rs.slot, rng);
                rs.fill["<floor>"] = {Filler::Word, ahead[destAt].first, 0.0};
                rs.fill["<object>"] = {Filler::Word, ahead[destAt].second, 0.0};
            } else {
                rs.slot = "maze.move";
                rs.tpl = pick_template(bank, rs.slot, rng);
                rs.fill["<num>"] = {Filler::Number, std::to_string(mag), static_cast<double>(mag)};
            }
        }
        actions.push_back(pick.action);
        steps.push_back(std::move(rs));
        cur = pick.next;
    }

    if (!identifies(base_sentences(steps), *env, start, truth, actions)) return false;
    out.push_back(finish_demo(id, "maze", instance_to_json(inst), *env, start, actions,
                              assemble(steps, bank, opts, rng)));
    return true;
}

// ---------------------------------------------------------------------------
// crossblock

struct RunSpec {
    std::string orient;  // row | col
    std::string posWord;
    int line = 0;
    int at = 0;
};

ParamVector crossblock_truth(int rows, int cols) {
    ParamVector t;
    t.set("word=row∧orient=row", 8.0);
    t.set("word=column∧orient=col", 8.0);
    t.set("word=top∧pos=0", 4.0);
    t.set("word=bottom∧pos=" + std::to_string(rows - 1), 4.0);
    t.set("word=left∧pos=0", 4.0);
    t.set("word=right∧pos=" + std::to_string(cols - 1), 4.0);
    t.set("word=middle∧pos=" + std::to_string(rows / 2), 4.0);
    t.set("word=middle∧pos=" + std::to_string(cols / 2), 4.0);
    return t;
}

bool crossblock_demo(std::vector<Demonstration>& out, const std::string& id,
                     const GeneratorOptions& opts, const TemplateBank& bank, Rng& rng,
                     ParamVector& truth) {
    const int rows = 5, cols = 5;
    const int k = 2 + static_cast<int>(rng.below(2));

    std::vector<RunSpec> pool = {{"row", "top", 0, 0},          {"row", "bottom", rows - 1, 0},
                                 {"row", "middle", rows / 2, 0}, {"col", "left", 0, 0},
                                 {"col", "right", cols - 1, 0},  {"col", "middle", cols / 2, 0}};
    std::size_t nRuns = opts.singleInstruction ? 1 : 2 + rng.below(2);
    std::vector<RunSpec> runs;
    for (std::size_t pick : rng.sample_without_replacement(pool.size(), nRuns))
        runs.push_back(pool[pick]);
    for (RunSpec& r : runs) r.at = static_cast<int>(rng.below(static_cast<std::size_t>((r.orient == "row" ? cols : rows) - k + 1)));

    CrossblockInstance inst;
    inst.rows = rows;
    inst.cols = cols;
    inst.segment = k;
    inst.blocks.assign(static_cast<std::size_t>(rows * cols), false);
    for (const RunSpec& r : runs)
        for (int d = 0; d < k; ++d) {
            int x = r.orient == "row" ? r.at + d : r.line;
            int y = r.orient == "row" ? r.line : r.at + d;
            std::size_t cell = static_cast<std::size_t>(y * cols + x);
            if (inst.blocks[cell]) return false;  // overlapping runs
            inst.blocks[cell] = true;
        }

    auto env = make_crossblock_env(inst);
    StateId start = env->initial_state();

    // the puzzle is honest only when the initial moves are exactly the runs
    std::vector<LabelSet> intended;
    for (const RunSpec& r : runs) {
        LabelSet a;
        a.insert_symbol("type", "clear");
        a.insert_symbol("orient", r.orient);
        a.insert_symbol("pos", std::to_string(r.line));
        a.insert_symbol("at", std::to_string(r.at));
        intended.push_back(std::move(a));
    }
    std::vector<Successor> first = env->successors(start);
    if (first.size() != intended.size()) return false;
    for (const Successor& s : first)
        if (std::find(intended.begin(), intended.end(), s.action) == intended.end()) return false;

    std::vector<std::size_t> order(runs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<LabelSet> actions;
    std::vector<RenderedStep> steps;
    for (std::size_t o : order) {
        actions.push_back(intended[o]);
        RenderedStep rs;
        rs.slot = "crossblock.clear";
        rs.tpl = pick_template(bank, rs.slot, rng);
        rs.fill["<posw>"] = {Filler::Word, runs[o].posWord, 0.0};
        rs.fill["<orientw>"] = {Filler::Word, runs[o].orient == "row" ? "row" : "column", 0.0};
        steps.push_back(std::move(rs));
    }

    if (!identifies(base_sentences(steps), *env, start, truth, actions)) return false;
    out.push_back(finish_demo(id, "crossblock", instance_to_json(inst), *env, start, actions,
                              assemble(steps, bank, opts, rng)));
    return true;
}

// ---------------------------------------------------------------------------
// map

ParamVector map_truth() {
    ParamVector t;
    for (const char* side : {"North", "South", "East", "West"})
        for (const std::string& w : side_words(side)) t.set("word=" + w + "∧side=" + side, 8.0);
    t.set("edit:word~name>=1", 8.0);
    return t;
}

bool map_demo(std::vector<Demonstration>& out, const std::string& id, const GeneratorOptions& opts,
              const TemplateBank& bank, Rng& rng, ParamVector& truth) {
    const std::vector<std::string>& pool = opts.holdoutVocabulary ? kHeldoutNames : kTrainNames;
    const std::size_t n = 8;

    MapInstance inst;
    inst.radius = 5.0;
    std::vector<std::size_t> namePick = rng.sample_without_replacement(pool.size(), n);
    for (std::size_t i = 0; i < n; ++i) {
        Landmark lm;
        lm.name = pool[namePick[i]];
        lm.x = static_cast<double>(rng.below(10));
        lm.y = static_cast<double>(rng.below(10));
        inst.landmarks.push_back(std::move(lm));
    }
    inst.start = static_cast<int>(rng.below(n));

    auto env = make_map_env(inst);
    StateId start = env->initial_state();

    std::size_t L = opts.singleInstruction ? 1 : 2 + rng.below(3);
    std::vector<LabelSet> actions;
    std::vector<RenderedStep> steps;
    StateId cur = start;
    for (std::size_t j = 0; j < L; ++j) {
        std::vector<Successor> succs = env->successors(cur);
        if (succs.empty()) return false;
        const Successor& pick = succs[rng.below(succs.size())];
        const std::vector<std::string>& sw = side_words(pick.action.symbol("side"));
        RenderedStep rs;
        rs.slot = "map.goto";
        rs.tpl = pick_template(bank, rs.slot, rng);
        rs.fill["<sidew>"] = {Filler::Word, sw[rng.below(sw.size())], 0.0};
        rs.fill["<name>"] = {Filler::Name,
                             inst.landmarks[static_cast<std::size_t>(std::stoi(pick.next))].name, 0.0};
        actions.push_back(pick.action);
        steps.push_back(std::move(rs));
        cur = pick.next;
    }

    if (!identifies(base_sentences(steps), *env, start, truth, actions)) return false;
    out.push_back(finish_demo(id, "map", instance_to_json(inst), *env, start, actions,
                              assemble(steps, bank, opts, rng)));
    return true;
}

}  // namespace

std::vector<const InstructionTemplate*> TemplateBank::for_slot(const std::string& slot) const {
    std::vector<const InstructionTemplate*> out;
    for (const InstructionTemplate& t : templates)
        if (t.slot == slot) out.push_back(&t);
    return out;
}

TemplateBank parse_template_bank(const std::string& text) {
    TemplateBank bank;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::string where = "template bank line " + std::to_string(lineNo);
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string slot, sep;
        if (!(ls >> slot)) continue;  // blank
        if (!(ls >> sep) || sep != "::") throw Error(Err::DataError, where + ": expected '::'");
        InstructionTemplate t;
        t.slot = slot;
        std::string tok;
        while (ls >> tok) {
            auto a = tok.find('/');
            auto b = tok.rfind('/');
            if (a == std::string::npos || a == b)
                throw Error(Err::DataError, where + ": token '" + tok + "' is not word/head/dep");
            int head = 0;
            try {
                head = std::stoi(tok.substr(a + 1, b - a - 1));
            } catch (const std::exception&) {
                throw Error(Err::DataError, where + ": bad head in '" + tok + "'");
            }
            t.words.push_back(tok.substr(0, a));
            t.heads.push_back(head == 0 ? DependencyTree::kRoot : head - 1);
            t.deps.push_back(tok.substr(b + 1));
        }
        if (t.words.empty()) throw Error(Err::DataError, where + ": no tokens");
        DependencyTree probe;
        probe.tokens.resize(t.words.size());
        probe.heads = t.heads;
        probe.depLabels.resize(t.words.size());
        if (Validation v = validate_dependency_tree(probe); !v.ok())
            throw Error(Err::DataError, where + ": " + v.code);
        bank.templates.push_back(std::move(t));
    }
    return bank;
}

TemplateBank load_template_bank(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Err::DataError, "cannot read template bank '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_template_bank(ss.str());
}

const std::string& builtin_template_text() {
    static const std::string text = R"(# instruction templates: <slot> :: word/head/dep ...
maze.rotate.left :: turn/0/root left/1/advmod
maze.rotate.left :: rotate/0/root left/1/advmod
maze.rotate.left :: take/0/root a/4/det left/4/amod turn/1/dobj
maze.rotate.right :: turn/0/root right/1/advmod
maze.rotate.right :: rotate/0/root right/1/advmod
maze.rotate.right :: take/0/root a/4/det right/4/amod turn/1/dobj
maze.move :: move/0/root <num>/3/nummod steps/1/dobj
maze.move :: walk/0/root <num>/3/nummod steps/1/dobj
maze.move.goto :: go/0/root to/1/prep the/5/det <floor>/5/amod <object>/1/dobj
maze.move.goto :: walk/0/root to/1/prep the/5/det <floor>/5/amod <object>/1/dobj
crossblock.clear :: clear/0/root the/4/det <posw>/4/amod <orientw>/1/dobj
crossblock.clear :: remove/0/root the/4/det <posw>/4/amod <orientw>/1/dobj
map.goto :: go/0/root <sidew>/1/advmod to/1/prep the/5/det <name>/1/dobj
map.goto :: head/0/root <sidew>/1/advmod to/1/prep the/5/det <name>/1/dobj
)";
    return text;
}

std::vector<Demonstration> generate_synthetic_dataset(const GeneratorOptions& opts,
                                                      const TemplateBank& bank) {
    if (opts.count < 0) throw Error(Err::UsageError, "negative count");
    if (opts.envKind != "maze" && opts.envKind != "crossblock" && opts.envKind != "map")
        throw Error(Err::UsageError, "unknown environment '" + opts.envKind + "'");

    ParamVector truth;
    if (opts.envKind == "maze") truth = maze_truth();
    else if (opts.envKind == "crossblock") truth = crossblock_truth(5, 5);
    else truth = map_truth();

    std::vector<Demonstration> out;
    constexpr int kMaxAttempts = 50;
    for (int i = 0; i < opts.count; ++i) {
        char idBuf[32];
        std::snprintf(idBuf, sizeof idBuf, "%s-%04d", opts.envKind.c_str(), i);
        std::string id(idBuf);
        bool done = false;
        for (int attempt = 0; attempt < kMaxAttempts && !done; ++attempt) {
            Rng rng(opts.seed, id + ":" + std::to_string(attempt));
            if (opts.envKind == "maze") done = maze_demo(out, id, opts, bank, rng, truth);
            else if (opts.envKind == "crossblock") done = crossblock_demo(out, id, opts, bank, rng, truth);
            else done = map_demo(out, id, opts, bank, rng, truth);
        }
        if (!done)
            throw Error(Err::GenerationFailure, "no identifiable instance for '" + id + "' after " +
                                                    std::to_string(kMaxAttempts) + " attempts");
    }
    return out;
}

}  // namespace ifalign
