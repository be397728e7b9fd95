#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ifalign/env.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/plan.hpp"
#include "ifalign/rng.hpp"
#include "ifalign/seqmodel.hpp"
#include "ifalign/synth.hpp"

using namespace ifalign;

namespace {

MazeInstance open_maze(int w, int h, const StateId& start) {
    MazeInstance inst;
    inst.width = w;
    inst.height = h;
    inst.cells.resize(static_cast<std::size_t>(w * h));
    for (auto& c : inst.cells) {
        c.open = true;
        c.floor = "grey";
        c.wall = "brick";
    }
    inst.start = start;
    return inst;
}

DependencyTree one_word(const std::string& w) {
    DependencyTree t;
    t.tokens.resize(1);
    t.tokens[0].insert_symbol("word", w);
    t.heads = {DependencyTree::kRoot};
    t.depLabels.resize(1);
    return t;
}

std::vector<std::string> actions_of(const Path& p) {
    std::vector<std::string> out;
    for (const auto& s : p.steps) out.push_back(s.action.canonical());
    return out;
}

/// theta that makes "left"/"right" rotations and "K"-step moves attractive.
/// One-word sentences join the action root directly, so the move weights sit
/// on the root's own magnitude key.
ParamVector maze_theta(const FeatureTemplateConfig&) {
    ParamVector theta;
    theta.set("word=left∧dir=left", 8.0);
    theta.set("word=right∧dir=right", 8.0);
    for (int k = 1; k <= 3; ++k)
        theta.set("word=" + std::to_string(k) + "∧mag=" + std::to_string(k), 8.0);
    return theta;
}

}  // namespace

TEST_CASE("plan config validation") {
    PlanConfig cfg;
    CHECK(cfg.validate().ok());
    PlanConfig b1 = cfg;
    b1.beamWidth = 0;
    CHECK(b1.validate().code == "BadBeamWidth");
    PlanConfig b2 = cfg;
    b2.maxLength = 0;
    CHECK(b2.validate().code == "BadMaxLength");
    PlanConfig b3 = cfg;
    b3.icmRoundsInfer = -1;
    CHECK(b3.validate().code == "BadRounds");
}

TEST_CASE("zero weights, bounded mode: ties break to the lexicographically first action") {
    auto env = make_maze_env(open_maze(3, 3, "1,1,N"));
    ParamVector theta;
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    PlanConfig pc;
    pc.beamWidth = 16;
    pc.maxLength = 2;
    InstructionSequence none;
    PlanResult r = beam_search_plan(none, *env, "1,1,N", std::nullopt, theta, cfg, theta.index, pc);
    // every path scores 0; shortest-first tie-break, then action serialization:
    // a single left rotation beats everything
    REQUIRE(r.path.length() == 1);
    CHECK(r.path.steps[0].action.canonical() == "dir=left,type=rotate");
    CHECK(r.score == 0.0);
}

TEST_CASE("beam search follows instruction weights") {
    auto env = make_maze_env(open_maze(5, 5, "2,2,N"));
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    ParamVector theta = maze_theta(cfg);

    InstructionSequence x;
    x.sentences.push_back(one_word("right"));
    x.sentences.push_back(one_word("2"));

    PlanConfig pc;
    pc.beamWidth = 32;
    pc.maxLength = 2;
    pc.lengthMode = LengthMode::Fixed;
    PlanResult r = beam_search_plan(x, *env, "2,2,N", std::nullopt, theta, cfg, theta.index, pc);
    CHECK(actions_of(r.path) ==
          std::vector<std::string>{"dir=right,type=rotate", "mag=2,magnitude=2,type=move"});
    CHECK(r.alignment.assign == std::vector<int>{0, 1});
    CHECK(r.path.steps[1].postState == "4,2,E");
}

TEST_CASE("fixed alignments pin instructions to steps") {
    auto env = make_maze_env(open_maze(5, 5, "2,2,N"));
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    ParamVector theta = maze_theta(cfg);

    InstructionSequence x;
    x.sentences.push_back(one_word("left"));

    // the instruction must license step 1, so step 0 is free filler: the
    // planner still has to produce a length >= 2 path
    SeqAlignment fixed{{1}};
    PlanConfig pc;
    pc.beamWidth = 32;
    pc.maxLength = 2;
    PlanResult r = beam_search_plan(x, *env, "2,2,N", fixed, theta, cfg, theta.index, pc);
    REQUIRE(r.path.length() == 2);
    CHECK(r.path.steps[1].action.canonical() == "dir=left,type=rotate");
    CHECK(r.alignment.assign == std::vector<int>{1});

    SeqAlignment tooFar{{9}};
    CHECK_THROWS_AS(beam_search_plan(x, *env, "2,2,N", tooFar, theta, cfg, theta.index, pc), Error);
    InstructionSequence two;
    two.sentences = {one_word("left"), one_word("right")};
    SeqAlignment backwards{{1, 0}};
    CHECK_THROWS_AS(beam_search_plan(two, *env, "2,2,N", backwards, theta, cfg, theta.index, pc),
                    Error);
    SeqAlignment wrongArity{{0, 0}};
    CHECK_THROWS_AS(beam_search_plan(x, *env, "2,2,N", wrongArity, theta, cfg, theta.index, pc),
                    Error);
}

TEST_CASE("goal-bearing environments only complete at goals") {
    CrossblockInstance inst;
    inst.rows = 1;
    inst.cols = 4;
    inst.segment = 2;
    inst.blocks = {true, true, true, true};
    auto env = make_crossblock_env(inst);
    ParamVector theta;
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    InstructionSequence none;
    PlanConfig pc;
    pc.beamWidth = 8;
    pc.maxLength = 4;
    PlanResult r = beam_search_plan(none, *env, env->initial_state(), std::nullopt, theta, cfg,
                                    theta.index, pc);
    // a 1x4 board with k=2 clears in exactly two moves, never fewer
    CHECK(r.path.length() == 2);
    CHECK(*env->is_goal(r.path.steps.back().postState));

    // unsolvable board: three blocks, segment two, no complete path
    CrossblockInstance stuck;
    stuck.rows = 1;
    stuck.cols = 3;
    stuck.segment = 2;
    stuck.blocks = {true, false, true};
    auto stuckEnv = make_crossblock_env(stuck);
    CHECK_THROWS_AS(beam_search_plan(none, *stuckEnv, stuckEnv->initial_state(), std::nullopt, theta,
                                     cfg, theta.index, pc),
                    Error);
}

TEST_CASE("fixed length mode completes only at exactly maxLength") {
    auto env = make_maze_env(open_maze(3, 3, "1,1,N"));
    ParamVector theta;
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    InstructionSequence none;
    PlanConfig pc;
    pc.beamWidth = 16;
    pc.maxLength = 3;
    pc.lengthMode = LengthMode::Fixed;
    PlanResult r = beam_search_plan(none, *env, "1,1,N", std::nullopt, theta, cfg, theta.index, pc);
    CHECK(r.path.length() == 3);
}

TEST_CASE("wide beams match the exhaustive oracle on random instances") {
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = true;
    cfg.lengthFeatures = true;
    Rng rng(20260815, "beam-oracle");
    TemplateBank bank = parse_template_bank(builtin_template_text());
    int done = 0;
    for (int trial = 0; trial < 12; ++trial) {
        GeneratorOptions opts;
        opts.envKind = trial % 2 == 0 ? "maze" : "crossblock";
        opts.count = 1;
        opts.seed = 1000 + static_cast<std::uint64_t>(trial);
        auto demos = generate_synthetic_dataset(opts, bank);
        auto env = make_env(demos[0].environmentId, demos[0].instanceJson);

        ParamVector theta;
        // intern on the demo's own material, then randomize
        for (const auto& step : demos[0].path.steps) {
            path_features(step.graph, cfg, theta.index, IndexMode::Grow);
            for (const auto& sent : demos[0].instructions.sentences)
                extract_pair_features(sent, step.graph, cfg, theta.index, IndexMode::Grow);
        }
        for (std::size_t n = 1; n <= 4; ++n) length_features(n, cfg, theta.index, IndexMode::Grow);
        theta.sync_with_index();
        for (double& w : theta.weights) w = rng.uniform(-1.0, 1.0);

        PlanConfig pc;
        pc.beamWidth = 100000;  // wider than any reachable prefix count
        pc.maxLength = 3;
        pc.lengthMode = trial % 3 == 0 ? LengthMode::Fixed : LengthMode::BoundedAllLengths;

        PlanResult fast, slow;
        bool fastFound = true, slowFound = true;
        try {
            fast = beam_search_plan(demos[0].instructions, *env, demos[0].startState, std::nullopt,
                                    theta, cfg, theta.index, pc);
        } catch (const Error& e) {
            REQUIRE(e.code() == Err::NoPathFound);
            fastFound = false;
        }
        try {
            slow = exhaustive_plan(demos[0].instructions, *env, demos[0].startState, theta, cfg,
                                   theta.index, pc);
        } catch (const Error& e) {
            REQUIRE(e.code() == Err::NoPathFound);
            slowFound = false;
        }
        REQUIRE(fastFound == slowFound);
        if (!fastFound) continue;
        ++done;
        CHECK(fast.score == doctest::Approx(slow.score).epsilon(1e-9));
        CHECK(actions_of(fast.path) == actions_of(slow.path));
        CHECK(fast.alignment.assign == slow.alignment.assign);
    }
    CHECK(done >= 6);
}

TEST_CASE("planner score equals the path potential of its own result") {
    auto env = make_maze_env(open_maze(4, 4, "0,0,N"));
    FeatureTemplateConfig cfg;
    ParamVector theta = maze_theta(cfg);
    InstructionSequence x;
    x.sentences.push_back(one_word("right"));
    x.sentences.push_back(one_word("3"));
    PlanConfig pc;
    pc.beamWidth = 64;
    pc.maxLength = 3;
    PlanResult r = beam_search_plan(x, *env, "0,0,N", std::nullopt, theta, cfg, theta.index, pc);
    ParamVector padded = theta;
    padded.sync_with_index();
    PathPotentialBreakdown b =
        path_log_potential(x, r.path, r.alignment, padded, cfg, padded.index, IndexMode::Frozen);
    CHECK(r.score == doctest::Approx(b.total).epsilon(1e-9));
}

TEST_CASE("icm_infer returns a coherent plan that honors the instruction") {
    auto env = make_maze_env(open_maze(5, 5, "2,0,N"));
    FeatureTemplateConfig cfg;
    cfg.pathFeatures = false;
    cfg.lengthFeatures = false;
    ParamVector theta = maze_theta(cfg);

    InstructionSequence x;
    x.sentences.push_back(one_word("2"));

    PlanConfig pc;
    pc.beamWidth = 32;
    pc.maxLength = 2;
    PlanResult r = icm_infer(x, *env, "2,0,N", theta, cfg, theta.index, pc);
    REQUIRE(r.path.length() >= 1);
    CHECK(r.alignment.size() == 1);
    // the instruction "2" pulls a two-cell move into the plan
    bool hasMove2 = false;
    for (const auto& s : r.path.steps)
        if (s.action.canonical() == "mag=2,magnitude=2,type=move") hasMove2 = true;
    CHECK(hasMove2);

    ParamVector padded = theta;
    padded.sync_with_index();
    PathPotentialBreakdown b =
        path_log_potential(x, r.path, r.alignment, padded, cfg, padded.index, IndexMode::Frozen);
    CHECK(r.score == doctest::Approx(b.total).epsilon(1e-9));
}

TEST_CASE("exhaustive oracle rejects explosive state spaces") {
    // an open 101x101 maze has ~4 * 10^4 reachable poses
    auto env = make_maze_env(open_maze(101, 101, "0,0,N"));
    ParamVector theta;
    FeatureTemplateConfig cfg;
    InstructionSequence none;
    PlanConfig pc;
    pc.beamWidth = 4;
    pc.maxLength = 2;
    try {
        exhaustive_plan(none, *env, "0,0,N", theta, cfg, theta.index, pc);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Err::TooLarge);
    }
}
