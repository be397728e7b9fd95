#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ifalign/env.hpp"
#include "ifalign/errors.hpp"
#include "ifalign/seqmodel.hpp"
#include "ifalign/structalign.hpp"
#include "randgen.hpp"

using namespace ifalign;

namespace {

PairScoreMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n, bool quantize) {
    PairScoreMatrix P;
    P.m = m;
    P.n = n;
    P.scores.resize(m * n);
    for (double& s : P.scores) {
        s = rng.uniform(-5.0, 5.0);
        // coarse grid makes exact ties common, exercising the tie-break
        if (quantize) s = std::floor(s);
    }
    return P;
}

}  // namespace

TEST_CASE("viterbi matches exhaustive enumeration, score and argmax") {
    Rng rng(20260815, "viterbi-oracle");
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t m = 1 + rng.below(5);
        std::size_t n = 1 + rng.below(5);
        PairScoreMatrix P = random_matrix(rng, m, n, trial % 2 == 0);
        auto [fast, fastScore] = viterbi_sequence_alignment(P);
        auto [slow, slowScore] = brute_force_alignment(P);
        CHECK(fastScore == doctest::Approx(slowScore).epsilon(1e-12));
        CHECK(fast.assign == slow.assign);
        CHECK(fast.monotone());
        CHECK(fast.in_range(n));
    }
}

TEST_CASE("hand case: diagonal dominant") {
    PairScoreMatrix P;
    P.m = 3;
    P.n = 3;
    P.scores = {5, 0, 0,
                0, 5, 0,
                0, 0, 5};
    auto [a, score] = viterbi_sequence_alignment(P);
    CHECK(a.assign == std::vector<int>{0, 1, 2});
    CHECK(score == doctest::Approx(15.0));
}

TEST_CASE("uniform matrix ties to the all-zeros alignment") {
    PairScoreMatrix P;
    P.m = 3;
    P.n = 4;
    P.scores.assign(12, 1.25);
    auto [a, score] = viterbi_sequence_alignment(P);
    CHECK(a.assign == std::vector<int>{0, 0, 0});
    CHECK(score == doctest::Approx(3.75));
}

TEST_CASE("many instructions may share one action and actions may be skipped") {
    PairScoreMatrix P;
    P.m = 3;
    P.n = 3;
    // column 1 dominates every row: all instructions pile onto action 1
    P.scores = {0, 9, 0,
                0, 9, 0,
                0, 9, 0};
    auto [a, score] = viterbi_sequence_alignment(P);
    CHECK(a.assign == std::vector<int>{1, 1, 1});
    CHECK(score == doctest::Approx(27.0));
}

TEST_CASE("adding a constant to one row shifts the score, not the argmax") {
    Rng rng(5, "row-shift");
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t m = 1 + rng.below(4);
        std::size_t n = 1 + rng.below(4);
        PairScoreMatrix P = random_matrix(rng, m, n, false);
        auto [a0, s0] = viterbi_sequence_alignment(P);
        std::size_t row = rng.below(m);
        const double c = 2.5;
        PairScoreMatrix Q = P;
        for (std::size_t j = 0; j < n; ++j) Q.at(row, j) += c;
        auto [a1, s1] = viterbi_sequence_alignment(Q);
        CHECK(a1.assign == a0.assign);
        CHECK(s1 == doctest::Approx(s0 + c).epsilon(1e-12));
    }
}

TEST_CASE("empty matrices are rejected") {
    PairScoreMatrix none;
    CHECK_THROWS_AS(viterbi_sequence_alignment(none), Error);
    PairScoreMatrix noActions;
    noActions.m = 2;
    noActions.n = 0;
    try {
        viterbi_sequence_alignment(noActions);
        FAIL("expected EmptyMatrix");
    } catch (const Error& e) {
        CHECK(e.code() == Err::EmptyMatrix);
    }
    CHECK_THROWS_AS(brute_force_alignment(none), Error);
}

TEST_CASE("brute force alignment refuses oversized matrices") {
    PairScoreMatrix big;
    big.m = 7;
    big.n = 2;
    big.scores.assign(14, 0.0);
    try {
        brute_force_alignment(big);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Err::TooLarge);
    }
}

namespace {

/// A tiny maze fixture: one env, one short gold path, one instruction.
struct Fixture {
    std::unique_ptr<EnvironmentModel> env;
    Path path;
    InstructionSequence instructions;

    Fixture() {
        MazeInstance inst;
        inst.width = 3;
        inst.height = 3;
        inst.cells.resize(9);
        for (auto& c : inst.cells) {
            c.open = true;
            c.floor = "grey";
            c.wall = "brick";
        }
        inst.start = "1,0,N";
        env = make_maze_env(inst);

        StateId s = env->initial_state();
        for (int step = 0; step < 2; ++step) {
            auto succ = env->successors(s);
            REQUIRE_FALSE(succ.empty());
            path.steps.push_back(
                {s, succ[0].action, succ[0].next, env->grounding_graph(s, succ[0].action, succ[0].next)});
            s = succ[0].next;
        }

        DependencyTree t;
        t.tokens.resize(1);
        t.tokens[0].insert_symbol("word", "turn");
        t.heads = {DependencyTree::kRoot};
        t.depLabels.resize(1);
        instructions.sentences.push_back(t);
    }

    /// intern every pair feature, then pad the weights
    void materialize(ParamVector& theta, const FeatureTemplateConfig& cfg) const {
        for (const auto& sent : instructions.sentences)
            for (const auto& step : path.steps)
                extract_pair_features(sent, step.graph, cfg, theta.index, IndexMode::Grow);
        theta.sync_with_index();
    }
};

}  // namespace

TEST_CASE("pair matrix has one finite score per (instruction, step)") {
    Fixture f;
    FeatureTemplateConfig cfg;
    ParamVector theta;
    f.materialize(theta, cfg);
    PairScoreMatrix P = build_pair_matrix(f.instructions, f.path, theta, cfg, theta.index, IndexMode::Frozen);
    CHECK(P.m == 1);
    CHECK(P.n == 2);
    for (double s : P.scores) CHECK(std::isfinite(s));
}

TEST_CASE("path potential decomposes into length, step, and pair terms") {
    Fixture f;
    FeatureTemplateConfig cfg;
    ParamVector theta;
    // intern everything, then weight a few names
    for (std::size_t j = 0; j < f.path.length(); ++j)
        path_features(f.path.steps[j].graph, cfg, theta.index, IndexMode::Grow);
    length_features(f.path.length(), cfg, theta.index, IndexMode::Grow);
    f.materialize(theta, cfg);
    Rng rng(31, "weights");
    for (double& w : theta.weights) w = rng.uniform(-0.5, 0.5);

    SeqAlignment a{{1}};
    PathPotentialBreakdown b =
        path_log_potential(f.instructions, f.path, a, theta, cfg, theta.index, IndexMode::Frozen);
    REQUIRE(b.stepTerms.size() == 2);
    REQUIRE(b.pairTerms.size() == 1);
    CHECK(b.pairTerms[0].first == 0);
    double sum = b.lengthTerm + b.stepTerms[0] + b.stepTerms[1] + b.pairTerms[0].second;
    CHECK(b.total == doctest::Approx(sum).epsilon(1e-12));

    PairScoreMatrix P =
        build_pair_matrix(f.instructions, f.path, theta, cfg, theta.index, IndexMode::Frozen);
    CHECK(b.pairTerms[0].second == doctest::Approx(P.at(0, 1)).epsilon(1e-12));

    // disabling the ensemble terms zeroes them
    FeatureTemplateConfig bare = cfg;
    bare.pathFeatures = false;
    bare.lengthFeatures = false;
    PathPotentialBreakdown b2 =
        path_log_potential(f.instructions, f.path, a, theta, bare, theta.index, IndexMode::Frozen);
    CHECK(b2.lengthTerm == 0.0);
    CHECK(b2.stepTerms[0] == 0.0);
    CHECK(b2.total == doctest::Approx(b2.pairTerms[0].second).epsilon(1e-12));
}

TEST_CASE("path potential rejects bad alignments with named errors") {
    Fixture f;
    FeatureTemplateConfig cfg;
    ParamVector theta;
    f.materialize(theta, cfg);

    SeqAlignment outOfRange{{5}};
    try {
        path_log_potential(f.instructions, f.path, outOfRange, theta, cfg, theta.index);
        FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == Err::IndexOutOfRange);
    }

    InstructionSequence two;
    two.sentences = {f.instructions.sentences[0], f.instructions.sentences[0]};
    SeqAlignment backwards{{1, 0}};
    try {
        path_log_potential(two, f.path, backwards, theta, cfg, theta.index);
        FAIL("expected NonMonotoneAlignment");
    } catch (const Error& e) {
        CHECK(e.code() == Err::NonMonotoneAlignment);
    }

    SeqAlignment wrongLength{{0, 1}};
    CHECK_THROWS_AS(path_log_potential(f.instructions, f.path, wrongLength, theta, cfg, theta.index),
                    Error);
}

TEST_CASE("zero instructions: empty alignment scores just the path ensemble") {
    Fixture f;
    FeatureTemplateConfig cfg;
    ParamVector theta;
    for (std::size_t j = 0; j < f.path.length(); ++j)
        path_features(f.path.steps[j].graph, cfg, theta.index, IndexMode::Grow);
    length_features(f.path.length(), cfg, theta.index, IndexMode::Grow);
    theta.sync_with_index();
    for (double& w : theta.weights) w = 0.25;

    InstructionSequence none;
    SeqAlignment empty;
    PathPotentialBreakdown b = path_log_potential(none, f.path, empty, theta, cfg, theta.index);
    CHECK(b.pairTerms.empty());
    CHECK(b.total == doctest::Approx(b.lengthTerm + b.stepTerms[0] + b.stepTerms[1]).epsilon(1e-12));
}
