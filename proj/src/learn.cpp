#include "ifalign/learn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ifalign/errors.hpp"
#include "ifalign/rng.hpp"
#include "ifalign/seqmodel.hpp"
#include "ifalign/structalign.hpp"

namespace ifalign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// One demonstrated step with its candidate material frozen into caches, so
/// every optimizer evaluation is arithmetic over prepared sparse vectors.
struct StepTask {
    std::vector<SparseVec> pathFeat;            // per option
    std::vector<std::vector<PairFeatures>> pf;  // [option][aligned instruction]
    std::size_t goldIndex = 0;
};

struct Evaluator {
    std::vector<StepTask> tasks;
    double l2 = 0.0;

    double eval(const std::vector<double>& w, std::vector<double>& grad) const {
        std::fill(grad.begin(), grad.end(), 0.0);
        double obj = 0.0;
        std::vector<double> scores;
        for (const auto& task : tasks) {
            const std::size_t nOpt = task.pathFeat.size();
            scores.assign(nOpt, 0.0);
            double mx = kNegInf;
            for (std::size_t o = 0; o < nOpt; ++o) {
                double s = sparse_dot(task.pathFeat[o], w);
                for (const auto& pf : task.pf[o]) s += pair_log_score_cached(pf, w);
                scores[o] = s;
                mx = std::max(mx, s);
            }
            if (scores[task.goldIndex] == kNegInf)
                throw Error(Err::DegenerateScore, "gold action does not embed");
            double sumExp = 0.0;
            for (double s : scores)
                if (s != kNegInf) sumExp += std::exp(s - mx);
            double lse = mx + std::log(sumExp);
            obj += scores[task.goldIndex] - lse;

            for (std::size_t o = 0; o < nOpt; ++o) {
                double p = scores[o] == kNegInf ? 0.0 : std::exp(scores[o] - lse);
                double scale = (o == task.goldIndex ? 1.0 : 0.0) - p;
                if (scale == 0.0) continue;
                for (const auto& [c, v] : task.pathFeat[o].entries())
                    grad[static_cast<std::size_t>(c)] += scale * v;
                for (const auto& pf : task.pf[o]) pair_score_gradient_cached(pf, w, grad, scale);
            }
        }
        double norm2 = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c) {
            norm2 += w[c] * w[c];
            grad[c] -= l2 * w[c];
        }
        return obj - 0.5 * l2 * norm2;
    }
};

Evaluator build_evaluator(const std::vector<Demonstration>& demos,
                          const std::vector<SeqAlignment>& alignments,
                          const std::vector<CandidateSet>& candidates,
                          const FeatureTemplateConfig& cfg, FeatureIndex& idx, IndexMode mode,
                          double l2) {
    Evaluator ev;
    ev.l2 = l2;
    for (std::size_t d = 0; d < demos.size(); ++d) {
        const Demonstration& demo = demos[d];
        const SeqAlignment& a = alignments[d];
        for (std::size_t j = 0; j < candidates[d].size(); ++j) {
            const StepCandidates& cand = candidates[d][j];
            StepTask task;
            task.goldIndex = cand.goldIndex;
            std::vector<int> aligned;
            for (std::size_t i = 0; i < a.assign.size(); ++i)
                if (a.assign[i] == static_cast<int>(j)) aligned.push_back(static_cast<int>(i));
            for (const ActionStep& opt : cand.options) {
                task.pathFeat.push_back(path_features(opt.graph, cfg, idx, mode));
                std::vector<PairFeatures> pfs;
                for (int i : aligned)
                    pfs.push_back(extract_pair_features(
                        demo.instructions.sentences[static_cast<std::size_t>(i)], opt.graph, cfg, idx,
                        mode));
                task.pf.push_back(std::move(pfs));
            }
            ev.tasks.push_back(std::move(task));
        }
    }
    return ev;
}

void check_demos(const std::vector<Demonstration>& demos) {
    if (demos.empty()) throw Error(Err::UsageError, "no demonstrations");
    // a demo may carry zero sentences (every step's sentence dropped); it
    // still contrasts its path features, so only empty paths are rejected
    for (const auto& d : demos)
        if (d.path.empty()) throw Error(Err::DataError, "demonstration '" + d.id + "' has an empty path");
}

}  // namespace

Validation TrainConfig::validate() const {
    if (k < 1) return Validation::fail("BadK", "candidate cap must be at least 1");
    if (icmRounds < 0) return Validation::fail("BadRounds", "round count must be nonnegative");
    if (l2 < 0.0) return Validation::fail("BadL2", "regularizer must be nonnegative");
    if (initScale < 0.0) return Validation::fail("BadInitScale", "scale must be nonnegative");
    return Validation::pass();
}

CandidateSet build_candidate_sets(const Demonstration& demo, const EnvironmentModel& env, int k,
                                  std::uint64_t seed) {
    CandidateSet out;
    for (std::size_t j = 0; j < demo.path.length(); ++j) {
        const ActionStep& gold = demo.path.steps[j];
        std::vector<Successor> succs = env.successors(gold.preState);
        if (succs.empty())
            throw Error(Err::NoSuccessors, "state '" + gold.preState + "' in demonstration '" + demo.id + "'");
        int goldAt = -1;
        for (std::size_t s = 0; s < succs.size(); ++s)
            if (succs[s].action == gold.action) goldAt = static_cast<int>(s);
        if (goldAt < 0)
            throw Error(Err::DataError, "gold action of step " + std::to_string(j) +
                                            " is not a legal successor in demonstration '" + demo.id + "'");

        std::vector<int> chosen;
        if (static_cast<int>(succs.size()) <= k) {
            for (std::size_t s = 0; s < succs.size(); ++s) chosen.push_back(static_cast<int>(s));
        } else {
            std::vector<int> others;
            for (std::size_t s = 0; s < succs.size(); ++s)
                if (static_cast<int>(s) != goldAt) others.push_back(static_cast<int>(s));
            Rng rng(seed, demo.id + "#" + std::to_string(j));
            for (std::size_t pick : rng.sample_without_replacement(others.size(),
                                                                   static_cast<std::size_t>(k - 1)))
                chosen.push_back(others[pick]);
            chosen.push_back(goldAt);
            std::sort(chosen.begin(), chosen.end());
        }

        StepCandidates sc;
        for (int s : chosen) {
            if (s == goldAt) sc.goldIndex = sc.options.size();
            ActionStep step;
            step.preState = gold.preState;
            step.action = succs[static_cast<std::size_t>(s)].action;
            step.postState = succs[static_cast<std::size_t>(s)].next;
            step.graph = env.grounding_graph(step.preState, step.action, step.postState);
            sc.options.push_back(std::move(step));
        }
        out.push_back(std::move(sc));
    }
    return out;
}

std::pair<double, SparseVec> contrastive_objective(const std::vector<Demonstration>& demos,
                                                   const std::vector<SeqAlignment>& alignments,
                                                   const std::vector<CandidateSet>& candidates,
                                                   ParamVector& theta, const FeatureTemplateConfig& cfg,
                                                   double l2, IndexMode mode) {
    Evaluator ev = build_evaluator(demos, alignments, candidates, cfg, theta.index, mode, l2);
    theta.sync_with_index();
    std::vector<double> grad(theta.weights.size(), 0.0);
    double obj = ev.eval(theta.weights, grad);
    SparseVec g;
    for (std::size_t c = 0; c < grad.size(); ++c)
        if (grad[c] != 0.0) g.add(static_cast<int>(c), grad[c]);
    return {obj, std::move(g)};
}

TrainedModel train_icm(const std::vector<Demonstration>& demos,
                       const std::vector<const EnvironmentModel*>& envs, const TrainConfig& cfg,
                       const FeatureTemplateConfig& featureCfg) {
    check_demos(demos);
    if (envs.size() != demos.size()) throw Error(Err::UsageError, "one environment per demonstration");
    if (Validation v = cfg.validate(); !v.ok()) throw Error(Err::UsageError, v.code + ": " + v.detail);
    if (Validation v = featureCfg.validate(); !v.ok()) throw Error(Err::UsageError, v.code + ": " + v.detail);

    TrainedModel model;
    model.featureConfig = featureCfg;
    model.trainConfig = cfg;
    model.envKind = envs[0]->kind();
    ParamVector& theta = model.theta;

    Rng initRng(cfg.seed, "init");
    auto ensure_init = [&] {
        while (theta.weights.size() < static_cast<std::size_t>(theta.index.size()))
            theta.weights.push_back(initRng.uniform(-cfg.initScale, cfg.initScale));
    };

    // gold pair material is stable across rounds; extract it once, growing the
    // index, so even a zero-round run leaves a seeded model behind
    std::vector<std::vector<PairFeatures>> goldPf(demos.size());  // [demo][i * n + j]
    for (std::size_t d = 0; d < demos.size(); ++d) {
        const auto& x = demos[d].instructions;
        const auto& y = demos[d].path;
        goldPf[d].reserve(x.length() * y.length());
        for (std::size_t i = 0; i < x.length(); ++i)
            for (std::size_t j = 0; j < y.length(); ++j)
                goldPf[d].push_back(extract_pair_features(x.sentences[i], y.steps[j].graph, featureCfg,
                                                          theta.index, IndexMode::Grow));
    }
    ensure_init();

    std::vector<SeqAlignment> aligns(demos.size());
    for (int r = 1; r <= cfg.icmRounds; ++r) {
        int changes = 0;
        for (std::size_t d = 0; d < demos.size(); ++d) {
            PairScoreMatrix P;
            P.m = demos[d].instructions.length();
            P.n = demos[d].path.length();
            if (P.m == 0) continue;  // no sentences to place
            P.scores.resize(P.m * P.n);
            for (std::size_t i = 0; i < P.m; ++i)
                for (std::size_t j = 0; j < P.n; ++j)
                    P.at(i, j) = pair_log_score_cached(goldPf[d][i * P.n + j], theta.weights);
            SeqAlignment a = viterbi_sequence_alignment(P).first;
            if (a.assign != aligns[d].assign) ++changes;
            aligns[d] = std::move(a);
        }
        if (r > 1 && changes == 0) {
            model.converged = true;
            break;
        }

        std::vector<CandidateSet> candidates(demos.size());
        std::uint64_t roundSeed = cfg.seed ^ fnv1a64("round:" + std::to_string(r));
        for (std::size_t d = 0; d < demos.size(); ++d)
            candidates[d] = build_candidate_sets(demos[d], *envs[d], cfg.k, roundSeed);

        Evaluator ev = build_evaluator(demos, aligns, candidates, featureCfg, theta.index,
                                       IndexMode::Grow, cfg.l2);
        ensure_init();

        RoundDiagnostics diag;
        diag.round = r;
        diag.alignmentChanges = changes;
        std::vector<double> scratch(theta.weights.size());
        diag.objectiveBefore = ev.eval(theta.weights, scratch);
        OptimizeResult opt = optimize_theta(
            [&](const std::vector<double>& w, std::vector<double>& g) { return ev.eval(w, g); },
            theta.weights, cfg.optimizer);
        theta.weights = std::move(opt.theta);
        diag.objectiveAfter = opt.objective;
        diag.optimizerIterations = opt.iterations;
        model.diagnostics.push_back(diag);
    }
    return model;
}

TrainedModel train_icm(const std::vector<Demonstration>& demos, const EnvironmentModel& env,
                       const TrainConfig& cfg, const FeatureTemplateConfig& featureCfg) {
    std::vector<const EnvironmentModel*> envs(demos.size(), &env);
    return train_icm(demos, envs, cfg, featureCfg);
}

double finite_difference_gradcheck(const ObjectiveFn& f, const std::vector<double>& theta, double step,
                                   int maxCoords) {
    std::vector<double> analytic(theta.size(), 0.0), scratch(theta.size(), 0.0);
    f(theta, analytic);
    const std::size_t n = theta.size();
    const std::size_t count = std::min<std::size_t>(n, static_cast<std::size_t>(maxCoords));
    double worst = 0.0;
    std::vector<double> probe = theta;
    for (std::size_t s = 0; s < count; ++s) {
        std::size_t c = count == n ? s : s * n / count;
        double keep = probe[c];
        probe[c] = keep + step;
        double fp = f(probe, scratch);
        probe[c] = keep - step;
        double fm = f(probe, scratch);
        probe[c] = keep;
        double numeric = (fp - fm) / (2.0 * step);
        double rel = std::fabs(analytic[c] - numeric) /
                     std::max({1.0, std::fabs(analytic[c]), std::fabs(numeric)});
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace ifalign
