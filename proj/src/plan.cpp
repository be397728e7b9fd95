#include "ifalign/plan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "ifalign/errors.hpp"
#include "ifalign/structalign.hpp"

namespace ifalign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// score desc, then shortlex on the serialized actions: a tie never buys
/// extra steps, so the minimal plan among score ties wins
bool better(double score, const std::vector<std::string>& key, double bestScore,
            const std::vector<std::string>& bestKey) {
    if (score != bestScore) return score > bestScore;
    if (key.size() != bestKey.size()) return key.size() < bestKey.size();
    return std::lexicographical_compare(key.begin(), key.end(), bestKey.begin(), bestKey.end());
}

/// memoized per-(preState, action) material: the step potential and the pair
/// score against every instruction
struct StepScores {
    double stepTerm = 0.0;
    std::vector<double> pairScores;  // per instruction
};

class ScoreCache {
public:
    ScoreCache(const InstructionSequence& x, const ParamVector& theta,
               const FeatureTemplateConfig& cfg, FeatureIndex& idx)
        : x_(x), theta_(theta), cfg_(cfg), idx_(idx) {}

    const StepScores& at(const ActionStep& step) {
        std::string key = step.preState + "|" + step.action.canonical();
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        StepScores s;
        s.stepTerm = sparse_dot(path_features(step.graph, cfg_, idx_, IndexMode::Frozen), theta_);
        s.pairScores.reserve(x_.length());
        for (const auto& sent : x_.sentences) {
            PairFeatures pf = extract_pair_features(sent, step.graph, cfg_, idx_, IndexMode::Frozen);
            s.pairScores.push_back(pair_log_score_cached(pf, theta_.weights));
        }
        return memo_.emplace(std::move(key), std::move(s)).first->second;
    }

private:
    const InstructionSequence& x_;
    const ParamVector& theta_;
    const FeatureTemplateConfig& cfg_;
    FeatureIndex& idx_;
    std::map<std::string, StepScores> memo_;
};

struct Prefix {
    Path path;
    std::vector<double> stepTerms;
    std::vector<std::vector<double>> pairCols;  // per step: pair score per instruction
    std::vector<std::string> key;
    double rank = 0.0;
};

/// every instruction binds to its best step at or after the previous
/// instruction's binding; ties take the earliest step
double greedy_frontier_score(const std::vector<std::vector<double>>& cols, std::size_t m) {
    if (cols.empty() || m == 0) return 0.0;
    double total = 0.0;
    std::size_t lo = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double best = kNegInf;
        std::size_t bestJ = lo;
        for (std::size_t j = lo; j < cols.size(); ++j) {
            if (cols[j][i] > best) {
                best = cols[j][i];
                bestJ = j;
            }
        }
        total += best;
        lo = bestJ;
    }
    return total;
}

struct Complete {
    PlanResult result;
    std::vector<std::string> key;
    bool found = false;

    void offer(PlanResult r, std::vector<std::string> k) {
        if (!found || better(r.score, k, result.score, key)) {
            result = std::move(r);
            key = std::move(k);
            found = true;
        }
    }
};

}  // namespace

Validation PlanConfig::validate() const {
    if (beamWidth < 1) return Validation::fail("BadBeamWidth", "beam width must be at least 1");
    if (maxLength < 1) return Validation::fail("BadMaxLength", "length cap must be at least 1");
    if (icmRoundsInfer < 0) return Validation::fail("BadRounds", "round count must be nonnegative");
    return Validation::pass();
}

PlanResult beam_search_plan(const InstructionSequence& x, const EnvironmentModel& env,
                            const StateId& start, const std::optional<SeqAlignment>& fixedAlignment,
                            const ParamVector& theta, const FeatureTemplateConfig& cfg,
                            FeatureIndex& idx, const PlanConfig& planCfg) {
    if (Validation v = planCfg.validate(); !v.ok()) throw Error(Err::UsageError, v.code + ": " + v.detail);
    const std::size_t m = x.length();
    if (fixedAlignment) {
        if (fixedAlignment->size() != m) throw Error(Err::IndexOutOfRange, "alignment length mismatch");
        if (!fixedAlignment->monotone()) throw Error(Err::NonMonotoneAlignment, "fixed alignment");
    }
    std::size_t minLen = 1;
    if (fixedAlignment)
        for (int j : fixedAlignment->assign) minLen = std::max(minLen, static_cast<std::size_t>(j) + 1);
    const bool goalBearing = env.is_goal(start).has_value();

    ScoreCache cache(x, theta, cfg, idx);
    Complete best;

    auto try_complete = [&](const Prefix& p) {
        const std::size_t n = p.path.length();
        if (planCfg.lengthMode == LengthMode::Fixed && n != static_cast<std::size_t>(planCfg.maxLength))
            return;
        if (n < minLen) return;
        if (goalBearing && !*env.is_goal(p.path.steps.back().postState)) return;

        PlanResult r;
        r.path = p.path;
        double total = sparse_dot(length_features(n, cfg, idx, IndexMode::Frozen), theta);
        for (double t : p.stepTerms) total += t;
        if (m == 0) {
            r.alignment.assign.clear();
        } else if (fixedAlignment) {
            r.alignment = *fixedAlignment;
            for (std::size_t i = 0; i < m; ++i)
                total += p.pairCols[static_cast<std::size_t>(fixedAlignment->assign[i])][i];
        } else {
            PairScoreMatrix P;
            P.m = m;
            P.n = n;
            P.scores.resize(m * n);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < n; ++j) P.at(i, j) = p.pairCols[j][i];
            auto [a, s] = viterbi_sequence_alignment(P);
            r.alignment = std::move(a);
            total += s;
        }
        r.score = total;
        best.offer(std::move(r), p.key);
    };

    std::vector<Prefix> beam(1);
    for (int depth = 1; depth <= planCfg.maxLength && !beam.empty(); ++depth) {
        std::vector<Prefix> grown;
        for (const Prefix& p : beam) {
            const StateId& cur = p.path.empty() ? start : p.path.steps.back().postState;
            for (Successor& succ : env.successors(cur)) {
                Prefix q = p;
                ActionStep step;
                step.preState = cur;
                step.action = std::move(succ.action);
                step.postState = std::move(succ.next);
                step.graph = env.grounding_graph(step.preState, step.action, step.postState);
                const StepScores& s = cache.at(step);
                q.stepTerms.push_back(s.stepTerm);
                q.pairCols.push_back(s.pairScores);
                q.key.push_back(step.action.canonical());
                q.path.steps.push_back(std::move(step));

                double stepSum = 0.0;
                for (double t : q.stepTerms) stepSum += t;
                double pairSum;
                if (m == 0) {
                    pairSum = 0.0;
                } else if (fixedAlignment) {
                    pairSum = 0.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        auto j = static_cast<std::size_t>(fixedAlignment->assign[i]);
                        if (j < q.pairCols.size()) pairSum += q.pairCols[j][i];
                    }
                } else {
                    pairSum = greedy_frontier_score(q.pairCols, m);
                }
                q.rank = stepSum + pairSum;
                try_complete(q);
                grown.push_back(std::move(q));
            }
        }
        std::sort(grown.begin(), grown.end(), [](const Prefix& a, const Prefix& b) {
            return better(a.rank, a.key, b.rank, b.key);
        });
        if (grown.size() > static_cast<std::size_t>(planCfg.beamWidth))
            grown.resize(static_cast<std::size_t>(planCfg.beamWidth));
        beam = std::move(grown);
    }

    if (!best.found) throw Error(Err::NoPathFound, "no complete path within the length cap");
    return best.result;
}

PlanResult icm_infer(const InstructionSequence& x, const EnvironmentModel& env, const StateId& start,
                     const ParamVector& theta, const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                     const PlanConfig& planCfg) {
    // seed with the free-alignment beam plan; a text-free seed would pin every
    // sentence to the shortest path's steps and the fixed-alignment rounds
    // could never grow the path past a pair-term tie
    PlanResult cur = beam_search_plan(x, env, start, std::nullopt, theta, cfg, idx, planCfg);
    auto align_to = [&](const Path& y) -> std::pair<SeqAlignment, double> {
        if (x.length() == 0) return {SeqAlignment{}, 0.0};
        PairScoreMatrix P = build_pair_matrix(x, y, theta, cfg, idx, IndexMode::Frozen);
        return viterbi_sequence_alignment(P);
    };
    auto joint = [&](const Path& y, const SeqAlignment& a) {
        return path_log_potential(x, y, a, theta, cfg, idx, IndexMode::Frozen).total;
    };
    cur.score = joint(cur.path, cur.alignment);

    for (int r = 0; r < planCfg.icmRoundsInfer; ++r) {
        PlanResult replanned;
        try {
            replanned = beam_search_plan(x, env, start, cur.alignment, theta, cfg, idx, planCfg);
        } catch (const Error& e) {
            if (e.code() == Err::NoPathFound) break;
            throw;
        }
        SeqAlignment a = align_to(replanned.path).first;
        double s = joint(replanned.path, a);
        if (s <= cur.score) break;
        cur.path = std::move(replanned.path);
        cur.alignment = std::move(a);
        cur.score = s;
    }
    return cur;
}

PlanResult exhaustive_plan(const InstructionSequence& x, const EnvironmentModel& env,
                           const StateId& start, const ParamVector& theta,
                           const FeatureTemplateConfig& cfg, FeatureIndex& idx,
                           const PlanConfig& planCfg) {
    if (Validation v = planCfg.validate(); !v.ok()) throw Error(Err::UsageError, v.code + ": " + v.detail);
    constexpr std::size_t kStateCap = 10000;
    constexpr std::size_t kPrefixCap = 2000000;

    // reachability guard before enumerating
    {
        std::vector<StateId> frontier{start};
        std::map<StateId, bool> seen{{start, true}};
        while (!frontier.empty()) {
            StateId s = std::move(frontier.back());
            frontier.pop_back();
            for (const Successor& succ : env.successors(s)) {
                if (seen.emplace(succ.next, true).second) {
                    if (seen.size() > kStateCap) throw Error(Err::TooLarge, "state space beyond the oracle bound");
                    frontier.push_back(succ.next);
                }
            }
        }
    }

    const std::size_t m = x.length();
    const bool goalBearing = env.is_goal(start).has_value();
    Complete best;
    std::size_t visited = 0;

    Path prefix;
    std::vector<std::string> key;
    // cur is taken by value: growing `prefix` reallocates the step vector the
    // caller's postState lives in
    auto rec = [&](auto&& self, StateId cur) -> void {
        if (prefix.length() == static_cast<std::size_t>(planCfg.maxLength)) return;
        for (const Successor& succ : env.successors(cur)) {
            if (++visited > kPrefixCap) throw Error(Err::TooLarge, "prefix count beyond the oracle bound");
            ActionStep step;
            step.preState = cur;
            step.action = succ.action;
            step.postState = succ.next;
            step.graph = env.grounding_graph(step.preState, step.action, step.postState);
            prefix.steps.push_back(std::move(step));
            key.push_back(succ.action.canonical());

            const std::size_t n = prefix.length();
            bool complete = planCfg.lengthMode == LengthMode::Fixed
                                ? n == static_cast<std::size_t>(planCfg.maxLength)
                                : true;
            if (goalBearing && !*env.is_goal(succ.next)) complete = false;
            if (complete) {
                PlanResult r;
                r.path = prefix;
                double total = sparse_dot(length_features(n, cfg, idx, IndexMode::Frozen), theta);
                for (const auto& st : prefix.steps)
                    total += sparse_dot(path_features(st.graph, cfg, idx, IndexMode::Frozen), theta);
                if (m > 0) {
                    PairScoreMatrix P = build_pair_matrix(x, prefix, theta, cfg, idx, IndexMode::Frozen);
                    auto [a, s] = brute_force_alignment(P);
                    r.alignment = std::move(a);
                    total += s;
                }
                r.score = total;
                best.offer(std::move(r), key);
            }

            self(self, prefix.steps.back().postState);
            prefix.steps.pop_back();
            key.pop_back();
        }
    };
    rec(rec, start);

    if (!best.found) throw Error(Err::NoPathFound, "no complete path within the length cap");
    return best.result;
}

}  // namespace ifalign
