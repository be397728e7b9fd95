#include "ifalign/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ifalign/errors.hpp"

namespace ifalign {

namespace {

using Transition = std::pair<StateId, StateId>;

std::set<Transition> transitions_of(const std::vector<StateId>& states) {
    std::set<Transition> out;
    for (std::size_t i = 0; i + 1 < states.size(); ++i) out.insert({states[i], states[i + 1]});
    return out;
}

std::vector<StateId> gold_states(const Demonstration& d) {
    std::vector<StateId> s{d.startState};
    for (const ActionStep& step : d.path.steps) s.push_back(step.postState);
    return s;
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

MetricsReport evaluate_predictions(const std::vector<Prediction>& predictions,
                                   const std::vector<Demonstration>& gold) {
    std::map<std::string, const Demonstration*> byId;
    for (const Demonstration& d : gold)
        if (!byId.emplace(d.id, &d).second) throw Error(Err::IdMismatch, "duplicate gold id '" + d.id + "'");

    MetricsReport rep;
    std::size_t hit = 0, predTotal = 0, goldTotal = 0;
    std::size_t nExact = 0, nSuccess = 0;
    std::set<std::string> seen;
    for (const Prediction& p : predictions) {
        auto it = byId.find(p.id);
        if (it == byId.end()) throw Error(Err::IdMismatch, "prediction id '" + p.id + "' has no gold");
        if (!seen.insert(p.id).second) throw Error(Err::IdMismatch, "duplicate prediction id '" + p.id + "'");
        const Demonstration& g = *it->second;

        ExampleMetrics em;
        em.id = p.id;
        std::vector<LabelSet> goldActions;
        for (const ActionStep& s : g.path.steps) goldActions.push_back(s.action);
        std::vector<StateId> gs = gold_states(g);

        std::set<Transition> pt = p.failed ? std::set<Transition>{} : transitions_of(p.states);
        std::set<Transition> gt = transitions_of(gs);
        std::size_t common = 0;
        for (const Transition& t : pt) common += gt.count(t);

        em.exactMatch = !p.failed && p.actions == goldActions;
        em.success = !p.failed && !p.states.empty() && p.states.back() == gs.back();
        em.precision = ratio(common, pt.size());
        em.recall = ratio(common, gt.size());
        em.f1 = harmonic(em.precision, em.recall);

        hit += common;
        predTotal += pt.size();
        goldTotal += gt.size();
        nExact += em.exactMatch ? 1 : 0;
        nSuccess += em.success ? 1 : 0;
        rep.perExample.push_back(std::move(em));
    }
    if (seen.size() != byId.size())
        throw Error(Err::IdMismatch, "gold has ids with no prediction");

    rep.exactMatch = ratio(nExact, rep.perExample.size());
    rep.success = ratio(nSuccess, rep.perExample.size());
    rep.precision = ratio(hit, predTotal);
    rep.recall = ratio(hit, goldTotal);
    rep.f1 = harmonic(rep.precision, rep.recall);
    return rep;
}

}  // namespace ifalign
