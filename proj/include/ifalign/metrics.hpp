#ifndef IFALIGN_METRICS_HPP
#define IFALIGN_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "ifalign/pathseq.hpp"

namespace ifalign {

/// One prediction to score against its gold demonstration.
struct Prediction {
    std::string id;
    bool failed = false;               // planner reported NoPathFound
    std::vector<LabelSet> actions;
    std::vector<StateId> states;       // start followed by post-states
};

struct ExampleMetrics {
    std::string id;
    bool exactMatch = false;
    bool success = false;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    std::vector<ExampleMetrics> perExample;
    double exactMatch = 0.0;    // fraction over examples
    double success = 0.0;
    double precision = 0.0;     // micro-averaged over transition sets
    double recall = 0.0;
    double f1 = 0.0;            // harmonic mean of micro P and R, 0 when both 0
};

/// exactMatch: predicted action sequence identical to gold.
/// success: env-specific goal test (maze: final pose equality; crossblock:
/// empty board; map: final landmark equality).
/// transitions: P/R/F1 over the sets of state->state transitions.
/// Predictions and gold pair by id; throws IdMismatch.
MetricsReport evaluate_predictions(const std::vector<Prediction>& predictions,
                                   const std::vector<Demonstration>& gold);

}  // namespace ifalign

#endif
