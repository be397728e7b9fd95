#ifndef IFALIGN_LBFGS_HPP
#define IFALIGN_LBFGS_HPP

#include <functional>
#include <vector>

namespace ifalign {

struct OptimizerSettings {
    int memory = 10;
    int maxIters = 100;
    double gradTol = 1e-5;      // convergence on grad infinity-norm
    double armijoC1 = 1e-4;     // sufficient decrease
    double wolfeC2 = 0.9;       // curvature condition
    double backtrackFactor = 0.5;  // bracket interpolation ratio
    int maxBacktracks = 50;        // line search evaluation cap
};

struct OptimizeResult {
    std::vector<double> theta;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    bool lineSearchFailed = false;  // best iterate returned with this warning
};

/// Objective and gradient at theta; the function is MAXIMIZED.
using ObjectiveFn = std::function<double(const std::vector<double>&, std::vector<double>& grad)>;

/// Quasi-Newton ascent: L-BFGS two-loop recursion with a weak Wolfe
/// line search. The objective is non-decreasing across accepted steps. Stops
/// when the gradient infinity-norm falls to gradTol or maxIters is reached;
/// a failed line search returns the best iterate with a warning flag.
OptimizeResult optimize_theta(const ObjectiveFn& f, std::vector<double> theta0,
                              const OptimizerSettings& settings = {});

}  // namespace ifalign

#endif
