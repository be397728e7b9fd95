#include "ifalign/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace ifalign {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

OptimizeResult optimize_theta(const ObjectiveFn& f, std::vector<double> theta0,
                              const OptimizerSettings& settings) {
    OptimizeResult res;
    const std::size_t n = theta0.size();
    res.theta = std::move(theta0);
    if (n == 0) {
        res.converged = true;
        return res;
    }

    // textbook minimization of F = -f; signs flip only at the boundary
    auto F = [&](const std::vector<double>& x, std::vector<double>& g) {
        double v = f(x, g);
        for (double& gi : g) gi = -gi;
        return -v;
    };

    std::vector<double> grad(n, 0.0);
    double fx = F(res.theta, grad);
    res.objective = -fx;
    if (inf_norm(grad) <= settings.gradTol) {
        res.converged = true;
        return res;
    }

    std::deque<std::pair<std::vector<double>, std::vector<double>>> pairs;  // (s, y)
    std::vector<double> dir(n), xNew(n), gradNew(n);

    while (res.iterations < settings.maxIters) {
        // two-loop recursion: dir = -H grad
        dir = grad;
        std::vector<double> alpha(pairs.size());
        for (std::size_t p = pairs.size(); p-- > 0;) {
            const auto& [s, y] = pairs[p];
            double rho = 1.0 / dot(y, s);
            alpha[p] = rho * dot(s, dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] -= alpha[p] * y[i];
        }
        if (!pairs.empty()) {
            const auto& [s, y] = pairs.back();
            double gamma = dot(s, y) / dot(y, y);
            for (double& d : dir) d *= gamma;
        }
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const auto& [s, y] = pairs[p];
            double rho = 1.0 / dot(y, s);
            double beta = rho * dot(y, dir);
            for (std::size_t i = 0; i < n; ++i) dir[i] += (alpha[p] - beta) * s[i];
        }
        for (double& d : dir) d = -d;

        double slope = dot(grad, dir);
        if (slope >= 0.0) {
            // curvature information went stale; fall back to steepest descent
            for (std::size_t i = 0; i < n; ++i) dir[i] = -grad[i];
            slope = -dot(grad, grad);
            pairs.clear();
        }

        // weak Wolfe line search by bracketing: shrink on an Armijo failure,
        // expand while the directional derivative stays too negative. An
        // Armijo-only search accepts steps whose curvature pair s.y <= 0,
        // which starves the memory and degrades the method to plain descent.
        double lo = 0.0, hi = std::numeric_limits<double>::infinity();
        double step = 1.0, fNew = 0.0;
        bool accepted = false;
        double bestLo = 0.0, bestF = 0.0;
        std::vector<double> bestG;
        for (int ls = 0; ls <= settings.maxBacktracks; ++ls) {
            for (std::size_t i = 0; i < n; ++i) xNew[i] = res.theta[i] + step * dir[i];
            fNew = F(xNew, gradNew);
            if (!std::isfinite(fNew) || fNew > fx + settings.armijoC1 * step * slope) {
                hi = step;
            } else if (dot(gradNew, dir) < settings.wolfeC2 * slope) {
                lo = step;
                bestLo = step;
                bestF = fNew;
                bestG = gradNew;
            } else {
                accepted = true;
                break;
            }
            step = std::isfinite(hi) ? lo + (hi - lo) * settings.backtrackFactor
                                     : lo / settings.backtrackFactor;
        }
        if (!accepted && bestLo > 0.0) {
            // bracket exhausted: settle for the best sufficient-decrease point
            step = bestLo;
            for (std::size_t i = 0; i < n; ++i) xNew[i] = res.theta[i] + step * dir[i];
            fNew = bestF;
            gradNew = bestG;
            accepted = true;
        }
        if (!accepted) {
            res.lineSearchFailed = true;
            return res;
        }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xNew[i] - res.theta[i];
            y[i] = gradNew[i] - grad[i];
        }
        if (dot(s, y) > 1e-10 * std::sqrt(dot(s, s) * dot(y, y))) {
            pairs.emplace_back(std::move(s), std::move(y));
            if (static_cast<int>(pairs.size()) > settings.memory) pairs.pop_front();
        }

        res.theta = xNew;
        fx = fNew;
        res.objective = -fx;
        grad = gradNew;
        ++res.iterations;
        if (inf_norm(grad) <= settings.gradTol) {
            res.converged = true;
            return res;
        }
    }
    return res;
}

}  // namespace ifalign
