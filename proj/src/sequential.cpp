#include <cmath>
#include <string>
#include <vector>

#include "wipt/gpsolve.hpp"

namespace wipt::gp {

const char* to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::failed: return "failed";
    }
    return "failed";
}

bool SolveTrace::non_decreasing(double rel_slack) const {
    for (std::size_t i = 1; i < iterates.size(); ++i) {
        const double prev = iterates[i - 1].objective;
        if (iterates[i].objective < prev - rel_slack * std::abs(prev))
            return false;
    }
    return true;
}

namespace {

double log_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::log(a[i]) - std::log(b[i]);
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

SolveTrace sequential_condensation(const SequentialProblem& problem, std::span<const double> x0,
                                   double tolerance, int max_iterations, const GpSolverOptions& options) {
    if (!problem.condense_at || !problem.objective)
        throw std::invalid_argument("sequential problem is incomplete");
    if (!(tolerance > 0.0) || max_iterations < 1)
        throw std::invalid_argument("sequential tolerance and iteration cap must be positive");

    SolveTrace trace;
    std::vector<double> x(x0.begin(), x0.end());

    CondensedStep step = problem.condense_at(x);
    const double start_violation = max_constraint_violation(step.problem, step.start);
    trace.iterates.push_back({x, problem.objective(x), 0.0, start_violation, 1.0});
    if (start_violation > 1e-6) {
        trace.status = SolveStatus::infeasible;
        trace.message = "starting point violates the constraints by " + std::to_string(start_violation);
        return trace;
    }

    for (int i = 1; i <= max_iterations; ++i) {
        if (i > 1)
            step = problem.condense_at(x);
        GpResult solved;
        try {
            solved = solve_standard_gp(step.problem, step.start, options);
        } catch (const GpInfeasible& e) {
            trace.status = SolveStatus::infeasible;
            trace.message = e.what();
            return trace;
        } catch (const std::exception& e) {
            trace.status = SolveStatus::failed;
            trace.message = e.what();
            return trace;
        }
        const double prev = trace.iterates.back().objective;
        const double residual = max_constraint_violation(step.problem, solved.point);
        std::vector<double> next = solved.point;
        double value = problem.objective(next);
        double multiple = 1.0;
        if (problem.project) {
            for (double alpha = 1.0; alpha <= 1024.0; alpha *= 2.0) {
                std::vector<double> trial(x.size());
                for (std::size_t k = 0; k < x.size(); ++k)
                    trial[k] = x[k] * std::pow(solved.point[k] / x[k], alpha);
                if (!problem.project(trial))
                    break;
                const double trial_value = problem.objective(trial);
                if (!(trial_value > value)) {
                    if (alpha == 1.0)
                        continue;
                    break;
                }
                next = std::move(trial);
                value = trial_value;
                multiple = alpha;
            }
        }
        trace.iterates.push_back({next, value, log_distance(next, x), residual, multiple});
        x = std::move(next);
        if (std::abs(value - prev) < tolerance * std::abs(prev) || (prev == 0.0 && value == 0.0)) {
            trace.status = SolveStatus::converged;
            return trace;
        }
    }
    trace.status = SolveStatus::max_iterations;
    trace.message = "iteration cap reached";
    return trace;
}

}  // namespace wipt::gp
