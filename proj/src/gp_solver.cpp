#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wipt/gpsolve.hpp"

namespace wipt::gp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Every constraint of the problem in the form F(u) <= 0, u = log x.
std::vector<LogSumExp> log_constraints(const GpProblem& problem) {
    const std::size_t n = problem.num_vars;
    std::vector<LogSumExp> out;
    for (const auto& m : problem.monomial_constraints)
        out.emplace_back(Posynomial(m), n);
    for (const auto& p : problem.posynomial_constraints)
        out.emplace_back(p, n);
    if (!problem.floors.empty()) {
        if (problem.floors.size() != n)
            throw std::invalid_argument("floor vector length differs from variable count");
        for (std::size_t v = 0; v < n; ++v)
            if (problem.floors[v] > 0.0)
                out.emplace_back(Posynomial(Monomial(problem.floors[v], {{v, -1.0}})), n);
    }
    return out;
}

double max_value(const std::vector<LogSumExp>& cons, const VectorXd& u) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& c : cons)
        worst = std::max(worst, c.value(u));
    return worst;
}

struct Barrier {
    const std::vector<LogSumExp>& cons;
    VectorXd cost;

    // t c.u - sum log(-F_i); +inf outside the strict interior.
    double value(const VectorXd& u, double t) const {
        double phi = t * cost.dot(u);
        for (const auto& c : cons) {
            const double f = c.value(u);
            if (!(f < 0.0))
                return std::numeric_limits<double>::infinity();
            phi -= std::log(-f);
        }
        return phi;
    }

    void derivatives(const VectorXd& u, double t, VectorXd& g, MatrixXd& h) const {
        const auto n = u.size();
        g = t * cost;
        h = MatrixXd::Zero(n, n);
        VectorXd gi;
        MatrixXd hi;
        for (const auto& c : cons) {
            const double f = c.evaluate(u, gi, &hi);
            const double w = -1.0 / f;
            g += w * gi;
            h += w * hi;
            h.noalias() += (w * w) * gi * gi.transpose();
        }
    }
};

VectorXd newton_direction(const MatrixXd& h, const VectorXd& g) {
    const double scale = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    double shift = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
        MatrixXd hs = h;
        if (shift > 0.0)
            hs.diagonal().array() += shift;
        Eigen::LDLT<MatrixXd> ldlt(hs);
        if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
            VectorXd d = -ldlt.solve(g);
            if (d.allFinite() && g.dot(d) < 0.0)
                return d;
            if (d.allFinite() && g.dot(d) >= 0.0 && g.norm() == 0.0)
                return VectorXd::Zero(g.size());
        }
        shift = shift == 0.0 ? 1e-12 * scale : shift * 100.0;
    }
    throw GpNumericalFailure("Newton system is singular");
}

struct BarrierOutcome {
    VectorXd u;
    double gap = 0.0;
    int steps = 0;
    bool stopped_early = false;
};

// Barrier path following. `stop` is checked after each accepted step.
template <typename Stop>
BarrierOutcome follow_path(const Barrier& barrier, VectorXd u, const GpSolverOptions& opt, Stop&& stop) {
    const double m = static_cast<double>(barrier.cons.size());
    BarrierOutcome out;
    double t = opt.t_initial;
    VectorXd g;
    MatrixXd h;
    while (true) {
        for (int it = 0; it < opt.max_newton_per_center; ++it) {
            barrier.derivatives(u, t, g, h);
            if (!g.allFinite() || !h.allFinite())
                throw GpNumericalFailure("non-finite barrier derivatives");
            const VectorXd d = newton_direction(h, g);
            const double decrement = -g.dot(d);
            if (decrement / 2.0 <= opt.newton_tolerance)
                break;
            const double phi0 = barrier.value(u, t);
            double step = 1.0;
            VectorXd trial = u + d;
            double phi = barrier.value(trial, t);
            while (!(phi <= phi0 - opt.armijo_alpha * step * decrement)) {
                step *= opt.armijo_beta;
                if (step < 1e-14)
                    break;
                trial = u + step * d;
                phi = barrier.value(trial, t);
            }
            if (step < 1e-14) {
                // No further progress is representable at this t.
                break;
            }
            u = trial;
            if (++out.steps > opt.max_newton_total)
                throw GpNumericalFailure("Newton step budget exhausted");
            if (stop(u)) {
                out.u = u;
                out.gap = m / t;
                out.stopped_early = true;
                return out;
            }
        }
        if (m / t < opt.gap_tolerance)
            break;
        t *= opt.mu;
    }
    out.u = u;
    out.gap = m / t;
    return out;
}

// Finds a strictly feasible u by minimizing s subject to F_i(u) <= s, s >= -1.
VectorXd phase_one(const std::vector<LogSumExp>& cons, const VectorXd& u0, const GpSolverOptions& opt) {
    const auto n = u0.size();
    std::vector<LogSumExp> aug;
    aug.reserve(cons.size() + 1);
    for (const auto& c : cons) {
        MatrixXd a(c.exponents().rows(), n + 1);
        a.leftCols(n) = c.exponents();
        a.col(n).setConstant(-1.0);
        aug.emplace_back(std::move(a), c.offsets());
    }
    MatrixXd lower = MatrixXd::Zero(1, n + 1);
    lower(0, n) = -1.0;
    aug.emplace_back(std::move(lower), VectorXd::Constant(1, -1.0));
    // Box |u - u0| <= radius keeps the phase-I barrier bounded below.
    for (Eigen::Index i = 0; i < n; ++i) {
        MatrixXd a = MatrixXd::Zero(2, n + 1);
        a(0, i) = 1.0;
        a(1, i) = -1.0;
        VectorXd b(2);
        b << -u0(i) - opt.phase_one_radius, u0(i) - opt.phase_one_radius;
        aug.emplace_back(a.row(0), b.head(1));
        aug.emplace_back(a.row(1), b.tail(1));
    }

    VectorXd cost = VectorXd::Zero(n + 1);
    cost(n) = 1.0;
    const Barrier barrier{aug, cost};

    VectorXd start(n + 1);
    start.head(n) = u0;
    start(n) = std::max(max_value(cons, u0), -1.0) + 1.0;

    const auto outcome = follow_path(barrier, start, opt, [&](const VectorXd& w) {
        return w(n) < 0.0 && max_value(cons, w.head(n)) < 0.0;
    });
    const VectorXd u = outcome.u.head(n);
    const double worst = max_value(cons, u);
    if (!(worst < 0.0))
        throw GpInfeasible("geometric program is infeasible (phase-I optimum " + std::to_string(worst) + ")");
    return u;
}

}  // namespace

double max_constraint_violation(const GpProblem& problem, std::span<const double> x) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& m : problem.monomial_constraints)
        worst = std::max(worst, m.evaluate(x) - 1.0);
    for (const auto& p : problem.posynomial_constraints)
        worst = std::max(worst, p.evaluate(x) - 1.0);
    for (std::size_t v = 0; v < problem.floors.size(); ++v)
        if (problem.floors[v] > 0.0)
            worst = std::max(worst, problem.floors[v] / x[v] - 1.0);
    return worst;
}

GpResult solve_standard_gp(const GpProblem& problem, std::span<const double> x0, const GpSolverOptions& options) {
    const std::size_t n = problem.num_vars;
    if (n == 0)
        throw std::invalid_argument("GP has no variables");
    if (x0.size() != n)
        throw std::invalid_argument("start point length differs from variable count");
    for (const auto& [v, a] : problem.objective.exponents())
        if (v >= n)
            throw std::out_of_range("objective references a variable outside the problem");

    VectorXd u(static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v) {
        if (!(x0[v] > 0.0) || !std::isfinite(x0[v]))
            throw std::domain_error("GP start point must be positive and finite");
        u(static_cast<Eigen::Index>(v)) = std::log(x0[v]);
    }

    const std::vector<LogSumExp> cons = log_constraints(problem);
    if (!cons.empty() && !(max_value(cons, u) < 0.0))
        u = phase_one(cons, u, options);

    VectorXd cost = VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (const auto& [v, a] : problem.objective.exponents())
        cost(static_cast<Eigen::Index>(v)) = a;

    GpResult result;
    if (cons.empty()) {
        if (cost.norm() > 0.0)
            throw GpNumericalFailure("unconstrained GP is unbounded");
    } else {
        const Barrier barrier{cons, cost};
        const auto outcome = follow_path(barrier, u, options, [](const VectorXd&) { return false; });
        u = outcome.u;
        result.newton_steps = outcome.steps;
        result.gap = outcome.gap;
    }

    result.point.resize(n);
    for (std::size_t v = 0; v < n; ++v)
        result.point[v] = std::exp(u(static_cast<Eigen::Index>(v)));
    result.objective = problem.objective.evaluate(result.point);
    if (!std::isfinite(result.objective))
        throw GpNumericalFailure("GP objective is not finite at the solution");
    return result;
}

}  // namespace wipt::gp
