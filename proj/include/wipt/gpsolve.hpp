#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wipt::gp {

using VarId = std::size_t;

/// Names the positive variables of a geometric program. Points are dense
/// vectors indexed by VarId.
class VariableSet {
public:
    VarId add(std::string name);
    VarId id(std::string_view name) const;
    const std::string& name(VarId v) const { return names_.at(v); }
    std::size_t size() const { return names_.size(); }

private:
    std::vector<std::string> names_;
    std::map<std::string, VarId, std::less<>> index_;
};

/// c * prod_v x_v^{a_v} with c > 0. Exponents are kept sorted by variable,
/// with zero exponents dropped.
class Monomial {
public:
    using Exponents = std::vector<std::pair<VarId, double>>;

    Monomial() = default;
    explicit Monomial(double coeff);
    Monomial(double coeff, Exponents exponents);

    static Monomial variable(VarId v, double exponent = 1.0) { return Monomial(1.0, {{v, exponent}}); }

    double coeff() const { return coeff_; }
    const Exponents& exponents() const { return exps_; }
    double exponent(VarId v) const;

    /// Throws std::domain_error if a referenced coordinate is not positive.
    double evaluate(std::span<const double> x) const;
    /// log c + a . log(x), taking log(x) directly.
    double log_value(std::span<const double> log_x) const;

    Monomial pow(double p) const;
    Monomial inverse() const { return pow(-1.0); }

    Monomial& operator*=(const Monomial& other);
    Monomial& operator*=(double scale);
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
    friend Monomial operator*(Monomial a, double s) { return a *= s; }
    friend Monomial operator*(double s, Monomial a) { return a *= s; }
    friend Monomial operator/(Monomial a, const Monomial& b) { return a *= b.inverse(); }

private:
    double coeff_ = 1.0;
    Exponents exps_;
};

/// Sum of monomials; like terms are merged on insertion.
class Posynomial {
public:
    Posynomial() = default;
    Posynomial(const Monomial& m) { add(m); }  // NOLINT(google-explicit-constructor)

    void add(const Monomial& m);
    const std::vector<Monomial>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double evaluate(std::span<const double> x) const;

    Posynomial& operator+=(const Posynomial& other);
    Posynomial& operator*=(const Monomial& m);
    friend Posynomial operator+(Posynomial a, const Posynomial& b) { return a += b; }
    friend Posynomial operator*(Posynomial a, const Monomial& m) { return a *= m; }
    friend Posynomial operator*(const Monomial& m, Posynomial a) { return a *= m; }
    friend Posynomial operator*(const Posynomial& a, const Posynomial& b);

private:
    std::vector<Monomial> terms_;
    std::map<Monomial::Exponents, std::size_t> index_;
};

inline Posynomial operator+(const Monomial& a, const Monomial& b) { return Posynomial(a) + b; }

/// AM-GM single condensation of p at x0: prod_k (g_k / gamma_k)^gamma_k with
/// gamma_k = g_k(x0) / p(x0). Weights below `weight_floor` are raised to it
/// and the set renormalized. The result lower-bounds p on the positive orthant.
Monomial condense(const Posynomial& p, std::span<const double> x0, double weight_floor = 1e-12);

/// log sum_k exp(a_k . u + b_k): a posynomial in log-transformed variables.
class LogSumExp {
public:
    LogSumExp(const Posynomial& p, std::size_t num_vars);
    LogSumExp(Eigen::MatrixXd a, Eigen::VectorXd b);

    double value(const Eigen::VectorXd& u) const;
    /// Fills value and gradient; the Hessian too when `hess` is non-null.
    double evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& grad, Eigen::MatrixXd* hess) const;

    const Eigen::MatrixXd& exponents() const { return a_; }
    const Eigen::VectorXd& offsets() const { return b_; }

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd b_;
};

/// minimize objective(x) s.t. monomial_constraints <= 1, posynomial_constraints <= 1,
/// and x_v >= floors[v] where floors[v] > 0.
struct GpProblem {
    std::size_t num_vars = 0;
    Monomial objective;
    std::vector<Monomial> monomial_constraints;
    std::vector<Posynomial> posynomial_constraints;
    std::vector<double> floors;
};

/// Largest constraint value minus one at x; <= 0 means feasible.
double max_constraint_violation(const GpProblem& problem, std::span<const double> x);

struct GpSolverOptions {
    double mu = 10.0;
    double t_initial = 1.0;
    double armijo_alpha = 0.3;
    double armijo_beta = 0.8;
    double gap_tolerance = 1e-9;      // duality-gap bound on the log objective
    double newton_tolerance = 1e-10;  // lambda^2 / 2
    int max_newton_per_center = 200;
    int max_newton_total = 5000;
    double phase_one_radius = 40.0;   // phase-I search box in log coordinates
};

struct GpResult {
    std::vector<double> point;
    double objective = 0.0;
    int newton_steps = 0;
    double gap = 0.0;
};

class GpInfeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GpNumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Solves a standard GP in log variables with a log-barrier Newton method.
/// A phase-I problem is solved first when x0 is not strictly feasible.
GpResult solve_standard_gp(const GpProblem& problem, std::span<const double> x0,
                           const GpSolverOptions& options = {});

// ---------------------------------------------------------------------------
// Sequential condensation

enum class SolveStatus { converged, max_iterations, infeasible, failed };

const char* to_string(SolveStatus status);

struct TraceEntry {
    std::vector<double> point;
    double objective = 0.0;
    double step_norm = 0.0;             // ||log x_i - log x_{i-1}||
    double feasibility_residual = 0.0;  // max constraint violation of the inner GP solution
    double extrapolation = 1.0;         // accepted step multiple in log space
};

/// Iterate 0 is the starting point; each later entry is one condensed GP solve.
struct SolveTrace {
    std::vector<TraceEntry> iterates;
    SolveStatus status = SolveStatus::failed;
    std::string message;

    int iterations() const { return iterates.empty() ? 0 : static_cast<int>(iterates.size()) - 1; }
    /// True if no step lowers the objective by more than rel_slack * |previous|.
    bool non_decreasing(double rel_slack = 1e-8) const;
};

/// The condensed standard GP built around the previous iterate, together
/// with a starting point for the inner solver.
struct CondensedStep {
    GpProblem problem;
    std::vector<double> start;
};

struct SequentialProblem {
    std::function<CondensedStep(std::span<const double> previous)> condense_at;
    /// Objective of the original (reversed) problem, maximized.
    std::function<double(std::span<const double> x)> objective;
    /// Maps a trial point into the strict interior of the original problem,
    /// returning false when it cannot. When set, each GP step is extended
    /// along its log-space direction while the mapped point keeps improving
    /// the objective.
    std::function<bool(std::vector<double>& x)> project;
};

/// Repeats condense-and-solve until |f_i - f_{i-1}| < tolerance * |f_{i-1}| or
/// max_iterations solves have run.
SolveTrace sequential_condensation(const SequentialProblem& problem, std::span<const double> x0,
                                   double tolerance = 1e-5, int max_iterations = 50,
                                   const GpSolverOptions& options = {});

}  // namespace wipt::gp
