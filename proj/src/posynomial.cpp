#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wipt/gpsolve.hpp"

namespace wipt::gp {

VarId VariableSet::add(std::string name) {
    if (index_.count(name) != 0)
        throw std::invalid_argument("duplicate GP variable '" + name + "'");
    const VarId v = names_.size();
    index_.emplace(name, v);
    names_.push_back(std::move(name));
    return v;
}

VarId VariableSet::id(std::string_view name) const {
    const auto it = index_.find(name);
    if (it == index_.end())
        throw std::out_of_range("unknown GP variable '" + std::string(name) + "'");
    return it->second;
}

namespace {

void check_coeff(double c) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument("monomial coefficient must be positive and finite");
}

double coordinate(std::span<const double> x, VarId v) {
    if (v >= x.size())
        throw std::out_of_range("point has too few coordinates");
    const double value = x[v];
    if (!(value > 0.0))
        throw std::domain_error("GP variables must be positive (coordinate " + std::to_string(v) + ")");
    return value;
}

}  // namespace

Monomial::Monomial(double coeff) : coeff_(coeff) { check_coeff(coeff); }

Monomial::Monomial(double coeff, Exponents exponents) : coeff_(coeff), exps_(std::move(exponents)) {
    check_coeff(coeff);
    std::sort(exps_.begin(), exps_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Exponents merged;
    for (const auto& [v, a] : exps_) {
        if (!std::isfinite(a))
            throw std::invalid_argument("monomial exponent must be finite");
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += a;
        else
            merged.emplace_back(v, a);
    }
    std::erase_if(merged, [](const auto& e) { return e.second == 0.0; });
    exps_ = std::move(merged);
}

double Monomial::exponent(VarId v) const {
    const auto it = std::lower_bound(exps_.begin(), exps_.end(), v,
                                     [](const auto& e, VarId id) { return e.first < id; });
    return it != exps_.end() && it->first == v ? it->second : 0.0;
}

double Monomial::evaluate(std::span<const double> x) const {
    double log_v = std::log(coeff_);
    for (const auto& [v, a] : exps_)
        log_v += a * std::log(coordinate(x, v));
    return std::exp(log_v);
}

double Monomial::log_value(std::span<const double> log_x) const {
    double acc = std::log(coeff_);
    for (const auto& [v, a] : exps_) {
        if (v >= log_x.size())
            throw std::out_of_range("point has too few coordinates");
        acc += a * log_x[v];
    }
    return acc;
}

Monomial Monomial::pow(double p) const {
    if (!std::isfinite(p))
        throw std::invalid_argument("monomial power must be finite");
    Exponents e = exps_;
    for (auto& entry : e)
        entry.second *= p;
    const double c = std::exp(p * std::log(coeff_));
    return Monomial(c, std::move(e));
}

Monomial& Monomial::operator*=(const Monomial& other) {
    Exponents e = exps_;
    e.insert(e.end(), other.exps_.begin(), other.exps_.end());
    *this = Monomial(coeff_ * other.coeff_, std::move(e));
    return *this;
}

Monomial& Monomial::operator*=(double scale) {
    check_coeff(scale);
    coeff_ *= scale;
    check_coeff(coeff_);
    return *this;
}

void Posynomial::add(const Monomial& m) {
    const auto it = index_.find(m.exponents());
    if (it == index_.end()) {
        index_.emplace(m.exponents(), terms_.size());
        terms_.push_back(m);
    } else {
        Monomial& t = terms_[it->second];
        t = Monomial(t.coeff() + m.coeff(), t.exponents());
    }
}

double Posynomial::evaluate(std::span<const double> x) const {
    double acc = 0.0;
    for (const auto& t : terms_)
        acc += t.evaluate(x);
    return acc;
}

Posynomial& Posynomial::operator+=(const Posynomial& other) {
    for (const auto& t : other.terms_)
        add(t);
    return *this;
}

Posynomial& Posynomial::operator*=(const Monomial& m) {
    Posynomial out;
    for (const auto& t : terms_)
        out.add(t * m);
    *this = std::move(out);
    return *this;
}

Posynomial operator*(const Posynomial& a, const Posynomial& b) {
    Posynomial out;
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.add(ta * tb);
    return out;
}

Monomial condense(const Posynomial& p, std::span<const double> x0, double weight_floor) {
    if (p.empty())
        throw std::invalid_argument("cannot condense an empty posynomial");
    std::vector<double> values;
    values.reserve(p.size());
    double total = 0.0;
    for (const auto& t : p.terms()) {
        values.push_back(t.evaluate(x0));
        total += values.back();
    }
    std::vector<double> gamma(values.size());
    double gamma_sum = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        gamma[k] = std::max(values[k] / total, weight_floor);
        gamma_sum += gamma[k];
    }
    Monomial::Exponents exps;
    double log_coeff = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double g = gamma[k] / gamma_sum;
        const Monomial& t = p.terms()[k];
        log_coeff += g * (std::log(t.coeff()) - std::log(g));
        for (const auto& [v, a] : t.exponents())
            exps.emplace_back(v, g * a);
    }
    return Monomial(std::exp(log_coeff), std::move(exps));
}

LogSumExp::LogSumExp(const Posynomial& p, std::size_t num_vars) {
    if (p.empty())
        throw std::invalid_argument("empty posynomial constraint");
    const auto k = static_cast<Eigen::Index>(p.size());
    a_ = Eigen::MatrixXd::Zero(k, static_cast<Eigen::Index>(num_vars));
    b_.resize(k);
    for (Eigen::Index r = 0; r < k; ++r) {
        const Monomial& t = p.terms()[static_cast<std::size_t>(r)];
        b_(r) = std::log(t.coeff());
        for (const auto& [v, a] : t.exponents()) {
            if (v >= num_vars)
                throw std::out_of_range("posynomial references a variable outside the problem");
            a_(r, static_cast<Eigen::Index>(v)) = a;
        }
    }
}

LogSumExp::LogSumExp(Eigen::MatrixXd a, Eigen::VectorXd b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != b_.size() || a_.rows() == 0)
        throw std::invalid_argument("log-sum-exp shape mismatch");
}

double LogSumExp::value(const Eigen::VectorXd& u) const {
    const Eigen::VectorXd y = a_ * u + b_;
    const double top = y.maxCoeff();
    return top + std::log((y.array() - top).exp().sum());
}

double LogSumExp::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd& grad, Eigen::MatrixXd* hess) const {
    const Eigen::VectorXd y = a_ * u + b_;
    const double top = y.maxCoeff();
    Eigen::VectorXd p = (y.array() - top).exp();
    const double sum = p.sum();
    p /= sum;
    grad = a_.transpose() * p;
    if (hess != nullptr)
        *hess = a_.transpose() * p.asDiagonal() * a_ - grad * grad.transpose();
    return top + std::log(sum);
}

}  // namespace wipt::gp
