#include "nsbox/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nsbox {

Tensor3 velocity_magnitude(const VelocityField& v, std::array<int, 3> shape) {
    Tensor3 g0 = values_on_shape(v[0], shape);
    Tensor3 g1 = values_on_shape(v[1], shape);
    Tensor3 g2 = values_on_shape(v[2], shape);
    Tensor3 out(shape);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.raw()[i] = std::sqrt(g0.raw()[i] * g0.raw()[i] + g1.raw()[i] * g1.raw()[i] +
                                 g2.raw()[i] * g2.raw()[i]);
    return out;
}

double lp_norm_values(const BoxDomain& d, const Tensor3& values, double p) {
    if (p < 1.0)
        throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : values.raw())
            m = std::max(m, std::abs(x));
        return m;
    }
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        terms[i] = std::pow(std::abs(values.raw()[i]), p);
    const double measure = d.volume() / static_cast<double>(values.size());
    return std::pow(pairwise_sum(terms) * measure, 1.0 / p);
}

double lp_norm(const ScalarField& f, double p) {
    return lp_norm_values(f.domain(), inverse(f.data), p);
}

double lp_norm(const VelocityField& v, double p) {
    return lp_norm_values(v.domain(), velocity_magnitude(v, v.domain().resolution()), p);
}

double lp_norm_refined(const ScalarField& f, double p) {
    return lp_norm_values(f.domain(), values_on_shape(f.data, f.domain().refined_shape()), p);
}

double lp_norm_refined(const VelocityField& v, double p) {
    return lp_norm_values(v.domain(), velocity_magnitude(v, v.domain().refined_shape()), p);
}

double mixed_norm_accumulate(const std::vector<NormSample>& series, double q) {
    if (series.empty())
        throw std::invalid_argument("mixed_norm_accumulate: empty series");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].t < series[i - 1].t)
            throw std::invalid_argument("mixed_norm_accumulate: unordered series");
    if (std::isinf(q)) {
        double m = 0.0;
        for (const auto& s : series)
            m = std::max(m, s.value);
        return m;
    }
    if (q < 1.0)
        throw std::invalid_argument("mixed_norm_accumulate: q must be >= 1");
    if (series.size() == 1)
        return 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].t - series[i - 1].t;
        acc += 0.5 * dt *
               (std::pow(series[i - 1].value, q) + std::pow(series[i].value, q));
    }
    return std::pow(acc, 1.0 / q);
}

double v02_norm(const std::vector<V02Sample>& series) {
    if (series.empty())
        throw std::invalid_argument("v02_norm: empty series");
    double sup = 0.0;
    for (const auto& s : series)
        sup = std::max(sup, s.l2);
    double acc = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].t - series[i - 1].t;
        acc += 0.5 * dt *
               (series[i - 1].grad_l2 * series[i - 1].grad_l2 +
                series[i].grad_l2 * series[i].grad_l2);
    }
    return sup + std::sqrt(acc);
}

ExponentSet exponent_set(double theta, double lambda1) {
    if (!(theta > 3.0))
        throw std::invalid_argument("exponent_set: theta must exceed 3");
    if (!(lambda1 > 1.0) || std::isinf(lambda1))
        throw std::invalid_argument("exponent_set: lambda1 must lie in (1, inf)");
    ExponentSet e;
    e.theta = theta;
    e.lambda1 = lambda1;
    e.lambda2 = lambda1 / (lambda1 - 1.0);
    e.alpha = (3.0 * theta - 4.0 * lambda1) / (8.0 * lambda1);
    e.beta = (3.0 * theta - (theta - 2.0) * e.lambda2) /
             (2.0 * (theta - 2.0) * e.lambda2);
    const double tol = 1e-12;
    if (e.alpha < -tol || e.alpha > 1.0 + tol || e.beta < -tol || e.beta > 1.0 + tol)
        throw std::invalid_argument("exponent_set: (theta, lambda1) outside the admissible range");
    e.w1 = 2.0 * e.alpha + 0.5 * (theta - 2.0) * e.beta;
    e.w2 = 2.0 * (1.0 - e.alpha) + 0.5 * (theta - 2.0) * (1.0 - e.beta);
    e.gamma1 = 2.0 * theta / (3.0 + theta);
    e.gamma2 = 2.0 * theta / (theta - 3.0);
    e.gronwall_exponent = theta * (theta - 1.0) / (theta - 3.0);
    return e;
}

SerrinPair serrin_pair(double p) {
    if (!(p > 3.0))
        throw std::invalid_argument("serrin_pair: p must exceed 3");
    return {p, 2.0 * p / (p - 3.0)};
}

void validate_serrin_pair(double p, double q) {
    if (!(p > 3.0) || !(q > 0.0))
        throw std::invalid_argument("serrin pair: need p > 3, q > 0");
    if (std::abs(3.0 / p + 2.0 / q - 1.0) > 1e-12)
        throw std::invalid_argument("serrin pair: 3/p + 2/q != 1");
}

double check_interpolation(const VelocityField& v, const ExponentSet& e) {
    const Tensor3 mag = velocity_magnitude(v, v.domain().refined_shape());
    const BoxDomain& d = v.domain();
    const double n4l1 = lp_norm_values(d, mag, 4.0 * e.lambda1);
    const double nt2l2 = lp_norm_values(d, mag, (e.theta - 2.0) * e.lambda2);
    const double nt = lp_norm_values(d, mag, e.theta);
    const double n3t = lp_norm_values(d, mag, 3.0 * e.theta);
    const double lhs = n4l1 * n4l1 * std::pow(nt2l2, 0.5 * (e.theta - 2.0));
    const double rhs = std::pow(nt, e.w1) * std::pow(n3t, e.w2);
    return rhs - lhs;
}

std::pair<double, double> young_bound(double a, double b, double kappa, double lambda1) {
    if (a < 0.0 || b < 0.0 || !(kappa > 0.0) || !(lambda1 > 1.0))
        throw std::invalid_argument("young_bound: domain violation");
    const double lambda2 = lambda1 / (lambda1 - 1.0);
    const double rhs = kappa * std::pow(a, lambda1) +
                       std::pow(kappa * lambda1, -lambda2 / lambda1) / lambda2 *
                           std::pow(b, lambda2);
    return {a * b, rhs};
}

double lemma2_q(double p) {
    if (p < 2.0 || p > 6.0)
        throw std::invalid_argument("lemma2_q: p must lie in [2, 6]");
    const double denom = 1.5 - 3.0 / p;
    if (denom <= 0.0)
        return std::numeric_limits<double>::infinity();
    return 2.0 / denom;
}

double lemma2_ratio(const std::vector<V02Sample>& v02_series,
                    const std::vector<NormSample>& lp_series, double p) {
    const double q = lemma2_q(p);
    return mixed_norm_accumulate(lp_series, q) / v02_norm(v02_series);
}

double lemma10_kappa(double p, double q, double r, double s_order) {
    if (q < p)
        throw std::invalid_argument("lemma10_kappa: requires q >= p");
    return 2.0 - 2.0 * r - s_order - 5.0 * (1.0 / p - 1.0 / q);
}

double lemma10_serrin_kappa(double p) { return 1.0 - 3.0 / p; }

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0)
        throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
    return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0)
        throw std::invalid_argument("Rational: division by zero");
    return Rational(num * o.den, den * o.num);
}

bool gamma1_identity_exact(std::int64_t theta_num, std::int64_t theta_den) {
    const Rational theta(theta_num, theta_den);
    const Rational gamma1 = Rational(2) * theta / (Rational(3) + theta);
    const Rational factor = Rational(3) / (Rational(2) * theta) + Rational(1, 2);
    return gamma1 * factor == Rational(1);
}

} // namespace nsbox
