#include "nsbox/pressure.hpp"

#include "nsbox/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbox {

ScalarField pressure_from_velocity(const VelocityField& v,
                                   const std::optional<VelocityField>& f) {
    require_canonical(v, "pressure_from_velocity");
    VelocityField w = convective_term(v);
    if (f) {
        require_canonical(*f, "pressure_from_velocity (forcing)");
        for (int i = 0; i < 3; ++i)
            for (std::size_t q = 0; q < w[i].coeff.size(); ++q)
                w[i].coeff.raw()[q] -= (*f)[i].coeff.raw()[q];
    }
    ScalarField rhs = divergence(w);
    rhs.data.coeff(0, 0, 0) = 0.0; // compatibility: exact zero mean
    return solve_neumann(rhs);
}

ScalarField duality_rhs(const ScalarField& p, double s) {
    if (!(s > 1.0))
        throw std::invalid_argument("duality_rhs: s must exceed 1");
    const BoxDomain& d = p.domain();
    const auto shape = d.refined_shape();
    Tensor3 values = values_on_shape(p.data, shape);
    for (double& x : values.raw())
        x = (x == 0.0) ? 0.0 : std::copysign(std::pow(std::abs(x), s - 1.0), x);
    ScalarField g(forward_from_shape(d, values, all_even()));
    g.data.coeff(0, 0, 0) = 0.0; // subtract the mean
    return g;
}

double duality_identity_residual(const ScalarField& p, double s) {
    const BoxDomain& d = p.domain();
    const double pnorm = l2_norm_spectral(p.data);
    if (pnorm == 0.0)
        return 0.0; // identity is vacuous

    ScalarField psi = solve_neumann(duality_rhs(p, s));

    // integral grad p . grad psi by exact quadrature of the band-limited dot product
    std::vector<double> terms;
    for (int a = 0; a < 3; ++a) {
        Tensor3 gp = inverse(differentiate(p.data, a));
        Tensor3 gpsi = inverse(differentiate(psi.data, a));
        if (terms.empty())
            terms.assign(gp.size(), 0.0);
        for (std::size_t i = 0; i < gp.size(); ++i)
            terms[i] += gp.raw()[i] * gpsi.raw()[i];
    }
    const double lhs =
        pairwise_sum(terms) * d.volume() / static_cast<double>(terms.size());

    const double rhs = std::pow(lp_norm_refined(p, s), s);
    return std::abs(lhs - rhs) / rhs;
}

double pressure_estimate_ratio(const VelocityField& v,
                               const std::optional<VelocityField>& f, double s) {
    const double vpart = lp_norm_refined(v, 2.0 * s);
    const double fpart = f ? lp_norm_refined(*f, s) : 0.0;
    const double denom = vpart * vpart + fpart;
    if (denom == 0.0)
        throw std::invalid_argument("pressure_estimate_ratio: zero denominator");
    ScalarField p = pressure_from_velocity(v, f);
    return lp_norm_refined(p, s) / denom;
}

namespace {

Tensor3 gradient_magnitude(const ScalarField& psi, std::array<int, 3> shape) {
    Tensor3 out(shape);
    for (int a = 0; a < 3; ++a) {
        Tensor3 g = values_on_shape(differentiate(psi.data, a), shape);
        for (std::size_t i = 0; i < out.size(); ++i)
            out.raw()[i] += g.raw()[i] * g.raw()[i];
    }
    for (double& x : out.raw())
        x = std::sqrt(x);
    return out;
}

Tensor3 hessian_magnitude(const ScalarField& psi, std::array<int, 3> shape) {
    Tensor3 out(shape);
    for (int a = 0; a < 3; ++a) {
        CoefficientTensor da = differentiate(psi.data, a);
        for (int b = a; b < 3; ++b) {
            Tensor3 g = values_on_shape(differentiate(da, b), shape);
            const double w = (a == b) ? 1.0 : 2.0; // off-diagonal entries appear twice
            for (std::size_t i = 0; i < out.size(); ++i)
                out.raw()[i] += w * g.raw()[i] * g.raw()[i];
        }
    }
    for (double& x : out.raw())
        x = std::sqrt(x);
    return out;
}

} // namespace

double gradient_lp_norm(const ScalarField& psi, double p) {
    const auto shape = psi.domain().refined_shape();
    return lp_norm_values(psi.domain(), gradient_magnitude(psi, shape), p);
}

double hessian_lp_norm(const ScalarField& psi, double p) {
    const auto shape = psi.domain().refined_shape();
    return lp_norm_values(psi.domain(), hessian_magnitude(psi, shape), p);
}

double w2_norm(const ScalarField& psi, double p) {
    const BoxDomain& d = psi.domain();
    const auto shape = d.refined_shape();
    double acc = 0.0;
    auto add = [&](const CoefficientTensor& c) {
        acc += std::pow(lp_norm_values(d, values_on_shape(c, shape), p), p);
    };
    add(psi.data);
    for (int a = 0; a < 3; ++a) {
        CoefficientTensor da = differentiate(psi.data, a);
        add(da);
        for (int b = a; b < 3; ++b)
            add(differentiate(da, b));
    }
    return std::pow(acc, 1.0 / p);
}

double elliptic_constant_estimate(const std::vector<ScalarField>& corpus, double s) {
    if (corpus.empty())
        throw std::invalid_argument("elliptic_constant_estimate: empty corpus");
    const double sp = s / (s - 1.0);
    double best = 0.0;
    for (const auto& p : corpus) {
        const double pn = lp_norm_refined(p, s);
        if (pn == 0.0)
            throw std::invalid_argument("elliptic_constant_estimate: zero corpus member");
        ScalarField psi = solve_neumann(duality_rhs(p, s));
        best = std::max(best, w2_norm(psi, sp) / std::pow(pn, s - 1.0));
    }
    return best;
}

namespace {

// max over faces of | integral_S v_i v_j psi_{,j} n_i dS |, normalized by the
// face integral of |v|^2 |grad psi| (zero when the latter vanishes).
double boundary_term_residual(const VelocityField& v, const ScalarField& psi) {
    const BoxDomain& d = v.domain();
    std::array<CoefficientTensor, 3> gpsi = gradient(psi);
    double worst = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        double face_area = d.volume() / d.extent(axis);
        for (int side = 0; side < 2; ++side) {
            Tensor3 vn = face_values(v[axis], axis, side);
            std::array<int, 3> fshape = vn.shape();
            const std::size_t m = vn.size();
            std::vector<double> integrand(m, 0.0), scale(m, 0.0);
            for (int j = 0; j < 3; ++j) {
                Tensor3 vj = face_values(v[j], axis, side);
                Tensor3 gj = face_values(gpsi[j], axis, side);
                for (std::size_t q = 0; q < m; ++q) {
                    integrand[q] += vn.raw()[q] * vj.raw()[q] * gj.raw()[q];
                    scale[q] += std::abs(vj.raw()[q] * gj.raw()[q]) +
                                vj.raw()[q] * vj.raw()[q];
                }
            }
            const double measure = face_area / static_cast<double>(m);
            const double num = std::abs(pairwise_sum(integrand)) * measure;
            const double den = pairwise_sum(scale) * measure;
            worst = std::max(worst, den > 0.0 ? num / den : num);
            (void)fshape;
        }
    }
    return worst;
}

} // namespace

PressureChain pressure_chain(const VelocityField& v, const std::optional<VelocityField>& f,
                             double s) {
    const double sp = s / (s - 1.0);
    ScalarField p = pressure_from_velocity(v, f);
    ScalarField psi = solve_neumann(duality_rhs(p, s));

    PressureChain c;
    c.p_norm_s = lp_norm_refined(p, s);
    c.lhs = std::pow(c.p_norm_s, s);
    c.v_norm_2s = lp_norm_refined(v, 2.0 * s);
    c.f_norm_s = f ? lp_norm_refined(*f, s) : 0.0;
    c.hessian_norm = hessian_lp_norm(psi, sp);
    c.gradient_norm = gradient_lp_norm(psi, sp);
    c.rhs = c.v_norm_2s * c.v_norm_2s * c.hessian_norm + c.f_norm_s * c.gradient_norm;
    c.slack = c.rhs - c.lhs;
    c.boundary_term = boundary_term_residual(v, psi);
    return c;
}

} // namespace nsbox
