#pragma once

#include "nsbox/fields.hpp"
#include "nsbox/poisson.hpp"

#include <optional>
#include <vector>

namespace nsbox {

/// Pressure recovered from -lap p = div((v.grad)v - f) with the Neumann
/// condition inherited from the cosine basis; mean-zero. The forcing, when
/// present, must carry canonical parity (the harness only uses
/// divergence-free forcings, under which v = 0 gives p = 0).
ScalarField pressure_from_velocity(const VelocityField& v,
                                   const std::optional<VelocityField>& f = std::nullopt);

/// p |p|^{s-2} minus its mean, evaluated pointwise on the 3/2-refined grid
/// and transformed back to the domain band; all-even parity. Requires s > 1
/// and mean-zero p.
ScalarField duality_rhs(const ScalarField& p, double s);

/// Relative residual of the duality identity
///   integral grad p . grad psi dx = ||p||_{L_s}^s,
/// with psi = solve_neumann(duality_rhs(p, s)) and the s-norm taken on the
/// same refined grid that built the datum. Returns 0 for p identically zero.
double duality_identity_residual(const ScalarField& p, double s);

/// ||p||_{L_s} / (||v||_{L_2s}^2 + ||f||_{L_s}) with p recovered from v.
double pressure_estimate_ratio(const VelocityField& v,
                               const std::optional<VelocityField>& f, double s);

/// L_{s'} norm of the gradient magnitude |grad psi| (refined quadrature).
double gradient_lp_norm(const ScalarField& psi, double p);

/// L_{s'} norm of the Frobenius Hessian magnitude |grad^2 psi|.
double hessian_lp_norm(const ScalarField& psi, double p);

/// Sobolev norm (sum_{|alpha| <= 2} ||D^alpha psi||_{s'}^{s'})^{1/s'} over
/// the ten multi-indices of order at most two.
double w2_norm(const ScalarField& psi, double p);

/// Empirical elliptic constant: max over the corpus of
/// ||psi||_{W^2_{s'}} / ||p||_{L_s}^{s-1}. Throws on an empty corpus or a
/// vanishing member.
double elliptic_constant_estimate(const std::vector<ScalarField>& corpus, double s);

/// One evaluation of the duality chain behind the pressure estimate.
struct PressureChain {
    double p_norm_s;       // ||p||_{L_s}
    double lhs;            // ||p||_{L_s}^s
    double v_norm_2s;      // ||v||_{L_2s}
    double f_norm_s;       // ||f||_{L_s} (0 when absent)
    double hessian_norm;   // ||grad^2 psi||_{L_s'}
    double gradient_norm;  // ||grad psi||_{L_s'}
    double rhs;            // v^2 * hessian + f * gradient
    double slack;          // rhs - lhs
    double boundary_term;  // max face |integral v_i v_j psi_{,j} n_i dS|, relative
};

PressureChain pressure_chain(const VelocityField& v, const std::optional<VelocityField>& f,
                             double s);

} // namespace nsbox
