#pragma once

#include "nsbox/evolve.hpp"
#include "nsbox/norms.hpp"
#include "nsbox/pressure.hpp"

#include <map>
#include <optional>

namespace nsbox {

/// Quadrature of |v|^theta on the refined grid.
double theta_energy(const VelocityField& v, double theta);

/// D1 = integral |grad |v|^{theta/2}|^2 (chain rule thresholded where
/// |v| < threshold_rel * max|v|) and D2 = integral |grad v|^2 |v|^{theta-2}.
std::pair<double, double> dissipation_terms(const VelocityField& v, double theta,
                                            double threshold_rel = 1e-14);

/// c_emp * ||v||_{L_theta}^{theta (theta-1)/(theta-3)}.
double eq44_rhs(const VelocityField& v, double theta, double c_emp);

/// Instantaneous rate of (1/theta) d/dt integral |v|^theta assembled from the
/// surviving terms of the theta-energy identity:
///   -nu (D2 + 4(theta-2)/theta^2 D1) - integral grad p . v |v|^{theta-2},
/// with p the diagnostic pressure of v.
double theta_rate_assembled(const VelocityField& v, double theta, double nu,
                            double threshold_rel = 1e-14);

// ---------------------------------------------------------------------------
// Empirical constants
// ---------------------------------------------------------------------------

/// Constants estimated once per (domain, resolution) by corpus maximization.
/// Envelope audits cite the snapshot they used.
struct ConstantsSnapshot {
    std::array<double, 3> extents{};
    std::array<int, 3> resolution{};
    std::map<double, double> pressure_constant; // s -> max ||p||_s / ||v||_2s^2
    std::map<double, double> sobolev_constant;  // theta -> max ||v||_3theta^theta / D1
    std::map<double, double> lemma2_ratio;      // p -> ||u||_{Lq Lp} / ||u||_{V02}
    int corpus_size = 0;
    std::uint64_t corpus_seed0 = 1;
    int corpus_kmax = 8;
};

ConstantsSnapshot estimate_constants(const BoxDomain& d, const std::vector<double>& s_values,
                                     const std::vector<double>& theta_values, int corpus_size,
                                     std::uint64_t seed0, int kmax, int threads = 1);

/// The composite constant of the Young-absorbed theta-energy bound:
///   (kappa gamma1)^{-gamma2/gamma1} gamma2^{-1}
///     (theta (theta-2) (theta^2/4)^{3/(2 theta)} c_press c_sob^{3/(2 theta)})^{gamma2}.
double gronwall_composite_constant(double theta, double kappa, double c_press, double c_sob);

// ---------------------------------------------------------------------------
// Chain audit and Gronwall envelope
// ---------------------------------------------------------------------------

struct ChainLink {
    std::string name;
    double lhs, rhs, slack;
    bool constant_free; // true: genuine inequality; false: empirical-constant margin
    bool pass;
};

/// Verify each inequality link of the theta-energy chain independently by
/// quadrature on a shared refined grid. Links with unknown constants use the
/// supplied empirical values and report margins.
std::vector<ChainLink> chain_audit(const VelocityField& v, const ScalarField& p, double theta,
                                   const ExponentSet& e, double nu, double kappa,
                                   double c_press, double c_sob);

struct EnvelopePoint {
    double t;
    double envelope; // exp(c_emp S(t)^q) ||v(0)||_p^p
    double measured; // ||v(t)||_p^p
    bool ok;
};

std::vector<EnvelopePoint> gronwall_envelope(const std::vector<NormSample>& lp_series,
                                             double p, double q, double c_emp);

/// (integral_0^T ||v(t)||_{5p/3}^{5p/3} dt)^{3/(5p)} by trapezoid;
/// `l53p_series` holds the spatial norms ||v(t)||_{L_{5p/3}}.
double spacetime_53p_norm(const std::vector<NormSample>& l53p_series, double p);

// ---------------------------------------------------------------------------
// Monitored runs
// ---------------------------------------------------------------------------

struct ThetaBlock {
    double theta;
    double energy;      // integral |v|^theta
    double d1, d2;      // dissipation terms
    double norm_3theta; // ||v||_{L_3theta}
};

struct SBlock {
    double s;
    double ratio;             // ||p||_s / ||v||_2s^2
    double duality_residual;
};

struct CriteriaRecord {
    double t = 0.0;
    double kinetic_energy = 0.0; // (1/2)||v||_2^2, exact via Parseval
    std::vector<ThetaBlock> thetas;
    std::vector<SBlock> pressures;
    double serrin_lp = 0.0;        // ||v||_{L_p}
    double serrin_acc = 0.0;       // L_q(0,t; L_p) mixed norm so far
    double envelope = 0.0;         // Gronwall envelope at t
    double l53p = 0.0;             // ||v||_{L_{5p/3}}
    double div_linf = 0.0;         // grid sup of div v
    double bc_residual = 0.0;      // max boundary-trace residual
    double energy_step_drift = 0.0; // max relative per-step energy increase seen
    bool energy_monotone = true;
    bool envelope_ok = true;
    bool divergence_ok = true;
    bool boundary_ok = true;
};

struct RunOutput {
    std::vector<CriteriaRecord> records;
    ConstantsSnapshot constants;
    double envelope_constant = 0.0; // composite c used by the envelope audit
    double kappa = 0.0;
    double spacetime_norm = 0.0;
    double initial_cfl = 0.0;
    int steps = 0;
    bool all_audits_pass = true;
};

/// Advance 0 -> T, emitting one CriteriaRecord per cadence interval (plus the
/// initial and final states). Per-step cheap audits (Parseval energy,
/// divergence coefficient bound) run every step. Deterministic for a fixed
/// config, seed and thread count.
RunOutput run_monitored(const SimConfig& cfg,
                        const std::optional<ConstantsSnapshot>& constants = std::nullopt,
                        const std::function<void(const CriteriaRecord&)>& sink = {},
                        const std::function<void(const VelocityField&, int)>& checkpoints = {});

} // namespace nsbox
