#pragma once

#include "nsbox/fields.hpp"

#include <cstdint>
#include <vector>

namespace nsbox {

// ---------------------------------------------------------------------------
// Lp norms by midpoint quadrature
// ---------------------------------------------------------------------------

/// |v| sampled on a grid of the given shape.
Tensor3 velocity_magnitude(const VelocityField& v, std::array<int, 3> shape);

/// (sum |f(x_j)|^p h)^{1/p}; p = inf returns the grid maximum (a lower bound
/// of the true sup). Evaluated on the field's own collocation grid.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VelocityField& v, double p);

/// Same, sampled on the 3/2-refined grid. Used wherever a non-polynomial
/// power enters a tolerance claim.
double lp_norm_refined(const ScalarField& f, double p);
double lp_norm_refined(const VelocityField& v, double p);

/// Lp norm of samples already on a grid of the box.
double lp_norm_values(const BoxDomain& d, const Tensor3& values, double p);

// ---------------------------------------------------------------------------
// Time-series norms
// ---------------------------------------------------------------------------

struct NormSample {
    double t;
    double value;
};

/// (integral of value^q dt)^{1/q} by the trapezoid rule; q = inf takes the
/// sup over samples. Throws on an empty or unordered series.
double mixed_norm_accumulate(const std::vector<NormSample>& series, double q);

struct V02Sample {
    double t;
    double l2;      // ||v||_L2
    double grad_l2; // ||grad v||_L2
};

/// max_t ||v||_L2 + (integral ||grad v||_L2^2 dt)^{1/2}.
double v02_norm(const std::vector<V02Sample>& series);

// ---------------------------------------------------------------------------
// Exponent algebra
// ---------------------------------------------------------------------------

/// The exponent family driving the theta-energy estimate: conjugate Hoelder
/// pair (lambda1, lambda2), interpolation weights (alpha, beta) for L_{4l1}
/// and L_{(theta-2)l2} between L_theta and L_{3theta}, the resulting powers
/// (w1, w2), and the Young exponents (gamma1, gamma2).
struct ExponentSet {
    double theta;
    double lambda1, lambda2;
    double alpha, beta;
    double w1, w2;
    double gamma1, gamma2;
    double gronwall_exponent; // theta (theta - 1) / (theta - 3)
};

/// Populate an ExponentSet from (theta, lambda1). Throws unless theta > 3,
/// lambda1 in (1, inf), and both interpolation weights land in [0, 1].
ExponentSet exponent_set(double theta, double lambda1);

struct SerrinPair {
    double p, q;
};

/// q = 2p/(p-3) for p > 3, so that 3/p + 2/q = 1.
SerrinPair serrin_pair(double p);

/// Validates 3/p + 2/q = 1 to 1e-12.
void validate_serrin_pair(double p, double q);

/// RHS - LHS of the interpolation inequality
///   ||v||_{4l1}^2 ||v||_{(t-2)l2}^{(t-2)/2} <= ||v||_t^{w1} ||v||_{3t}^{w2}.
/// All norms are evaluated on the same refined grid, so the bound is a
/// discrete-measure Hoelder inequality and the slack is >= 0 up to roundoff.
double check_interpolation(const VelocityField& v, const ExponentSet& e);

/// Young inequality with small parameter: returns (ab, kappa a^l1 +
/// (kappa l1)^{-l2/l1} l2^{-1} b^l2); the first never exceeds the second.
std::pair<double, double> young_bound(double a, double b, double kappa, double lambda1);

/// Conjugate exponent for the V02 imbedding: 3/p + 2/q = 3/2, p in [2,6];
/// q = inf at p = 2.
double lemma2_q(double p);

/// Empirical imbedding ratio ||u||_{Lq Lp} / ||u||_{V02} along a trajectory.
double lemma2_ratio(const std::vector<V02Sample>& v02_series,
                    const std::vector<NormSample>& lp_series, double p);

/// kappa = 2 - 2r - s - 5(1/p - 1/q), valid for q >= p.
double lemma10_kappa(double p, double q, double r, double s_order);

/// The Serrin-argument specialization kappa = 1 - 3/p (positive iff p > 3).
double lemma10_serrin_kappa(double p);

// ---------------------------------------------------------------------------
// Exact rational arithmetic for the algebraic identities
// ---------------------------------------------------------------------------

struct Rational {
    std::int64_t num, den;

    Rational(std::int64_t n = 0, std::int64_t d = 1);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// gamma1 * (3/(2 theta) + 1/2) == 1, evaluated exactly for rational theta.
bool gamma1_identity_exact(std::int64_t theta_num, std::int64_t theta_den);

} // namespace nsbox
