#pragma once

#include "nsbox/spectral.hpp"

#include <array>

namespace nsbox {

/// Scalar field represented by one coefficient tensor.
struct ScalarField {
    CoefficientTensor data;

    explicit ScalarField(CoefficientTensor c) : data(std::move(c)) {}
    ScalarField(const BoxDomain& d, ParitySignature p) : data(d, p) {}

    const BoxDomain& domain() const { return data.domain; }
    ParitySignature parity() const { return data.parity; }
};

/// Velocity field with the canonical parity: component i is odd along axis i
/// and even along the other two. This makes v.n = 0 on all six faces exact
/// and enforces the flat-face slip and Navier conditions identically.
struct VelocityField {
    std::array<CoefficientTensor, 3> comp;

    explicit VelocityField(const BoxDomain& d)
        : comp{CoefficientTensor(d, canonical_parity(0)),
               CoefficientTensor(d, canonical_parity(1)),
               CoefficientTensor(d, canonical_parity(2))} {}

    const BoxDomain& domain() const { return comp[0].domain; }

    CoefficientTensor& operator[](int i) { return comp[i]; }
    const CoefficientTensor& operator[](int i) const { return comp[i]; }
};

/// Throws unless every component carries the canonical parity.
void require_canonical(const VelocityField& v, const char* where);

/// (d1 s, d2 s, d3 s); for an all-even s the triple has canonical parity.
std::array<CoefficientTensor, 3> gradient(const ScalarField& s);

/// sum_i d_i v_i; all-even output.
ScalarField divergence(const VelocityField& v);

/// Componentwise curl; component i has the dual parity (even along axis i,
/// odd along the others).
std::array<CoefficientTensor, 3> curl(const VelocityField& v);

/// Leray projection v - grad lap^{-1} div v, mode by mode. Idempotent; the
/// output divergence vanishes identically in exact arithmetic.
VelocityField leray_project(const VelocityField& v);

/// Pseudospectral (v . grad) v with 2/3-rule truncation applied to the input
/// and the output. The result carries canonical parity.
VelocityField convective_term(const VelocityField& v);

/// Max-over-faces trace residuals, evaluated by series summation on the face
/// collocation grids.
struct BoundaryResiduals {
    double normal_velocity;    // max |v . n|
    double tangential_curl;    // max |Rot v x n|
    double tangential_stress;  // max |n . D(v) . tau|
};

BoundaryResiduals boundary_residuals(const VelocityField& v);

/// Largest absolute divergence coefficient sum: cheap upper bound for
/// ||div v||_inf used by the per-step audit.
double divergence_coefficient_bound(const VelocityField& v);

} // namespace nsbox
