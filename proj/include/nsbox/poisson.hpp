#pragma once

#include "nsbox/fields.hpp"

namespace nsbox {

/// Solve -lap psi = g with n.grad psi = 0 on the boundary and zero mean.
///
/// g must be all-even (the cosine basis satisfies the Neumann condition
/// exactly) and compatible: |mean g| <= 1e-10 * rms(g). The solve is diagonal,
/// psi_k = g_k / |k~|^2 for k != 0 and psi_0 = 0.
ScalarField solve_neumann(const ScalarField& g);

/// Relative tolerance applied to the compatibility (zero-mean) precondition.
inline constexpr double kNeumannMeanTolerance = 1e-10;

} // namespace nsbox
