#pragma once

#include "nsbox/fields.hpp"

namespace nsbox {

/// Even/odd extension of a scalar field across the x_axis = 0 face, sampled
/// on the doubled periodic grid over [-L, L). Index j < N holds the mirror
/// image, j >= N the original samples, so restriction is a bitwise copy.
Tensor3 extend_scalar(const ScalarField& s, int axis);

/// Same extension applied to grid samples with an explicit parity.
Tensor3 extend_values(const Tensor3& values, int axis, Parity parity);

/// Extension of a canonical velocity field: tangential components extend
/// evenly, the normal component oddly.
std::array<Tensor3, 3> extend_velocity(const VelocityField& v, int axis);

/// || extend(lap s) - lap_periodic(extend(s)) ||_inf on the doubled grid,
/// where the extended axis uses a genuinely periodic FFT derivative and the
/// remaining axes keep their trig bases. Scaled by ||lap s||_inf.
double commutation_check(const ScalarField& s, int axis);

/// Same check after reflecting across two axes (the corner construction):
/// both extended axes are differentiated by periodic FFT.
double corner_commutation_check(const ScalarField& s, int axis_a, int axis_b);

} // namespace nsbox
