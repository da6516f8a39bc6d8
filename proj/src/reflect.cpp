#include "nsbox/reflect.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbox {

Tensor3 extend_values(const Tensor3& values, int axis, Parity parity) {
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("extend_values: axis out of range");
    auto shape = values.shape();
    const int n = shape[axis];
    std::array<int, 3> eshape = shape;
    eshape[axis] = 2 * n;
    Tensor3 out(eshape);
    const double sign = (parity == Parity::Even) ? 1.0 : -1.0;
    for (int i = 0; i < shape[0]; ++i)
        for (int j = 0; j < shape[1]; ++j)
            for (int k = 0; k < shape[2]; ++k) {
                const double x = values(i, j, k);
                int idx[3] = {i, j, k};
                idx[axis] += n; // original half
                out(idx[0], idx[1], idx[2]) = x;
                int m = (axis == 0) ? i : (axis == 1) ? j : k;
                idx[axis] = n - 1 - m; // mirrored half
                out(idx[0], idx[1], idx[2]) = sign * x;
            }
    return out;
}

Tensor3 extend_scalar(const ScalarField& s, int axis) {
    return extend_values(inverse(s.data), axis, s.parity()[axis]);
}

std::array<Tensor3, 3> extend_velocity(const VelocityField& v, int axis) {
    require_canonical(v, "extend_velocity");
    std::array<Tensor3, 3> out{
        extend_values(inverse(v[0]), axis, v[0].parity[axis]),
        extend_values(inverse(v[1]), axis, v[1].parity[axis]),
        extend_values(inverse(v[2]), axis, v[2].parity[axis])};
    return out;
}

namespace {

double sup_norm(const Tensor3& t) {
    double m = 0.0;
    for (double x : t.raw())
        m = std::max(m, std::abs(x));
    return m;
}

// parity-basis second derivative along one axis, applied to grid samples of
// arbitrary shape: forward, multiply by -k~^2, inverse
Tensor3 parity_second_derivative(const Tensor3& values, int axis, double length,
                                 Parity parity) {
    // route through a synthetic transform: treat the samples axis-by-axis
    ParitySignature sig = all_even();
    sig.axes[axis] = parity;
    // other axes are untouched: transform only along `axis`
    // forward pass
    Tensor3 work = values;
    // Reuse the engine by a private round trip: forward then scale then inverse
    // along the single axis. The free functions operate on full tensors, so we
    // inline the single-axis logic via the doubled-length wavenumber rule.
    // (see transforms.cpp: forward_axis/inverse_axis are internal; we emulate
    // them with full transforms over a degenerate parity signature)
    (void)sig;
    (void)work;
    throw std::logic_error("unused");
}

} // namespace

double commutation_check(const ScalarField& s, int axis) {
    const BoxDomain& d = s.domain();

    // route 1: spectral Laplacian, then extension
    ScalarField lap(laplacian(s.data));
    Tensor3 lhs = extend_scalar(lap, axis);

    // route 2: extension, then Laplacian with a periodic FFT along the
    // extended axis and the parity bases along the others
    Tensor3 ext = extend_scalar(s, axis);
    Tensor3 rhs = periodic_second_derivative(ext, axis, 2.0 * d.extent(axis));
    for (int a = 0; a < 3; ++a) {
        if (a == axis)
            continue;
        // d^2/dx_a^2 of the extended samples: the extension only rearranges
        // indices along `axis`, so the parity transform applies per slice.
        // Compute on the original field and extend, which is identical
        // because per-axis operators commute with data rearrangement on a
        // different axis.
        ScalarField dd(differentiate(differentiate(s.data, a), a));
        Tensor3 term = extend_scalar(dd, axis);
        for (std::size_t q = 0; q < rhs.size(); ++q)
            rhs.raw()[q] += term.raw()[q];
    }

    double diff = 0.0;
    for (std::size_t q = 0; q < lhs.size(); ++q)
        diff = std::max(diff, std::abs(lhs.raw()[q] - rhs.raw()[q]));
    const double scale = sup_norm(lhs);
    return (scale > 0.0) ? diff / scale : diff;
}

double corner_commutation_check(const ScalarField& s, int axis_a, int axis_b) {
    if (axis_a == axis_b)
        throw std::invalid_argument("corner_commutation_check: axes must differ");
    const BoxDomain& d = s.domain();

    ScalarField lap(laplacian(s.data));
    Tensor3 lhs = extend_values(extend_scalar(lap, axis_a), axis_b, lap.parity()[axis_b]);

    Tensor3 ext = extend_values(extend_scalar(s, axis_a), axis_b, s.parity()[axis_b]);
    Tensor3 rhs = periodic_second_derivative(ext, axis_a, 2.0 * d.extent(axis_a));
    Tensor3 term_b = periodic_second_derivative(ext, axis_b, 2.0 * d.extent(axis_b));
    for (std::size_t q = 0; q < rhs.size(); ++q)
        rhs.raw()[q] += term_b.raw()[q];
    const int axis_c = 3 - axis_a - axis_b;
    ScalarField dd(differentiate(differentiate(s.data, axis_c), axis_c));
    Tensor3 term_c =
        extend_values(extend_scalar(dd, axis_a), axis_b, dd.parity()[axis_b]);
    for (std::size_t q = 0; q < rhs.size(); ++q)
        rhs.raw()[q] += term_c.raw()[q];

    double diff = 0.0;
    for (std::size_t q = 0; q < lhs.size(); ++q)
        diff = std::max(diff, std::abs(lhs.raw()[q] - rhs.raw()[q]));
    const double scale = sup_norm(lhs);
    return (scale > 0.0) ? diff / scale : diff;
}

} // namespace nsbox
