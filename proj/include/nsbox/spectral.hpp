#pragma once

#include "nsbox/box_domain.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nsbox {

// ---------------------------------------------------------------------------
// Parity algebra
// ---------------------------------------------------------------------------

/// Reflection symmetry of a function about both faces of one axis.
/// Even extends as a cosine series, odd as a sine series.
enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

/// Per-axis parity triple. Differentiation along an axis flips that axis;
/// pointwise products compose as even*even = odd*odd = even, even*odd = odd.
struct ParitySignature {
    std::array<Parity, 3> axes;

    Parity operator[](int axis) const { return axes[axis]; }

    ParitySignature flipped(int axis) const {
        ParitySignature s = *this;
        s.axes[axis] = (axes[axis] == Parity::Even) ? Parity::Odd : Parity::Even;
        return s;
    }

    friend ParitySignature operator*(const ParitySignature& a, const ParitySignature& b) {
        ParitySignature s;
        for (int i = 0; i < 3; ++i)
            s.axes[i] = static_cast<Parity>(static_cast<int>(a.axes[i]) ^
                                            static_cast<int>(b.axes[i]));
        return s;
    }

    bool operator==(const ParitySignature& other) const = default;

    std::string str() const;
};

inline ParitySignature all_even() {
    return {{Parity::Even, Parity::Even, Parity::Even}};
}

/// Canonical velocity-component parity: component `comp` is odd along its own
/// axis and even along the other two. This encodes v.n = 0 together with the
/// flat-face slip/Navier conditions exactly.
ParitySignature canonical_parity(int comp);

/// Parity of curl component `comp` of a canonical field: even along its own
/// axis, odd along the others.
ParitySignature dual_parity(int comp);

// ---------------------------------------------------------------------------
// Dense rank-3 tensor (shared layout for grid values and coefficients)
// ---------------------------------------------------------------------------

/// Row-major k3-fastest tensor: index = (i*n2 + j)*n3 + k.
class Tensor3 {
  public:
    Tensor3() : shape_{0, 0, 0} {}
    explicit Tensor3(std::array<int, 3> shape)
        : shape_(shape),
          data_(static_cast<std::size_t>(shape[0]) * shape[1] * shape[2], 0.0) {}

    const std::array<int, 3>& shape() const { return shape_; }
    int dim(int axis) const { return shape_[axis]; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j, int k) {
        return data_[(static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k];
    }
    double operator()(int i, int j, int k) const {
        return data_[(static_cast<std::size_t>(i) * shape_[1] + j) * shape_[2] + k];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const Tensor3& o) const { return shape_ == o.shape_; }

  private:
    std::array<int, 3> shape_;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Coefficient tensors
// ---------------------------------------------------------------------------

/// Coefficients of the tensor-product trig expansion
///   f(x) = sum_k c[k1,k2,k3] * B1(k1,x1) B2(k2,x2) B3(k3,x3),
/// where B(k,x) = cos(pi k x / L) on even axes and sin(pi k x / L) on odd
/// axes. Index k equals the wavenumber multiple; along an odd axis the k = 0
/// entry is identically zero (a sine series has no constant mode).
struct CoefficientTensor {
    BoxDomain domain;
    ParitySignature parity;
    Tensor3 coeff;

    CoefficientTensor(const BoxDomain& d, ParitySignature p)
        : domain(d), parity(p), coeff(d.resolution()) {}
    CoefficientTensor(const BoxDomain& d, ParitySignature p, Tensor3 c)
        : domain(d), parity(p), coeff(std::move(c)) {}
};

// ---------------------------------------------------------------------------
// Transforms (type-II cosine/sine pairs on the half-offset grid)
// ---------------------------------------------------------------------------
//
// Normalization: coefficients are the natural amplitudes of the series above,
// so inverse(forward(f)) reproduces any band-limited f exactly. Per axis,
//   forward  (even): c_0 = (1/N) sum_j f_j,   c_k = (2/N) sum_j f_j cos(pi k x_j / L)
//   forward  (odd) : c_k = (2/N) sum_j f_j sin(pi k x_j / L),  k = 1..N-1
//   inverse        : plain series summation at the collocation points.
// Along an odd axis the grid content at the top sine frequency N (the
// (-1)^j mode) is outside the stored band and is dropped by forward().

/// Grid samples -> coefficients. Throws on shape mismatch.
CoefficientTensor forward(const BoxDomain& d, const Tensor3& values, ParitySignature parity);

/// Coefficients -> grid samples on the domain's own collocation grid.
Tensor3 inverse(const CoefficientTensor& c);

/// Series evaluation on an arbitrary cell-centered grid of shape `shape`
/// covering the same box (used for 3/2-refined quadrature grids).
/// Requires shape[a] >= band limit of c along each axis.
Tensor3 values_on_shape(const CoefficientTensor& c, std::array<int, 3> shape);

/// Forward transform of samples living on an arbitrary cell-centered grid of
/// the same box, truncated back to the domain resolution.
CoefficientTensor forward_from_shape(const BoxDomain& d, const Tensor3& values,
                                     ParitySignature parity);

// ---------------------------------------------------------------------------
// Spectral calculus (exact, term-by-term)
// ---------------------------------------------------------------------------

/// d/dx_axis. Output parity is flipped along `axis`.
CoefficientTensor differentiate(const CoefficientTensor& c, int axis);

/// Laplacian: diagonal multiplication by -(k1~^2 + k2~^2 + k3~^2).
CoefficientTensor laplacian(const CoefficientTensor& c);

/// Zero all modes with k_a >= (2/3) N_a on any axis (in place).
void truncate_dealias(CoefficientTensor& c);

/// Mean of the represented function over the box. Exactly the (0,0,0)
/// coefficient when all axes are even, zero otherwise.
double field_mean(const CoefficientTensor& c);

/// L2(Omega) norm via Parseval on the coefficients (exact for the series).
double l2_norm_spectral(const CoefficientTensor& c);

/// Series trace on the face x_axis = side*L (side 0 or 1), sampled on the
/// collocation grid of the remaining axes. Shape has dim(axis) == 1.
Tensor3 face_values(const CoefficientTensor& c, int axis, int side);

/// Midpoint quadrature of grid samples: sum of values times cell measure of
/// the sampling grid (exact for trig polynomials below the doubled-grid
/// Nyquist).
double quadrature(const BoxDomain& d, const Tensor3& values);

/// Fixed-order pairwise reduction; used for every quadrature sum so results
/// are bit-reproducible.
double pairwise_sum(const std::vector<double>& x);

// For the reflection checks: second derivative along `axis` computed by a
// genuinely periodic FFT on an already-extended tensor whose extended axis
// spans [0, 2L) (independent route, never used by production operators).
Tensor3 periodic_second_derivative(const Tensor3& values, int axis, double extended_length);

} // namespace nsbox
