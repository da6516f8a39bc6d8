#pragma once

#include <array>
#include <vector>

namespace nsbox {

/// Collocation points of a half-offset (cell-centered) grid on [0, length]:
/// x_j = (j + 1/2) * length / n, j = 0..n-1. No boundary nodes.
std::vector<double> collocation_points(double length, int n);

/// Spectral wavenumbers of the half-wave trigonometric basis on [0, length]:
/// k~_k = pi * k / length, k = 0..n-1.
std::vector<double> trig_wavenumbers(double length, int n);

/// Rectangular box [0,a] x [0,b] x [0,c] with a uniform cell-centered grid.
///
/// Every field in the library lives on one shared physical grid; boundary
/// values are obtained by series evaluation, never by reading grid nodes.
/// Immutable after construction and freely shareable across threads.
class BoxDomain {
  public:
    BoxDomain(std::array<double, 3> extents, std::array<int, 3> resolution);

    const std::array<double, 3>& extents() const { return extents_; }
    const std::array<int, 3>& resolution() const { return resolution_; }

    double extent(int axis) const { return extents_[axis]; }
    int res(int axis) const { return resolution_[axis]; }

    /// Volume of one grid cell, (a/N1)(b/N2)(c/N3).
    double cell_measure() const;
    double volume() const;
    /// Smallest grid spacing over the three axes.
    double min_spacing() const;

    /// Half-offset collocation coordinates along `axis` (0-based).
    std::vector<double> collocation_grid(int axis) const;
    /// Wavenumbers pi*k/L along `axis`.
    std::vector<double> wavenumbers(int axis) const;

    /// Two-thirds dealiasing cutoff: modes k >= cutoff are dropped around
    /// pointwise products.
    int dealias_cutoff(int axis) const { return (2 * resolution_[axis]) / 3; }

    /// Grid shape refined by 3/2 per axis, used to evaluate non-polynomial
    /// pointwise nonlinearities with reduced aliasing.
    std::array<int, 3> refined_shape() const;

    bool operator==(const BoxDomain& other) const = default;

  private:
    std::array<double, 3> extents_;
    std::array<int, 3> resolution_;
};

} // namespace nsbox
