#include "nsbox/box_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nsbox {

std::vector<double> collocation_points(double length, int n) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("collocation_points: length must be positive and finite");
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("collocation_points: odd resolution " + std::to_string(n));
    std::vector<double> x(n);
    const double h = length / n;
    for (int j = 0; j < n; ++j)
        x[j] = (j + 0.5) * h;
    return x;
}

std::vector<double> trig_wavenumbers(double length, int n) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("trig_wavenumbers: length must be positive and finite");
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("trig_wavenumbers: odd resolution " + std::to_string(n));
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j)
        k[j] = std::numbers::pi * j / length;
    return k;
}

BoxDomain::BoxDomain(std::array<double, 3> extents, std::array<int, 3> resolution)
    : extents_(extents), resolution_(resolution) {
    for (int a = 0; a < 3; ++a) {
        if (!(extents_[a] > 0.0) || !std::isfinite(extents_[a]))
            throw std::invalid_argument("BoxDomain: extent " + std::to_string(a + 1) +
                                        " must be positive and finite");
        if (resolution_[a] % 2 != 0)
            throw std::invalid_argument("BoxDomain: odd resolution along axis " +
                                        std::to_string(a + 1));
        if (resolution_[a] < 8)
            throw std::invalid_argument("BoxDomain: resolution along axis " +
                                        std::to_string(a + 1) + " must be >= 8");
    }
}

double BoxDomain::cell_measure() const {
    return (extents_[0] / resolution_[0]) * (extents_[1] / resolution_[1]) *
           (extents_[2] / resolution_[2]);
}

double BoxDomain::volume() const { return extents_[0] * extents_[1] * extents_[2]; }

double BoxDomain::min_spacing() const {
    double h = extents_[0] / resolution_[0];
    for (int a = 1; a < 3; ++a)
        h = std::min(h, extents_[a] / resolution_[a]);
    return h;
}

std::vector<double> BoxDomain::collocation_grid(int axis) const {
    return collocation_points(extents_[axis], resolution_[axis]);
}

std::vector<double> BoxDomain::wavenumbers(int axis) const {
    return trig_wavenumbers(extents_[axis], resolution_[axis]);
}

std::array<int, 3> BoxDomain::refined_shape() const {
    return {3 * resolution_[0] / 2, 3 * resolution_[1] / 2, 3 * resolution_[2] / 2};
}

} // namespace nsbox
