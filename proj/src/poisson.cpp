#include "nsbox/poisson.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbox {

ScalarField solve_neumann(const ScalarField& g) {
    if (!(g.parity() == all_even()))
        throw std::invalid_argument("solve_neumann: datum must have all-even parity");

    const BoxDomain& d = g.domain();
    const double norm = l2_norm_spectral(g.data);
    const double rms = norm / std::sqrt(d.volume());
    const double mean = field_mean(g.data);
    if (std::abs(mean) > kNeumannMeanTolerance * rms && rms > 0.0)
        throw std::invalid_argument("solve_neumann: datum mean violates Neumann compatibility");

    const auto k1 = d.wavenumbers(0);
    const auto k2 = d.wavenumbers(1);
    const auto k3 = d.wavenumbers(2);
    const auto& n = d.resolution();

    ScalarField psi(d, all_even());
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l) {
                const double kk = k1[i] * k1[i] + k2[j] * k2[j] + k3[l] * k3[l];
                psi.data.coeff(i, j, l) = (kk == 0.0) ? 0.0 : g.data.coeff(i, j, l) / kk;
            }
    return psi;
}

} // namespace nsbox
