#include "nsbox/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbox {

void require_canonical(const VelocityField& v, const char* where) {
    for (int i = 0; i < 3; ++i)
        if (!(v[i].parity == canonical_parity(i)))
            throw std::invalid_argument(std::string(where) + ": non-canonical velocity parity");
}

std::array<CoefficientTensor, 3> gradient(const ScalarField& s) {
    return {differentiate(s.data, 0), differentiate(s.data, 1), differentiate(s.data, 2)};
}

ScalarField divergence(const VelocityField& v) {
    require_canonical(v, "divergence");
    CoefficientTensor d = differentiate(v[0], 0);
    CoefficientTensor d2 = differentiate(v[1], 1);
    CoefficientTensor d3 = differentiate(v[2], 2);
    for (std::size_t i = 0; i < d.coeff.size(); ++i)
        d.coeff.raw()[i] += d2.coeff.raw()[i] + d3.coeff.raw()[i];
    return ScalarField(std::move(d));
}

std::array<CoefficientTensor, 3> curl(const VelocityField& v) {
    require_canonical(v, "curl");
    auto minus = [](CoefficientTensor a, const CoefficientTensor& b) {
        for (std::size_t i = 0; i < a.coeff.size(); ++i)
            a.coeff.raw()[i] -= b.coeff.raw()[i];
        return a;
    };
    return {minus(differentiate(v[2], 1), differentiate(v[1], 2)),
            minus(differentiate(v[0], 2), differentiate(v[2], 0)),
            minus(differentiate(v[1], 0), differentiate(v[0], 1))};
}

VelocityField leray_project(const VelocityField& v) {
    require_canonical(v, "leray_project");
    const BoxDomain& d = v.domain();
    const auto k1 = d.wavenumbers(0);
    const auto k2 = d.wavenumbers(1);
    const auto k3 = d.wavenumbers(2);
    const auto& n = d.resolution();

    VelocityField out(d);
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l) {
                const double kk = k1[i] * k1[i] + k2[j] * k2[j] + k3[l] * k3[l];
                const double b1 = v[0].coeff(i, j, l);
                const double b2 = v[1].coeff(i, j, l);
                const double b3 = v[2].coeff(i, j, l);
                if (kk == 0.0) {
                    out[0].coeff(i, j, l) = b1;
                    out[1].coeff(i, j, l) = b2;
                    out[2].coeff(i, j, l) = b3;
                    continue;
                }
                // div coefficient at this mode, then remove the gradient part
                const double div = k1[i] * b1 + k2[j] * b2 + k3[l] * b3;
                out[0].coeff(i, j, l) = b1 - k1[i] * div / kk;
                out[1].coeff(i, j, l) = b2 - k2[j] * div / kk;
                out[2].coeff(i, j, l) = b3 - k3[l] * div / kk;
            }
    return out;
}

VelocityField convective_term(const VelocityField& v) {
    require_canonical(v, "convective_term");
    const BoxDomain& d = v.domain();

    VelocityField vt(d);
    for (int i = 0; i < 3; ++i) {
        vt[i] = v[i];
        truncate_dealias(vt[i]);
    }

    std::array<Tensor3, 3> vg{inverse(vt[0]), inverse(vt[1]), inverse(vt[2])};
    std::array<std::array<Tensor3, 3>, 3> dg; // dg[j][i] = d_i v_j on the grid
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            dg[j][i] = inverse(differentiate(vt[j], i));

    VelocityField out(d);
    const std::size_t m = vg[0].size();
    Tensor3 w(d.resolution());
    for (int j = 0; j < 3; ++j) {
        for (std::size_t q = 0; q < m; ++q)
            w.raw()[q] = vg[0].raw()[q] * dg[j][0].raw()[q] +
                         vg[1].raw()[q] * dg[j][1].raw()[q] +
                         vg[2].raw()[q] * dg[j][2].raw()[q];
        out[j] = forward(d, w, canonical_parity(j));
        truncate_dealias(out[j]);
    }
    return out;
}

namespace {

double face_sup(const Tensor3& t) {
    double m = 0.0;
    for (double x : t.raw())
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

BoundaryResiduals boundary_residuals(const VelocityField& v) {
    require_canonical(v, "boundary_residuals");
    BoundaryResiduals r{0.0, 0.0, 0.0};
    auto rot = curl(v);

    for (int axis = 0; axis < 3; ++axis) {
        const int t1 = (axis + 1) % 3;
        const int t2 = (axis + 2) % 3;
        for (int side = 0; side < 2; ++side) {
            // v.n: trace of the normal component
            r.normal_velocity =
                std::max(r.normal_velocity, face_sup(face_values(v[axis], axis, side)));

            // Rot v x n: tangential components of the curl on the face
            r.tangential_curl =
                std::max(r.tangential_curl, face_sup(face_values(rot[t1], axis, side)));
            r.tangential_curl =
                std::max(r.tangential_curl, face_sup(face_values(rot[t2], axis, side)));

            // n . D(v) . tau for the two coordinate tangents:
            // D(v)_{axis,t} = (d_axis v_t + d_t v_axis) / 2
            for (int t : {t1, t2}) {
                CoefficientTensor strain = differentiate(v[t], axis);
                CoefficientTensor other = differentiate(v[axis], t);
                for (std::size_t q = 0; q < strain.coeff.size(); ++q)
                    strain.coeff.raw()[q] =
                        0.5 * (strain.coeff.raw()[q] + other.coeff.raw()[q]);
                r.tangential_stress =
                    std::max(r.tangential_stress, face_sup(face_values(strain, axis, side)));
            }
        }
    }
    return r;
}

double divergence_coefficient_bound(const VelocityField& v) {
    ScalarField d = divergence(v);
    double s = 0.0;
    for (double x : d.data.coeff.raw())
        s += std::abs(x);
    return s;
}

} // namespace nsbox
