#include "nsbox/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace nsbox {

std::string ParitySignature::str() const {
    std::string s;
    for (int a = 0; a < 3; ++a)
        s += (axes[a] == Parity::Even) ? 'e' : 'o';
    return s;
}

ParitySignature canonical_parity(int comp) {
    ParitySignature s = all_even();
    s.axes[comp] = Parity::Odd;
    return s;
}

ParitySignature dual_parity(int comp) {
    ParitySignature s{{Parity::Odd, Parity::Odd, Parity::Odd}};
    s.axes[comp] = Parity::Even;
    return s;
}

namespace {

// ---------------------------------------------------------------------------
// FFTW plan cache. Plans are immutable once created and shared across
// threads; creation is serialized (the FFTW planner is not thread-safe).
// All plans use FFTW_UNALIGNED so the new-array execute interface is valid
// for any std::vector buffer of the right layout.
// ---------------------------------------------------------------------------

struct PlanKey {
    int n0, n1, n2, axis, kind;
    bool operator==(const PlanKey&) const = default;
};

struct PlanKeyHash {
    std::size_t operator()(const PlanKey& k) const {
        std::size_t h = 1469598103934665603ull;
        for (long v : {(long)k.n0, (long)k.n1, (long)k.n2, (long)k.axis, (long)k.kind}) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::mutex g_plan_mutex;
std::unordered_map<PlanKey, fftw_plan, PlanKeyHash>& r2r_cache() {
    static std::unordered_map<PlanKey, fftw_plan, PlanKeyHash> cache;
    return cache;
}

std::array<std::size_t, 3> strides_of(const std::array<int, 3>& n) {
    return {static_cast<std::size_t>(n[1]) * n[2], static_cast<std::size_t>(n[2]), 1};
}

fftw_plan r2r_axis_plan(const std::array<int, 3>& shape, int axis, fftw_r2r_kind kind,
                        double* buf) {
    PlanKey key{shape[0], shape[1], shape[2], axis, static_cast<int>(kind)};
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = r2r_cache();
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    auto st = strides_of(shape);
    fftw_iodim dims[1];
    dims[0].n = shape[axis];
    dims[0].is = static_cast<int>(st[axis]);
    dims[0].os = static_cast<int>(st[axis]);
    fftw_iodim loop[2];
    int nl = 0;
    for (int a = 0; a < 3; ++a) {
        if (a == axis)
            continue;
        loop[nl].n = shape[a];
        loop[nl].is = static_cast<int>(st[a]);
        loop[nl].os = static_cast<int>(st[a]);
        ++nl;
    }
    fftw_plan p = fftw_plan_guru_r2r(1, dims, nl, loop, buf, buf, &kind,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p)
        throw std::runtime_error("transforms: FFTW r2r planning failed");
    cache.emplace(key, p);
    return p;
}

template <typename F>
void for_each_line(const std::array<int, 3>& shape, int axis, double* data, F&& f) {
    auto st = strides_of(shape);
    const std::size_t stride = st[axis];
    int b = (axis == 0) ? 1 : 0;
    int c = (axis == 2) ? 1 : 2;
    for (int i = 0; i < shape[b]; ++i)
        for (int j = 0; j < shape[c]; ++j)
            f(data + i * st[b] + j * st[c], stride);
}

// Forward pass along one axis of an in-place tensor, producing natural series
// amplitudes at index == wavenumber multiple. Along an odd axis the DST-II
// output (frequency k+1 at slot k) is shifted up one slot; the top sine
// frequency N falls outside the stored band and is dropped.
void forward_axis(Tensor3& t, int axis, Parity parity) {
    const auto& shape = t.shape();
    const int n = shape[axis];
    fftw_r2r_kind kind = (parity == Parity::Even) ? FFTW_REDFT10 : FFTW_RODFT10;
    fftw_plan p = r2r_axis_plan(shape, axis, kind, t.data());
    fftw_execute_r2r(p, t.data(), t.data());
    const double inv_n = 1.0 / n;
    if (parity == Parity::Even) {
        for_each_line(shape, axis, t.data(), [&](double* line, std::size_t s) {
            line[0] *= 0.5 * inv_n;
            for (int k = 1; k < n; ++k)
                line[k * s] *= inv_n;
        });
    } else {
        for_each_line(shape, axis, t.data(), [&](double* line, std::size_t s) {
            for (int k = n - 1; k >= 1; --k)
                line[k * s] = line[(k - 1) * s] * inv_n;
            line[0] = 0.0;
        });
    }
}

// Inverse pass: plain series summation via DCT-III / DST-III.
void inverse_axis(Tensor3& t, int axis, Parity parity) {
    const auto& shape = t.shape();
    const int n = shape[axis];
    if (parity == Parity::Even) {
        for_each_line(shape, axis, t.data(), [&](double* line, std::size_t s) {
            for (int k = 1; k < n; ++k)
                line[k * s] *= 0.5;
        });
        fftw_plan p = r2r_axis_plan(shape, axis, FFTW_REDFT01, t.data());
        fftw_execute_r2r(p, t.data(), t.data());
    } else {
        for_each_line(shape, axis, t.data(), [&](double* line, std::size_t s) {
            for (int k = 0; k + 1 < n; ++k)
                line[k * s] = 0.5 * line[(k + 1) * s];
            line[(n - 1) * s] = 0.0;
        });
        fftw_plan p = r2r_axis_plan(shape, axis, FFTW_RODFT01, t.data());
        fftw_execute_r2r(p, t.data(), t.data());
    }
}

void check_shape(const std::array<int, 3>& got, const std::array<int, 3>& want,
                 const char* where) {
    if (got != want)
        throw std::invalid_argument(std::string(where) + ": value tensor shape mismatch");
}

Tensor3 pad_coefficients(const Tensor3& c, std::array<int, 3> shape) {
    for (int a = 0; a < 3; ++a)
        if (shape[a] < c.dim(a))
            throw std::invalid_argument("values_on_shape: target grid below band limit");
    Tensor3 out(shape);
    for (int i = 0; i < c.dim(0); ++i)
        for (int j = 0; j < c.dim(1); ++j) {
            const double* src = &c.raw()[(static_cast<std::size_t>(i) * c.dim(1) + j) * c.dim(2)];
            double* dst = &out.raw()[(static_cast<std::size_t>(i) * shape[1] + j) * shape[2]];
            std::memcpy(dst, src, sizeof(double) * c.dim(2));
        }
    return out;
}

} // namespace

CoefficientTensor forward(const BoxDomain& d, const Tensor3& values, ParitySignature parity) {
    check_shape(values.shape(), d.resolution(), "forward");
    CoefficientTensor c(d, parity, values);
    for (int a = 0; a < 3; ++a)
        forward_axis(c.coeff, a, parity[a]);
    return c;
}

Tensor3 inverse(const CoefficientTensor& c) {
    Tensor3 v = c.coeff;
    for (int a = 0; a < 3; ++a)
        inverse_axis(v, a, c.parity[a]);
    return v;
}

Tensor3 values_on_shape(const CoefficientTensor& c, std::array<int, 3> shape) {
    Tensor3 v = pad_coefficients(c.coeff, shape);
    for (int a = 0; a < 3; ++a)
        inverse_axis(v, a, c.parity[a]);
    return v;
}

CoefficientTensor forward_from_shape(const BoxDomain& d, const Tensor3& values,
                                     ParitySignature parity) {
    Tensor3 big = values;
    for (int a = 0; a < 3; ++a)
        forward_axis(big, a, parity[a]);
    CoefficientTensor c(d, parity);
    const auto& n = d.resolution();
    for (int a = 0; a < 3; ++a)
        if (big.dim(a) < n[a])
            throw std::invalid_argument("forward_from_shape: source grid smaller than domain");
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int k = 0; k < n[2]; ++k)
                c.coeff(i, j, k) = big(i, j, k);
    return c;
}

CoefficientTensor differentiate(const CoefficientTensor& c, int axis) {
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("differentiate: axis out of range");
    CoefficientTensor out(c.domain, c.parity.flipped(axis));
    const auto k = c.domain.wavenumbers(axis);
    const auto& n = c.coeff.shape();
    // even -> odd: d/dx cos(kx) = -k sin(kx); odd -> even: d/dx sin(kx) = k cos(kx)
    const double sign = (c.parity[axis] == Parity::Even) ? -1.0 : 1.0;
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l) {
                int m = (axis == 0) ? i : (axis == 1) ? j : l;
                out.coeff(i, j, l) = sign * k[m] * c.coeff(i, j, l);
            }
    return out;
}

CoefficientTensor laplacian(const CoefficientTensor& c) {
    CoefficientTensor out(c.domain, c.parity);
    const auto k1 = c.domain.wavenumbers(0);
    const auto k2 = c.domain.wavenumbers(1);
    const auto k3 = c.domain.wavenumbers(2);
    const auto& n = c.coeff.shape();
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l)
                out.coeff(i, j, l) =
                    -(k1[i] * k1[i] + k2[j] * k2[j] + k3[l] * k3[l]) * c.coeff(i, j, l);
    return out;
}

void truncate_dealias(CoefficientTensor& c) {
    const auto& n = c.coeff.shape();
    const int c0 = c.domain.dealias_cutoff(0);
    const int c1 = c.domain.dealias_cutoff(1);
    const int c2 = c.domain.dealias_cutoff(2);
    for (int i = 0; i < n[0]; ++i)
        for (int j = 0; j < n[1]; ++j)
            for (int l = 0; l < n[2]; ++l)
                if (i >= c0 || j >= c1 || l >= c2)
                    c.coeff(i, j, l) = 0.0;
}

double field_mean(const CoefficientTensor& c) {
    if (c.parity == all_even())
        return c.coeff(0, 0, 0);
    return 0.0;
}

namespace {

double pairwise_sum_impl(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum_impl(x, h) + pairwise_sum_impl(x + h, n - h);
}

} // namespace

double pairwise_sum(const std::vector<double>& x) { return pairwise_sum_impl(x.data(), x.size()); }

double l2_norm_spectral(const CoefficientTensor& c) {
    const auto& n = c.coeff.shape();
    const auto& L = c.domain.extents();
    std::vector<double> terms;
    terms.reserve(c.coeff.size());
    for (int i = 0; i < n[0]; ++i) {
        double w1 = (i == 0 && c.parity[0] == Parity::Even) ? L[0] : 0.5 * L[0];
        for (int j = 0; j < n[1]; ++j) {
            double w2 = (j == 0 && c.parity[1] == Parity::Even) ? L[1] : 0.5 * L[1];
            for (int l = 0; l < n[2]; ++l) {
                double w3 = (l == 0 && c.parity[2] == Parity::Even) ? L[2] : 0.5 * L[2];
                double v = c.coeff(i, j, l);
                terms.push_back(v * v * w1 * w2 * w3);
            }
        }
    }
    return std::sqrt(pairwise_sum(terms));
}

Tensor3 face_values(const CoefficientTensor& c, int axis, int side) {
    if (axis < 0 || axis > 2 || (side != 0 && side != 1))
        throw std::invalid_argument("face_values: bad axis/side");
    auto shape = c.coeff.shape();
    std::array<int, 3> fshape = shape;
    fshape[axis] = 1;
    Tensor3 out(fshape);
    if (c.parity[axis] == Parity::Odd)
        return out; // sine factors vanish at both faces

    // contract the face axis: cos(0) = 1 at side 0, cos(pi k) = (-1)^k at side 1
    for (int i = 0; i < shape[0]; ++i)
        for (int j = 0; j < shape[1]; ++j)
            for (int l = 0; l < shape[2]; ++l) {
                int m = (axis == 0) ? i : (axis == 1) ? j : l;
                double w = (side == 0 || m % 2 == 0) ? 1.0 : -1.0;
                int fi = (axis == 0) ? 0 : i;
                int fj = (axis == 1) ? 0 : j;
                int fl = (axis == 2) ? 0 : l;
                out(fi, fj, fl) += w * c.coeff(i, j, l);
            }
    for (int a = 0; a < 3; ++a)
        if (a != axis)
            inverse_axis(out, a, c.parity[a]);
    return out;
}

double quadrature(const BoxDomain& d, const Tensor3& values) {
    const double measure = d.volume() / static_cast<double>(values.size());
    return pairwise_sum(values.raw()) * measure;
}

Tensor3 periodic_second_derivative(const Tensor3& values, int axis, double extended_length) {
    const auto& shape = values.shape();
    const int n = shape[axis];
    Tensor3 out = values;

    static std::mutex mtx;
    static std::unordered_map<int, std::pair<fftw_plan, fftw_plan>> plans;
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = plans.find(n);
        if (it == plans.end()) {
            std::vector<double> rbuf(n);
            std::vector<std::complex<double>> cbuf(n / 2 + 1);
            fwd = fftw_plan_dft_r2c_1d(n, rbuf.data(),
                                       reinterpret_cast<fftw_complex*>(cbuf.data()),
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
            bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cbuf.data()),
                                       rbuf.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
            plans.emplace(n, std::make_pair(fwd, bwd));
        } else {
            fwd = it->second.first;
            bwd = it->second.second;
        }
    }

    std::vector<double> line(n);
    std::vector<std::complex<double>> hat(n / 2 + 1);
    const double two_pi = 2.0 * std::numbers::pi;
    for_each_line(shape, axis, out.data(), [&](double* base, std::size_t s) {
        for (int i = 0; i < n; ++i)
            line[i] = base[i * s];
        fftw_execute_dft_r2c(fwd, line.data(), reinterpret_cast<fftw_complex*>(hat.data()));
        for (int m = 0; m <= n / 2; ++m) {
            double k = two_pi * m / extended_length;
            hat[m] *= -(k * k) / n;
        }
        fftw_execute_dft_c2r(bwd, reinterpret_cast<fftw_complex*>(hat.data()), line.data());
        for (int i = 0; i < n; ++i)
            base[i * s] = line[i];
    });
    return out;
}

} // namespace nsbox
