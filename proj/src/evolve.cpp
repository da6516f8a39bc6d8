#include "nsbox/evolve.hpp"

#include "nsbox/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nsbox {

void SimConfig::validate() const {
    if (!(nu > 0.0))
        throw std::invalid_argument("nu must be positive");
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (!(horizon >= 0.0))
        throw std::invalid_argument("T must be nonnegative");
    if (horizon > 0.0 && dt > horizon)
        throw std::invalid_argument("dt must not exceed T");
    for (double t : monitor_thetas)
        if (!(t > 3.0))
            throw std::invalid_argument("monitored theta must exceed 3");
    for (double s : monitor_s)
        if (!(s > 1.0))
            throw std::invalid_argument("monitored s must exceed 1");
    validate_serrin_pair(serrin_p, serrin_q);
    if (output_cadence < 1)
        throw std::invalid_argument("output_cadence must be >= 1");
    if (checkpoint_interval < 0)
        throw std::invalid_argument("checkpoint_interval must be >= 0");
    if (!(kappa_fraction > 0.0) || !(kappa_fraction < 1.0))
        throw std::invalid_argument("kappa_fraction must lie in (0, 1)");
    if (!(lambda1 > 1.0))
        throw std::invalid_argument("lambda1 must exceed 1");
    BoxDomain probe(extents, resolution); // validates geometry
    (void)probe;
}

GaussianStream::GaussianStream(std::uint64_t seed) {
    // splitmix64 expansion of the seed into the internal state
    auto mix = [](std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    splitmix_ = seed;
    state_[0] = mix(splitmix_);
    state_[1] = mix(splitmix_);
}

std::uint64_t GaussianStream::next_u64() {
    // xorshift128+
    std::uint64_t x = state_[0];
    const std::uint64_t y = state_[1];
    state_[0] = y;
    x ^= x << 23;
    state_[1] = x ^ y ^ (x >> 17) ^ (y >> 26);
    return state_[1] + y;
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1, u2;
    do {
        u1 = (next_u64() >> 11) * 0x1.0p-53;
    } while (u1 <= 0.0);
    u2 = (next_u64() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

namespace {

VelocityField taylor_green(const BoxDomain& d, double amplitude) {
    VelocityField v(d);
    // (A sin(pi x/a) cos(pi y/b), -A (b/a) cos(pi x/a) sin(pi y/b), 0): divergence-free
    v[0].coeff(1, 1, 0) = amplitude;
    v[1].coeff(1, 1, 0) = -amplitude * d.extent(1) / d.extent(0);
    return v;
}

VelocityField single_mode(const BoxDomain& d, const std::array<int, 3>& k, double amplitude) {
    int nonzero = 0, seed_axis = -1;
    for (int a = 0; a < 3; ++a) {
        if (k[a] != 0) {
            ++nonzero;
            if (seed_axis < 0)
                seed_axis = a;
        }
        if (k[a] < 0 || k[a] >= d.res(a))
            throw std::invalid_argument("single_mode: mode index out of range");
    }
    if (nonzero < 2)
        throw std::invalid_argument(
            "single_mode: no divergence-free canonical field exists for a mode "
            "with fewer than two nonzero indices");
    VelocityField v(d);
    v[seed_axis].coeff(k[0], k[1], k[2]) = amplitude;
    return leray_project(v);
}

VelocityField random_bandlimited(const BoxDomain& d, const InitialCondition& ic,
                                 std::uint64_t seed) {
    GaussianStream rng(seed);
    VelocityField v(d);
    const int kmax = ic.kmax;
    for (int comp = 0; comp < 3; ++comp) {
        const auto& n = d.resolution();
        for (int i = 0; i < std::min(n[0], kmax + 1); ++i)
            for (int j = 0; j < std::min(n[1], kmax + 1); ++j)
                for (int l = 0; l < std::min(n[2], kmax + 1); ++l) {
                    const double kk = std::sqrt(double(i * i + j * j + l * l));
                    if (kk == 0.0 || kk > kmax)
                        continue;
                    // sine axes cannot hold k = 0 modes
                    if ((comp == 0 && i == 0) || (comp == 1 && j == 0) ||
                        (comp == 2 && l == 0)) {
                        continue;
                    }
                    if (i >= d.dealias_cutoff(0) || j >= d.dealias_cutoff(1) ||
                        l >= d.dealias_cutoff(2))
                        continue;
                    v[comp].coeff(i, j, l) = rng.next() * std::pow(kk, -ic.gamma);
                }
    }
    v = leray_project(v);
    double norm2 = 0.0;
    for (int comp = 0; comp < 3; ++comp) {
        const double c = l2_norm_spectral(v[comp]);
        norm2 += c * c;
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0)
        throw std::runtime_error("random_bandlimited: draw produced the zero field");
    const double scale = ic.amplitude / norm;
    for (int comp = 0; comp < 3; ++comp)
        for (double& x : v[comp].coeff.raw())
            x *= scale;
    return v;
}

} // namespace

VelocityField initial_condition(const InitialCondition& ic, const BoxDomain& d,
                                std::uint64_t seed) {
    if (ic.id == "taylor_green")
        return taylor_green(d, ic.amplitude);
    if (ic.id == "single_mode")
        return single_mode(d, ic.mode, ic.amplitude);
    if (ic.id == "random_bandlimited")
        return random_bandlimited(d, ic, seed);
    throw std::invalid_argument("initial_condition: unknown id '" + ic.id + "'");
}

namespace {

// -P[(v.grad)v], the explicit part of the dynamics
VelocityField nonlinear_rhs(const VelocityField& v) {
    VelocityField n = leray_project(convective_term(v));
    for (int i = 0; i < 3; ++i)
        for (double& x : n[i].coeff.raw())
            x = -x;
    return n;
}

void apply_viscous_factor(VelocityField& v, double nu, double tau) {
    const BoxDomain& d = v.domain();
    const auto k1 = d.wavenumbers(0);
    const auto k2 = d.wavenumbers(1);
    const auto k3 = d.wavenumbers(2);
    const auto& n = d.resolution();
    for (int comp = 0; comp < 3; ++comp)
        for (int i = 0; i < n[0]; ++i)
            for (int j = 0; j < n[1]; ++j)
                for (int l = 0; l < n[2]; ++l) {
                    const double kk =
                        k1[i] * k1[i] + k2[j] * k2[j] + k3[l] * k3[l];
                    v[comp].coeff(i, j, l) *= std::exp(-nu * kk * tau);
                }
}

bool all_finite(const VelocityField& v) {
    for (int i = 0; i < 3; ++i)
        for (double x : v[i].coeff.raw())
            if (!std::isfinite(x))
                return false;
    return true;
}

} // namespace

VelocityField step(const VelocityField& v, double nu, double dt) {
    require_canonical(v, "step");

    // half-step predictor
    VelocityField k1 = nonlinear_rhs(v);
    VelocityField mid = v;
    for (int i = 0; i < 3; ++i)
        for (std::size_t q = 0; q < mid[i].coeff.size(); ++q)
            mid[i].coeff.raw()[q] += 0.5 * dt * k1[i].coeff.raw()[q];
    apply_viscous_factor(mid, nu, 0.5 * dt);

    // midpoint corrector
    VelocityField k2 = nonlinear_rhs(mid);
    apply_viscous_factor(k2, nu, 0.5 * dt);

    VelocityField out = v;
    apply_viscous_factor(out, nu, dt);
    for (int i = 0; i < 3; ++i)
        for (std::size_t q = 0; q < out[i].coeff.size(); ++q)
            out[i].coeff.raw()[q] += dt * k2[i].coeff.raw()[q];

    if (!all_finite(out))
        throw std::runtime_error("step: non-finite state (instability)");
    return out;
}

double cfl_number(const VelocityField& v, double dt) {
    const double vmax = lp_norm(v, std::numeric_limits<double>::infinity());
    return dt * vmax / v.domain().min_spacing();
}

int run_time_loop(const SimConfig& cfg, const VelocityField& v0,
                  const std::function<void(const VelocityField&, const StepCallbackInfo&)>& cb,
                  const std::function<void(const VelocityField&, double)>& on_abort) {
    cfg.validate();
    const int nsteps = (cfg.horizon == 0.0)
                           ? 0
                           : static_cast<int>(std::llround(cfg.horizon / cfg.dt));
    VelocityField v = v0;
    cb(v, {0, 0.0, nsteps == 0});
    for (int i = 1; i <= nsteps; ++i) {
        VelocityField prev = v;
        try {
            v = step(v, cfg.nu, cfg.dt);
        } catch (const std::exception&) {
            if (on_abort)
                on_abort(prev, (i - 1) * cfg.dt);
            throw;
        }
        cb(v, {i, i * cfg.dt, i == nsteps});
    }
    return nsteps;
}

} // namespace nsbox
