#pragma once

#include "nsbox/fields.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nsbox {

struct InitialCondition {
    std::string id = "taylor_green"; // taylor_green | single_mode | random_bandlimited
    double amplitude = 1.0;
    std::array<int, 3> mode{1, 1, 0}; // single_mode
    double gamma = 2.0;               // random spectrum decay |k|^-gamma
    int kmax = 8;                     // random band limit
};

struct SimConfig {
    double nu = 1e-2;
    double dt = 1e-3;
    double horizon = 1.0;
    std::array<double, 3> extents{};
    std::array<int, 3> resolution{};
    InitialCondition ic;
    std::vector<double> monitor_thetas{4.0};
    std::vector<double> monitor_s{2.0};
    double serrin_p = 5.0;
    double serrin_q = 5.0;
    std::uint64_t seed = 1;
    int output_cadence = 10;
    int checkpoint_interval = 0; // steps; 0 disables checkpoints
    double kappa_fraction = 0.5; // kappa = fraction * nu * theta in the Young step
    double lambda1 = 1.5;        // Hoelder split exponent for the chain audit
    double cfl_limit = 0.5;      // advisory only

    void validate() const; // throws with a field-level message
};

/// Deterministic normal sampler (Box-Muller over the raw mt19937_64 stream),
/// so random fields are bit-identical for a fixed seed on any platform.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

  private:
    std::uint64_t state_[2];
    std::uint64_t splitmix_;
    bool have_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t next_u64();
};

/// Catalog of divergence-free canonical-parity initial fields.
VelocityField initial_condition(const InitialCondition& ic, const BoxDomain& d,
                                std::uint64_t seed);

/// One integrating-factor RK2 step (half-step predictor, then a full step
/// with the midpoint nonlinear term). The viscous factor e^{-nu |k~|^2 dt}
/// is exact per mode; the nonlinear term is dealiased and Leray-projected.
/// Throws on NaN/Inf in the result.
VelocityField step(const VelocityField& v, double nu, double dt);

/// Advisory CFL number dt * max|v| / min(h) evaluated on the grid.
double cfl_number(const VelocityField& v, double dt);

struct StepCallbackInfo {
    int index;    // step number just completed (0 = initial state)
    double t;     // simulation time of the state
    bool is_last; // t reached the horizon
};

/// Drive the time loop from 0 to the horizon, invoking the callback on the
/// initial state and after every step. Returns the number of completed steps.
/// Instability aborts throw a runtime_error after invoking `on_abort` with
/// the last valid state.
int run_time_loop(const SimConfig& cfg, const VelocityField& v0,
                  const std::function<void(const VelocityField&, const StepCallbackInfo&)>& cb,
                  const std::function<void(const VelocityField&, double)>& on_abort = {});

} // namespace nsbox
