#pragma once

#include <utility>

#include "crosim/rng.hpp"
#include "crosim/types.hpp"

namespace crosim {

/// Surrogate for J2/drag: constant along-track acceleration plus white
/// acceleration noise. `sigma_pn` is read as a variance unless
/// `values_are_std` is set (the printed numbers are ambiguous; both
/// interpretations are supported).
struct DisturbanceModel {
    double d_ex = -1e-7;     // m/s^2, along x
    double sigma_pn = 1e-8;  // (m/s^2)^2 by default, m/s^2 when values_are_std
    bool values_are_std = false;

    double noise_std() const { return values_are_std ? sigma_pn : std::sqrt(sigma_pn); }

    void validate() const {
        if (!(sigma_pn >= 0.0)) throw ConfigError("disturbance.sigma_pn must be >= 0");
        if (!std::isfinite(d_ex)) throw ConfigError("disturbance.d_ex must be finite");
    }
};

/// Additive gaussian noise on each measured position axis.
struct SensorModel {
    double sigma_y = 1e-2;  // m^2 by default, m when values_are_std
    bool values_are_std = false;

    double noise_std() const { return values_are_std ? sigma_y : std::sqrt(sigma_y); }

    void validate() const {
        if (!(sigma_y >= 0.0)) throw ConfigError("sensor.sigma_y must be >= 0");
    }
};

/// First-order thruster lag with per-axis saturation at +-u_max.
struct ActuatorState {
    Vec3 u_applied = Vec3::Zero();  // m/s^2
    double tau = 1.0;               // s
    double u_max = 1e-5;            // m/s^2

    void validate() const {
        if (!(tau > 0.0)) throw ConfigError("actuator.tau must be > 0");
        if (!(u_max > 0.0)) throw ConfigError("actuator.u_max must be > 0");
    }
};

struct StateDerivative {
    Vec3 v;  // m/s
    Vec3 a;  // m/s^2
};

/// Clohessy-Wiltshire relative acceleration under control u and disturbance w.
StateDerivative cw_derivative(const RelativeState& state, const Vec3& u, const Vec3& w,
                              const OrbitParams& orbit);

/// Closed-form circular relative orbit: position and velocity at time t.
RelativeState cro_reference(double t, const OrbitParams& orbit, const CroParams& cro);

/// Advances the actuator filter toward sat(u_cmd) and integrates the truth
/// one RK4 step under the applied thrust, d_ex and process noise (one draw
/// per axis per step, held across stages).
std::pair<RelativeState, ActuatorState> step_truth(const RelativeState& state, const Vec3& u_cmd,
                                                   const ActuatorState& act,
                                                   const DisturbanceModel& dist,
                                                   const OrbitParams& orbit, double dt,
                                                   RandomStream& process_rng);

/// Position measurement with per-axis gaussian noise.
Vec3 measure_position(const RelativeState& state, const SensorModel& sensor,
                      RandomStream& sensor_rng);

/// One RK4 step of the deterministic CW dynamics under constant acceleration
/// u + w. Exposed for observers that propagate the same model.
RelativeState rk4_cw_step(const RelativeState& state, const Vec3& u, const Vec3& w,
                          const OrbitParams& orbit, double dt);

}  // namespace crosim
