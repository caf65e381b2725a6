#pragma once

#include "crosim/guidance.hpp"
#include "crosim/types.hpp"

namespace crosim {

/// Velocity-feedback controller gains and the bounds used by the stability
/// calculators. D and E are analysis-time parameters, not runtime signals.
struct ControllerConfig {
    double K = 0.0;  // 1/s, feedback gain
    double U = 1e-5; // m/s^2, saturation bound
    double W = 1e-7; // m/s^2, disturbance bound
    double D = 0.0;  // m/s, velocity-error bound
    double E = 0.0;  // m/s, estimation factor bound

    void validate() const {
        if (!(K > 0.0)) throw ConfigError("controller.K must be > 0");
        if (!(U > 0.0)) throw ConfigError("controller.U must be > 0");
        if (!(W >= 0.0)) throw ConfigError("controller.W must be >= 0");
        if (!(E >= 0.0 && E < D)) throw ConfigError("controller bounds must satisfy 0 <= E < D");
    }
};

/// u = -sat(K [v_hat - v_des(p_hat)]), per-axis clamp at +-U.
Vec3 control_input(const Vec3& v_hat, const Vec3& p_hat, const ControllerConfig& cfg,
                   const LgvfGuidance& guidance);

/// Same with effective gain delta*K; identical to control_input at delta = 1.
Vec3 adaptive_control_input(const Vec3& v_hat, const Vec3& p_hat, double delta,
                            const ControllerConfig& cfg, const LgvfGuidance& guidance);

/// Maximum admissible velocity error for Lyapunov decrease under bounded
/// thrust: D_bar = 6 (U - W) / (omega (3 + sqrt(3))). Requires U > W.
double max_velocity_error_bound(double U, double W, double omega);

struct GainConditionResult {
    bool holds = false;
    double margin = 0.0;  // lhs - rhs of the gain inequality
};

/// Evaluates K (D^2 - D E) > (sqrt(3)+3) omega D^2 / 6 + W D / 2.
/// E >= D makes the condition structurally unsatisfiable; reported as
/// holds = false with the computed margin.
GainConditionResult check_gain_condition(const ControllerConfig& cfg, double omega);

/// V = 1/2 ||v - v_des(p)||^2.
double lyapunov_value(const Vec3& v, const Vec3& p, const LgvfGuidance& guidance);

/// Fills (K, D, E) from (U, W, omega): D = D_bar/2, E = D/10, and K at twice
/// the minimum satisfying the gain condition.
ControllerConfig design_feedback_gain(double U, double W, double omega);

}  // namespace crosim
