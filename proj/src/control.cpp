#include "crosim/control.hpp"

namespace crosim {

Vec3 control_input(const Vec3& v_hat, const Vec3& p_hat, const ControllerConfig& cfg,
                   const LgvfGuidance& guidance) {
    return adaptive_control_input(v_hat, p_hat, 1.0, cfg, guidance);
}

Vec3 adaptive_control_input(const Vec3& v_hat, const Vec3& p_hat, double delta,
                            const ControllerConfig& cfg, const LgvfGuidance& guidance) {
    const Vec3 v_des = guidance.velocity_at(p_hat).v_des;
    return clamp_per_axis(-delta * cfg.K * (v_hat - v_des), cfg.U);
}

double max_velocity_error_bound(double U, double W, double omega) {
    if (!(U > W)) {
        throw ConfigError("velocity error bound requires U > W (max thrust above max disturbance)");
    }
    return 6.0 * (U - W) / (omega * (3.0 + std::sqrt(3.0)));
}

GainConditionResult check_gain_condition(const ControllerConfig& cfg, double omega) {
    if (!(cfg.D > 0.0)) throw ConfigError("gain condition requires D > 0");
    const double lhs = cfg.K * (cfg.D * cfg.D - cfg.D * cfg.E);
    const double rhs = (std::sqrt(3.0) + 3.0) * omega * cfg.D * cfg.D / 6.0 + cfg.W * cfg.D / 2.0;
    GainConditionResult out;
    out.margin = lhs - rhs;
    out.holds = (cfg.E >= 0.0 && cfg.E < cfg.D) && out.margin > 0.0;
    return out;
}

double lyapunov_value(const Vec3& v, const Vec3& p, const LgvfGuidance& guidance) {
    const Vec3 err = v - guidance.velocity_at(p).v_des;
    return 0.5 * err.squaredNorm();
}

ControllerConfig design_feedback_gain(double U, double W, double omega) {
    ControllerConfig cfg;
    cfg.U = U;
    cfg.W = W;
    cfg.D = max_velocity_error_bound(U, W, omega) / 2.0;
    cfg.E = cfg.D / 10.0;
    const double rhs =
        (std::sqrt(3.0) + 3.0) * omega * cfg.D * cfg.D / 6.0 + cfg.W * cfg.D / 2.0;
    const double k_min = rhs / (cfg.D * cfg.D - cfg.D * cfg.E);
    cfg.K = 2.0 * k_min;
    cfg.validate();
    return cfg;
}

}  // namespace crosim
