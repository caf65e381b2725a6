#include "crosim/dynamics.hpp"

namespace crosim {

StateDerivative cw_derivative(const RelativeState& state, const Vec3& u, const Vec3& w,
                              const OrbitParams& orbit) {
    if (!state.finite() || !all_finite(u) || !all_finite(w)) {
        throw ConfigError("cw_derivative: non-finite input");
    }
    const double om = orbit.omega();
    const Vec3& p = state.p;
    const Vec3& v = state.v;
    Vec3 a;
    a.x() = 2.0 * om * v.z() + u.x() + w.x();
    a.y() = -om * om * p.y() + u.y() + w.y();
    a.z() = 3.0 * om * om * p.z() - 2.0 * om * v.x() + u.z() + w.z();
    return {v, a};
}

RelativeState cro_reference(double t, const OrbitParams& orbit, const CroParams& cro) {
    if (!std::isfinite(t)) throw ConfigError("cro_reference: non-finite time");
    const double om = orbit.omega();
    const double R = cro.radius;
    const double arg = om * t + cro.phase;
    const double s = std::sin(arg);
    const double c = std::cos(arg);
    const double h = std::sqrt(3.0) / 2.0;
    RelativeState out;
    out.p = Vec3(-R * c, h * R * s, 0.5 * R * s);
    out.v = Vec3(R * om * s, h * R * om * c, 0.5 * R * om * c);
    return out;
}

RelativeState rk4_cw_step(const RelativeState& state, const Vec3& u, const Vec3& w,
                          const OrbitParams& orbit, double dt) {
    auto deriv = [&](const RelativeState& s) { return cw_derivative(s, u, w, orbit); };
    auto advance = [](const RelativeState& s, const StateDerivative& k, double h) {
        return RelativeState{s.p + h * k.v, s.v + h * k.a};
    };
    const StateDerivative k1 = deriv(state);
    const StateDerivative k2 = deriv(advance(state, k1, dt / 2.0));
    const StateDerivative k3 = deriv(advance(state, k2, dt / 2.0));
    const StateDerivative k4 = deriv(advance(state, k3, dt));
    RelativeState next;
    next.p = state.p + (dt / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    next.v = state.v + (dt / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    return next;
}

std::pair<RelativeState, ActuatorState> step_truth(const RelativeState& state, const Vec3& u_cmd,
                                                   const ActuatorState& act,
                                                   const DisturbanceModel& dist,
                                                   const OrbitParams& orbit, double dt,
                                                   RandomStream& process_rng) {
    if (!(dt > 0.0)) throw ConfigError("step_truth: dt must be > 0");
    act.validate();

    ActuatorState next_act = act;
    const Vec3 target = clamp_per_axis(u_cmd, act.u_max);
    next_act.u_applied += (dt / act.tau) * (target - act.u_applied);
    next_act.u_applied = clamp_per_axis(next_act.u_applied, act.u_max);

    Vec3 w = process_rng.gaussian_vec3(dist.noise_std());
    w.x() += dist.d_ex;

    return {rk4_cw_step(state, next_act.u_applied, w, orbit, dt), next_act};
}

Vec3 measure_position(const RelativeState& state, const SensorModel& sensor,
                      RandomStream& sensor_rng) {
    return state.p + sensor_rng.gaussian_vec3(sensor.noise_std());
}

}  // namespace crosim
