#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "crosim/types.hpp"

namespace crosim {

/// State matrix of the CW dynamics for the ordering [x, y, z, xd, yd, zd].
Mat6 cw_state_matrix(double omega);

/// Acceleration injection on all three axes.
Mat63 cw_input_matrix();

/// Positions observed per axis: C = [I3 0].
Mat36 position_measurement_matrix();

enum class ZetaFormula {
    AsPrinted,  // zeta = -ln(x) / sqrt(pi   + ln^2 x)
    Textbook,   // zeta = -ln(x) / sqrt(pi^2 + ln^2 x)
};

/// Output-injection gain set [L_x, L_y, L_z, L_xd, L_yd, L_zd]: the first
/// three act on the position equations (1/s), the last three on the
/// acceleration equations (1/s^2).
struct LuenbergerDesign {
    Vec6 gains = Vec6::Zero();
    double zeta = std::numeric_limits<double>::quiet_NaN();
    double omega_n = std::numeric_limits<double>::quiet_NaN();
    double overshoot_spec = std::numeric_limits<double>::quiet_NaN();
    double rise_time_spec = std::numeric_limits<double>::quiet_NaN();

    /// Second-order response specs -> zeta, omega_n -> per-axis gains
    /// (position gain omega_n^2, velocity gain 2 zeta omega_n).
    static LuenbergerDesign from_specs(double overshoot, double rise_time,
                                       ZetaFormula formula = ZetaFormula::AsPrinted);

    /// Places the exact 6x6 spectrum of A - LC at the six given (real)
    /// eigenvalues, honoring the diagonal-pair gain structure. The y axis is
    /// solved in closed form; the coupled x-z block by Newton on the
    /// characteristic-polynomial coefficients.
    static LuenbergerDesign from_target_poles(const std::array<double, 6>& poles, double omega);

    /// Reactive tuning: spectrum {-1 x3, -0.1 x3}.
    static LuenbergerDesign reactive(double omega);

    /// Same structure with all gains divided by `factor` (high-resolution
    /// tunings are scaled-down reactive sets).
    LuenbergerDesign scaled(double factor) const;

    Mat63 gain_matrix() const;

    /// Eigenvalues of A - delta L C.
    std::vector<std::complex<double>> error_spectrum(double omega, double delta = 1.0) const;

    /// Throws unless A - LC is Hurwitz.
    void assert_hurwitz(double omega, double delta = 1.0) const;
};

/// Linear observer mimicking the CW plant with output-error injection.
/// The innovation is evaluated once per step and held across the RK4 stages,
/// so a measurement equal to the predicted position yields pure model
/// propagation.
class LuenbergerObserver {
public:
    LuenbergerObserver(const LuenbergerDesign& design, double omega);

    void set_state(const Vec3& p, const Vec3& v);
    void step(const Vec3& y_meas, const Vec3& u, double delta, double dt);

    Vec3 position() const { return xhat_.head<3>(); }
    Vec3 velocity() const { return xhat_.tail<3>(); }
    const Vec6& state() const { return xhat_; }

private:
    Vec6 xhat_ = Vec6::Zero();
    Mat6 a_;
    Mat63 gain_;
};

/// The discontinuous correction terms are evaluated once per step and held
/// either way; the scheme selects how the smooth extended-state chain is
/// advanced under them.
enum class LevantScheme {
    FrozenRk4,  // RK4 on the smooth chain, corrections frozen (default)
    Euler,
};

struct LevantParams {
    double k4 = 2.0;          // > lipschitz
    double lipschitz = 1.5e-5;  // L, > ||w_d''||_inf
    std::array<double, 4> coefficients = {8.6, 21.0, 16.25, 1.0};
    LevantScheme scheme = LevantScheme::FrozenRk4;

    void validate() const {
        if (!(lipschitz > 0.0)) throw ConfigError("levant.lipschitz must be > 0");
        if (!(k4 > lipschitz)) throw ConfigError("levant requires k4 > lipschitz");
    }
};

/// Discontinuous extended-state observer estimating position, velocity, the
/// lumped disturbance and its rate, in finite time under exact measurements.
/// Fixed-step integration; |e|^a sign(e) applied per axis.
class LevantObserver {
public:
    LevantObserver(const LevantParams& params, double omega);

    void set_state(const Vec3& p, const Vec3& v);
    void step(const Vec3& y_meas, const Vec3& u, double delta, double dt);

    Vec3 position() const { return xi1_; }
    Vec3 velocity() const { return xi2_; }
    Vec3 disturbance() const { return xi3_; }
    Vec3 disturbance_rate() const { return xi4_; }

private:
    LevantParams prm_;
    double omega_;
    Vec3 xi1_ = Vec3::Zero();
    Vec3 xi2_ = Vec3::Zero();
    Vec3 xi3_ = Vec3::Zero();
    Vec3 xi4_ = Vec3::Zero();
};

/// Discrete Kalman filter on the zero-order-hold discretization of the CW
/// model; Joseph-form update. Process noise covariance matches the
/// per-step-constant acceleration noise of the truth model.
class KalmanFilter {
public:
    KalmanFilter(double omega, double dt, double process_accel_variance,
                 double measurement_variance);

    void set_state(const Vec3& p, const Vec3& v, const Mat6& P0);
    void predict(const Vec3& u);
    void update(const Vec3& y_meas);

    Vec3 position() const { return xhat_.head<3>(); }
    Vec3 velocity() const { return xhat_.tail<3>(); }
    const Mat6& covariance() const { return P_; }

private:
    Vec6 xhat_ = Vec6::Zero();
    Mat6 P_ = Mat6::Zero();
    Mat6 ad_;
    Mat63 bd_;
    Mat6 qd_;
    Mat3 rd_;
};

/// Scalar gain-scheduling law: delta' = Proj_[dmin,1](G ||v_hat -
/// vdes_lin(p_hat)||_inf - gamma delta), gamma = G Gamma. The projection
/// zeroes the outward derivative at either bound.
struct AdaptiveConfig {
    double delta_min = 1e-3;
    double delta_max = 1.0;
    double delta0 = 1.0;
    double G = 0.0;          // s/m
    double Gamma = 0.0;      // m/s, tracking bound
    double Delta_cap = 0.0;  // 1/s, max decrease rate

    double gamma() const { return G * Gamma; }

    void validate() const {
        if (!(delta_min > 0.0 && delta_min < delta_max && delta_max <= 1.0))
            throw ConfigError("adaptive bounds must satisfy 0 < delta_min < delta_max <= 1");
        if (!(delta0 >= delta_min && delta0 <= delta_max))
            throw ConfigError("adaptive.delta0 outside [delta_min, delta_max]");
        if (!(G > 0.0) || !(Gamma > 0.0)) throw ConfigError("adaptive G and Gamma must be > 0");
        if (!(gamma() <= Delta_cap))
            throw ConfigError("adaptive requires gamma = G*Gamma <= Delta_cap");
    }
};

class AdaptiveGain {
public:
    explicit AdaptiveGain(const AdaptiveConfig& cfg) : cfg_(cfg), delta_(cfg.delta0) {
        cfg.validate();
    }

    /// Unprojected derivative, exposed for analysis.
    double raw_rate(const Vec3& v_hat, const Vec3& p_hat, double omega) const;

    /// Euler step of the projected derivative.
    void update(const Vec3& v_hat, const Vec3& p_hat, double omega, double dt);

    double delta() const { return delta_; }
    const AdaptiveConfig& config() const { return cfg_; }

private:
    AdaptiveConfig cfg_;
    double delta_;
};

struct SpectrumReport {
    std::vector<double> deltas;
    std::vector<std::vector<std::complex<double>>> spectra;  // sorted by (re, im)
};

/// Real-part trajectories of eig(A - delta L C) over a list of delta values.
SpectrumReport eigenvalue_shift_report(const LuenbergerDesign& design,
                                       const std::vector<double>& delta_values, double omega);

}  // namespace crosim
