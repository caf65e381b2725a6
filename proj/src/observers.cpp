#include "crosim/observers.hpp"

#include <algorithm>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "crosim/guidance.hpp"

namespace crosim {

Mat6 cw_state_matrix(double omega) {
    Mat6 a = Mat6::Zero();
    a(0, 3) = 1.0;
    a(1, 4) = 1.0;
    a(2, 5) = 1.0;
    a(3, 5) = 2.0 * omega;
    a(4, 1) = -omega * omega;
    a(5, 2) = 3.0 * omega * omega;
    a(5, 3) = -2.0 * omega;
    return a;
}

Mat63 cw_input_matrix() {
    Mat63 b = Mat63::Zero();
    b.bottomRows<3>() = Mat3::Identity();
    return b;
}

Mat36 position_measurement_matrix() {
    Mat36 c = Mat36::Zero();
    c.leftCols<3>() = Mat3::Identity();
    return c;
}

LuenbergerDesign LuenbergerDesign::from_specs(double overshoot, double rise_time,
                                              ZetaFormula formula) {
    if (!(overshoot > 0.0 && overshoot < 1.0))
        throw ConfigError("luenberger overshoot spec must be in (0, 1)");
    if (!(rise_time > 0.0)) throw ConfigError("luenberger rise time spec must be > 0");

    const double ln = std::log(overshoot);
    const double pi_term = (formula == ZetaFormula::AsPrinted) ? M_PI : M_PI * M_PI;
    LuenbergerDesign d;
    d.zeta = -ln / std::sqrt(pi_term + ln * ln);
    d.omega_n = M_PI / (rise_time * std::sqrt(1.0 - d.zeta * d.zeta));
    d.overshoot_spec = overshoot;
    d.rise_time_spec = rise_time;
    const double l_pos = d.omega_n * d.omega_n;
    const double l_vel = 2.0 * d.zeta * d.omega_n;
    d.gains << l_pos, l_pos, l_pos, l_vel, l_vel, l_vel;
    return d;
}

namespace {

// Characteristic polynomial s^4 + c3 s^3 + c2 s^2 + c1 s + c0 of the coupled
// x-z error block of A - LC, as a function of (Lx, Lz, Lxd, Lzd):
//   e_x' = e_xd - Lx e_x            e_z' = e_zd - Lz e_z
//   e_xd' = 2w e_zd - Lxd e_x       e_zd' = 3w^2 e_z - 2w e_xd - Lzd e_z
Eigen::Vector4d xz_char_coeffs(const Eigen::Vector4d& g, double w) {
    const double lx = g(0), lz = g(1), lxd = g(2), lzd = g(3);
    const double w2 = w * w;
    Eigen::Vector4d c;
    c(0) = lx + lz;                                              // s^3
    c(1) = lx * lz + w2 + lxd + lzd;                             // s^2
    c(2) = 4.0 * w2 * (lx + lz) + (lzd - 3.0 * w2) * lx + lxd * lz;
    c(3) = 4.0 * w2 * lx * lz + lxd * (lzd - 3.0 * w2);
    return c;
}

Eigen::Matrix4d xz_char_jacobian(const Eigen::Vector4d& g, double w) {
    const double lx = g(0), lz = g(1), lxd = g(2), lzd = g(3);
    const double w2 = w * w;
    Eigen::Matrix4d j;
    j << 1.0, 1.0, 0.0, 0.0,
         lz, lx, 1.0, 1.0,
         4.0 * w2 + lzd - 3.0 * w2, 4.0 * w2 + lxd, lz, lx,
         4.0 * w2 * lz, 4.0 * w2 * lx, lzd - 3.0 * w2, lxd;
    return j;
}

// Coefficients of (s - p0)(s - p1)(s - p2)(s - p3) past the leading term.
Eigen::Vector4d poly_from_roots4(double p0, double p1, double p2, double p3) {
    Eigen::Matrix<double, 5, 1> c = Eigen::Matrix<double, 5, 1>::Zero();
    c(0) = 1.0;
    for (double r : {p0, p1, p2, p3}) {
        for (int i = 4; i >= 1; --i) c(i) = c(i) - r * c(i - 1);
    }
    return c.tail<4>();
}

}  // namespace

LuenbergerDesign LuenbergerDesign::from_target_poles(const std::array<double, 6>& poles,
                                                     double omega) {
    std::array<double, 6> p = poles;
    for (double v : p) {
        if (!(v < 0.0)) throw ConfigError("target poles must all be strictly negative");
    }
    std::sort(p.begin(), p.end());

    LuenbergerDesign d;
    // Decoupled y axis: s^2 + Ly s + (Lyd + w^2) = (s - a)(s - b).
    const double ay = p[0], by = p[3];
    d.gains(1) = -(ay + by);
    d.gains(4) = ay * by - omega * omega;

    // Coupled x-z block: Newton on the quartic coefficients.
    const Eigen::Vector4d target = poly_from_roots4(p[1], p[2], p[4], p[5]);
    Eigen::Vector4d g;
    g << -(p[1] + p[4]), -(p[2] + p[5]), p[1] * p[4], p[2] * p[5];
    for (int it = 0; it < 100; ++it) {
        const Eigen::Vector4d f = xz_char_coeffs(g, omega) - target;
        if (f.cwiseAbs().maxCoeff() < 1e-14 * std::max(1.0, target.cwiseAbs().maxCoeff())) break;
        g -= xz_char_jacobian(g, omega).fullPivLu().solve(f);
    }
    const Eigen::Vector4d res = xz_char_coeffs(g, omega) - target;
    if (!(res.cwiseAbs().maxCoeff() < 1e-10)) {
        throw ConfigError("pole placement did not converge for the x-z block");
    }
    d.gains(0) = g(0);
    d.gains(2) = g(1);
    d.gains(3) = g(2);
    d.gains(5) = g(3);
    d.assert_hurwitz(omega);
    return d;
}

LuenbergerDesign LuenbergerDesign::reactive(double omega) {
    return from_target_poles({-1.0, -1.0, -1.0, -0.1, -0.1, -0.1}, omega);
}

LuenbergerDesign LuenbergerDesign::scaled(double factor) const {
    if (!(factor > 0.0)) throw ConfigError("gain scale factor must be > 0");
    LuenbergerDesign d = *this;
    d.gains /= factor;
    return d;
}

Mat63 LuenbergerDesign::gain_matrix() const {
    Mat63 l = Mat63::Zero();
    l.topRows<3>() = gains.head<3>().asDiagonal();
    l.bottomRows<3>() = gains.tail<3>().asDiagonal();
    return l;
}

std::vector<std::complex<double>> LuenbergerDesign::error_spectrum(double omega,
                                                                   double delta) const {
    const Mat6 a_eq = cw_state_matrix(omega) - delta * gain_matrix() * position_measurement_matrix();
    Eigen::EigenSolver<Mat6> solver(a_eq, false);
    std::vector<std::complex<double>> eigs(6);
    for (int i = 0; i < 6; ++i) eigs[i] = solver.eigenvalues()(i);
    std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

void LuenbergerDesign::assert_hurwitz(double omega, double delta) const {
    for (const auto& e : error_spectrum(omega, delta)) {
        if (!(e.real() < 0.0)) {
            throw ConfigError("observer error dynamics not Hurwitz at delta = " +
                              std::to_string(delta));
        }
    }
}

LuenbergerObserver::LuenbergerObserver(const LuenbergerDesign& design, double omega)
    : a_(cw_state_matrix(omega)), gain_(design.gain_matrix()) {}

void LuenbergerObserver::set_state(const Vec3& p, const Vec3& v) {
    xhat_.head<3>() = p;
    xhat_.tail<3>() = v;
}

void LuenbergerObserver::step(const Vec3& y_meas, const Vec3& u, double delta, double dt) {
    // Innovation held constant across the stages; see class comment.
    const Vec3 e = xhat_.head<3>() - y_meas;
    Vec6 c = Vec6::Zero();
    c.tail<3>() = u;
    c -= delta * (gain_ * e);

    const Vec6 k1 = a_ * xhat_ + c;
    const Vec6 k2 = a_ * (xhat_ + 0.5 * dt * k1) + c;
    const Vec6 k3 = a_ * (xhat_ + 0.5 * dt * k2) + c;
    const Vec6 k4 = a_ * (xhat_ + dt * k3) + c;
    xhat_ += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

LevantObserver::LevantObserver(const LevantParams& params, double omega)
    : prm_(params), omega_(omega) {
    prm_.validate();
}

void LevantObserver::set_state(const Vec3& p, const Vec3& v) {
    xi1_ = p;
    xi2_ = v;
    xi3_.setZero();
    xi4_.setZero();
}

void LevantObserver::step(const Vec3& y_meas, const Vec3& u, double delta, double dt) {
    const double kl = delta * prm_.k4 * prm_.lipschitz;
    const double kl14 = std::pow(kl, 0.25);
    const double kl24 = std::sqrt(kl);
    const double kl34 = kl14 * kl24;
    const auto& cf = prm_.coefficients;

    // Correction terms from the innovation at the step start, held constant.
    Vec3 c1, c2, c3, c4;
    for (int i = 0; i < 3; ++i) {
        const double e = xi1_(i) - y_meas(i);
        const double sgn = (e > 0.0) - (e < 0.0);
        const double ae = std::abs(e);
        c1(i) = -cf[0] * kl14 * std::pow(ae, 0.75) * sgn;
        c2(i) = -cf[1] * kl24 * std::sqrt(ae) * sgn;
        c3(i) = -cf[2] * kl34 * std::pow(ae, 0.25) * sgn;
        c4(i) = -cf[3] * kl * sgn;
    }

    struct Ext {
        Vec3 x1, x2, x3, x4;
    };
    const double om = omega_;
    auto deriv = [&](const Ext& s) {
        const Vec3 f(2.0 * om * s.x2.z(), -om * om * s.x1.y(),
                     3.0 * om * om * s.x1.z() - 2.0 * om * s.x2.x());
        return Ext{s.x2 + c1, s.x3 + f + u + c2, s.x4 + c3, c4};
    };
    const Ext s0{xi1_, xi2_, xi3_, xi4_};

    if (prm_.scheme == LevantScheme::Euler) {
        const Ext k1 = deriv(s0);
        xi1_ += dt * k1.x1;
        xi2_ += dt * k1.x2;
        xi3_ += dt * k1.x3;
        xi4_ += dt * k1.x4;
        return;
    }

    auto advance = [](const Ext& s, const Ext& k, double h) {
        return Ext{s.x1 + h * k.x1, s.x2 + h * k.x2, s.x3 + h * k.x3, s.x4 + h * k.x4};
    };
    const Ext k1 = deriv(s0);
    const Ext k2 = deriv(advance(s0, k1, dt / 2.0));
    const Ext k3 = deriv(advance(s0, k2, dt / 2.0));
    const Ext k4 = deriv(advance(s0, k3, dt));
    xi1_ += (dt / 6.0) * (k1.x1 + 2.0 * k2.x1 + 2.0 * k3.x1 + k4.x1);
    xi2_ += (dt / 6.0) * (k1.x2 + 2.0 * k2.x2 + 2.0 * k3.x2 + k4.x2);
    xi3_ += (dt / 6.0) * (k1.x3 + 2.0 * k2.x3 + 2.0 * k3.x3 + k4.x3);
    xi4_ += (dt / 6.0) * (k1.x4 + 2.0 * k2.x4 + 2.0 * k3.x4 + k4.x4);
}

KalmanFilter::KalmanFilter(double omega, double dt, double process_accel_variance,
                           double measurement_variance) {
    if (!(dt > 0.0)) throw ConfigError("kalman: dt must be > 0");
    if (!(measurement_variance > 0.0)) {
        throw ConfigError("kalman: measurement covariance is singular");
    }
    if (!(process_accel_variance >= 0.0)) {
        throw ConfigError("kalman: process variance must be >= 0");
    }

    // Van Loan block exponential gives the exact ZOH pair (Ad, Bd).
    Eigen::Matrix<double, 9, 9> m = Eigen::Matrix<double, 9, 9>::Zero();
    m.topLeftCorner<6, 6>() = cw_state_matrix(omega) * dt;
    m.topRightCorner<6, 3>() = cw_input_matrix() * dt;
    const Eigen::Matrix<double, 9, 9> em = m.exp();
    ad_ = em.topLeftCorner<6, 6>();
    bd_ = em.topRightCorner<6, 3>();

    // Truth injects one constant acceleration draw per step, so the exact
    // discrete process covariance is Bd S Bd^T.
    qd_ = bd_ * (process_accel_variance * Mat3::Identity()) * bd_.transpose();
    rd_ = measurement_variance * Mat3::Identity();
}

void KalmanFilter::set_state(const Vec3& p, const Vec3& v, const Mat6& P0) {
    xhat_.head<3>() = p;
    xhat_.tail<3>() = v;
    P_ = P0;
}

void KalmanFilter::predict(const Vec3& u) {
    xhat_ = ad_ * xhat_ + bd_ * u;
    P_ = ad_ * P_ * ad_.transpose() + qd_;
    P_ = 0.5 * (P_ + P_.transpose()).eval();
}

void KalmanFilter::update(const Vec3& y_meas) {
    const Mat36 h = position_measurement_matrix();
    const Vec3 innov = y_meas - h * xhat_;
    const Mat3 s = h * P_ * h.transpose() + rd_;
    const Mat63 k = (s.ldlt().solve(h * P_).eval()).transpose();
    xhat_ += k * innov;
    const Mat6 ikh = Mat6::Identity() - k * h;
    P_ = ikh * P_ * ikh.transpose() + k * rd_ * k.transpose();
    P_ = 0.5 * (P_ + P_.transpose()).eval();
}

double AdaptiveGain::raw_rate(const Vec3& v_hat, const Vec3& p_hat, double omega) const {
    const Vec3 err = v_hat - linearized_vdes(p_hat, omega);
    return cfg_.G * err.cwiseAbs().maxCoeff() - cfg_.gamma() * delta_;
}

void AdaptiveGain::update(const Vec3& v_hat, const Vec3& p_hat, double omega, double dt) {
    double rate = raw_rate(v_hat, p_hat, omega);
    if (delta_ >= cfg_.delta_max && rate > 0.0) rate = 0.0;
    if (delta_ <= cfg_.delta_min && rate < 0.0) rate = 0.0;
    delta_ = std::clamp(delta_ + dt * rate, cfg_.delta_min, cfg_.delta_max);
}

SpectrumReport eigenvalue_shift_report(const LuenbergerDesign& design,
                                       const std::vector<double>& delta_values, double omega) {
    SpectrumReport report;
    report.deltas = delta_values;
    report.spectra.reserve(delta_values.size());
    for (double d : delta_values) {
        report.spectra.push_back(design.error_spectrum(omega, d));
    }
    return report;
}

}  // namespace crosim
