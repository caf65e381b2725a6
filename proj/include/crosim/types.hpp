#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crosim {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat63 = Eigen::Matrix<double, 6, 3>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

/// Invalid configuration or validation failure; carries a human-readable reason.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The guidance field is undefined on the trajectory-frame vertical axis (r -> 0).
class GuidanceSingularity : public std::runtime_error {
public:
    explicit GuidanceSingularity(const std::string& what) : std::runtime_error(what) {}
};

inline bool all_finite(const Vec3& v) {
    return std::isfinite(v.x()) && std::isfinite(v.y()) && std::isfinite(v.z());
}

/// Component-wise clamp to [-bound, bound].
inline Vec3 clamp_per_axis(const Vec3& v, double bound) {
    return v.cwiseMax(-bound).cwiseMin(bound);
}

/// Relative position/velocity of the chaser w.r.t. the target, LVLH frame
/// (x along-track, y cross-track, z nadir).
struct RelativeState {
    Vec3 p = Vec3::Zero();  // m
    Vec3 v = Vec3::Zero();  // m/s

    bool finite() const { return all_finite(p) && all_finite(v); }
};

/// Target circular orbit. The angular rate is always derived, never stored.
struct OrbitParams {
    double mu = 3.986004418e14;  // m^3/s^2
    double r_o = 6878137.0;      // m (500 km altitude LEO)

    double omega() const { return std::sqrt(mu / (r_o * r_o * r_o)); }  // rad/s
    double period() const { return 2.0 * M_PI / omega(); }              // s

    void validate() const {
        if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("orbit.mu must be positive and finite");
        if (!(r_o > 0.0) || !std::isfinite(r_o)) throw ConfigError("orbit.r_o must be positive and finite");
    }
};

/// Circular relative orbit parameters plus the vertical gain of the guidance field.
struct CroParams {
    double radius = 100.0;  // m, R > 0
    double phase = 0.0;     // rad, phi >= 0
    double lambda = 1.0;    // dimensionless, > 0

    void validate() const {
        if (!(radius > 0.0)) throw ConfigError("cro.radius must be > 0");
        if (!(phase >= 0.0)) throw ConfigError("cro.phase must be >= 0");
        if (!(lambda > 0.0)) throw ConfigError("cro.lambda must be > 0");
    }
};

}  // namespace crosim
