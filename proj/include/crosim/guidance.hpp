#pragma once

#include "crosim/types.hpp"

namespace crosim {

/// Which quartic vertical term the field normalization uses; see
/// GuidanceConfig::delta_variant.
enum class DeltaVariant {
    LambdaZ4,    // sqrt((r^2+R^2)^2 + lambda * z*^4)
    LambdaSqZ4,  // sqrt((r^2+R^2)^2 + lambda^2 * z*^4)
};

/// Rotation between the LVLH frame and the trajectory frame in which the
/// target circle is planar.
struct FrameRotation {
    Mat3 Q = Mat3::Identity();

    static FrameRotation about_x(double angle) {
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        FrameRotation f;
        f.Q << 1, 0, 0,
               0, c, -s,
               0, s, c;
        return f;
    }

    Vec3 to_trajectory(const Vec3& p_lvlh) const { return Q.transpose() * p_lvlh; }
    Vec3 to_lvlh(const Vec3& v_star) const { return Q * v_star; }
};

/// The CRO plane (y = sqrt(3) z) is inclined pi/6 about the x-axis, so that
/// angle flattens it exactly onto z* = 0; kept configurable for sensitivity
/// studies with other angles.
inline constexpr double kCroPlaneRotation = M_PI / 6.0;

struct GuidanceConfig {
    double rotation_angle = kCroPlaneRotation;           // rad, about x
    DeltaVariant delta_variant = DeltaVariant::LambdaZ4;
    double singularity_epsilon = 1e-6;                   // m, guard on r

    void validate() const {
        if (!std::isfinite(rotation_angle)) throw ConfigError("guidance.rotation_angle must be finite");
        if (!(singularity_epsilon > 0.0)) throw ConfigError("guidance.singularity_epsilon must be > 0");
    }
};

struct GuidanceOutput {
    Vec3 v_des = Vec3::Zero();   // m/s, LVLH frame
    Vec3 v_star = Vec3::Zero();  // m/s, trajectory frame
    double r_cyl = 0.0;          // m, planar radius in the trajectory frame
    double delta_g = 0.0;        // field normalization factor
};

/// Velocity field whose integral curves converge to the circle of radius R
/// in the trajectory frame and circulate it at speed omega*R.
class LgvfGuidance {
public:
    LgvfGuidance(const CroParams& cro, double omega, const GuidanceConfig& cfg = {})
        : cro_(cro), omega_(omega), cfg_(cfg), frame_(FrameRotation::about_x(cfg.rotation_angle)) {
        cro_.validate();
        cfg_.validate();
    }

    /// Desired velocity at an LVLH position. Throws GuidanceSingularity when
    /// the point lies on the trajectory-frame vertical axis (r < epsilon).
    GuidanceOutput velocity_at(const Vec3& p_lvlh) const;

    Vec3 to_trajectory_frame(const Vec3& p_lvlh) const { return frame_.to_trajectory(p_lvlh); }

    const FrameRotation& frame() const { return frame_; }
    const CroParams& cro() const { return cro_; }
    double omega() const { return omega_; }

private:
    CroParams cro_;
    double omega_;
    GuidanceConfig cfg_;
    FrameRotation frame_;
};

/// Raw field evaluation at a trajectory-frame point; v_des is left unset
/// (frame rotation is the caller's concern). Throws GuidanceSingularity
/// when r < eps.
GuidanceOutput lgvf_velocity(const Vec3& p_star, double omega, const CroParams& cro,
                             DeltaVariant variant = DeltaVariant::LambdaZ4, double eps = 1e-6);

/// Desired velocity linearized about the CRO (valid for r ~ R, y ~ sqrt(3) z):
/// [2 omega z, -sqrt(3)/2 omega x, -1/2 omega x].
Vec3 linearized_vdes(const Vec3& p_lvlh, double omega);

}  // namespace crosim
