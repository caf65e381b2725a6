#include "crosim/guidance.hpp"

namespace crosim {

GuidanceOutput lgvf_velocity(const Vec3& p_star, double omega, const CroParams& cro,
                             DeltaVariant variant, double eps) {
    const double x = p_star.x();
    const double y = p_star.y();
    const double z = p_star.z();
    const double R = cro.radius;

    const double r = std::hypot(x, y);
    if (r < eps) {
        throw GuidanceSingularity("LGVF undefined on the trajectory-frame vertical axis (r = " +
                                  std::to_string(r) + " m)");
    }

    const double z4 = z * z * z * z;
    const double planar = (r * r + R * R) * (r * r + R * R);
    const double vertical = (variant == DeltaVariant::LambdaZ4) ? cro.lambda * z4
                                                                : cro.lambda * cro.lambda * z4;
    const double delta = omega * R / (r * std::sqrt(planar + vertical));

    GuidanceOutput out;
    out.r_cyl = r;
    out.delta_g = delta;
    out.v_star.x() = delta * (-x * (r * r - R * R) + 2.0 * y * r * R);
    out.v_star.y() = delta * (-y * (r * r - R * R) - 2.0 * x * r * R);
    out.v_star.z() = delta * (-cro.lambda * z * r);
    return out;
}

GuidanceOutput LgvfGuidance::velocity_at(const Vec3& p_lvlh) const {
    GuidanceOutput out = lgvf_velocity(frame_.to_trajectory(p_lvlh), omega_, cro_,
                                       cfg_.delta_variant, cfg_.singularity_epsilon);
    out.v_des = frame_.to_lvlh(out.v_star);
    return out;
}

Vec3 linearized_vdes(const Vec3& p_lvlh, double omega) {
    return Vec3(2.0 * omega * p_lvlh.z(),
                -std::sqrt(3.0) / 2.0 * omega * p_lvlh.x(),
                -0.5 * omega * p_lvlh.x());
}

}  // namespace crosim
