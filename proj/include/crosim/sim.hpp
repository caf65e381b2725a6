#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crosim/control.hpp"
#include "crosim/dynamics.hpp"
#include "crosim/guidance.hpp"
#include "crosim/observers.hpp"
#include "crosim/types.hpp"

namespace crosim {

enum class ObserverKind { Luenberger, Levant, Kalman };
enum class TuningMode { HighResolution, Reactive, Adaptive };
enum class LoopMode { OpenLoop, ClosedLoop };
enum class TruthStart { OnCro, RadialOffset };

/// A scenario run aborted at runtime (e.g. persistent guidance singularity).
class RunAborted : public std::runtime_error {
public:
    explicit RunAborted(const std::string& what) : std::runtime_error(what) {}
};

struct LuenbergerTuning {
    double hr_scale = 100.0;
    ZetaFormula zeta_formula = ZetaFormula::AsPrinted;
    // When both are set, the base gain set comes from the response specs
    // instead of the reactive spectrum preset.
    std::optional<double> overshoot;
    std::optional<double> rise_time;
};

struct LevantTuning {
    LevantParams params;
    double hr_scale = 1000.0;  // applied to the k4*L product via L
};

struct InitialConditions {
    TruthStart start = TruthStart::OnCro;
    double phase_time = 0.0;          // s, CRO phase the run starts from
    double radial_offset_frac = 0.2;  // RadialOffset: |p0| = (1+frac)*R
    double estimate_pos_offset = 0.0;  // m, added to each estimated position axis
    double estimate_vel_offset = 0.0;  // m/s, added to each estimated velocity axis
    double dispersion_pos_std = 0.0;   // m, optional random truth dispersion
    double dispersion_vel_std = 0.0;   // m/s
};

/// Everything needed to reproduce one run. Optional fields are derived at
/// resolve() time; a resolved config embedded in a manifest replays the run
/// exactly.
struct ScenarioConfig {
    OrbitParams orbit;
    CroParams cro;
    DisturbanceModel disturbance;
    SensorModel sensor;
    bool noise_as_std = false;  // copied onto the noise models at resolve()

    double actuator_tau = 1.0;  // s
    double u_max = 1e-5;        // m/s^2

    // Controller: unset entries are designed from (u_max, W, omega).
    std::optional<double> K;
    std::optional<double> D;
    std::optional<double> E;
    double W = 1e-7;

    GuidanceConfig guidance;

    ObserverKind observer_kind = ObserverKind::Luenberger;
    TuningMode tuning = TuningMode::Reactive;
    LuenbergerTuning luenberger;
    LevantTuning levant;

    double delta_min = 1e-3;
    double delta0 = 1.0;
    std::optional<double> adaptive_G;
    std::optional<double> adaptive_Gamma;      // default D_bar/10
    std::optional<double> adaptive_Delta_cap;  // default 2*G*Gamma

    InitialConditions initial;

    LoopMode mode = LoopMode::OpenLoop;
    double dt = 0.1;                   // s
    std::optional<double> duration;    // s, default two orbital periods
    std::uint64_t seed = 1;

    double tail_fraction = 0.2;
    std::optional<double> convergence_threshold;  // m, default 5 * sensor std
    double convergence_hold_s = 60.0;
    int singularity_abort_steps = 100;

    /// Fills every optional field and the noise-interpretation flags.
    ScenarioConfig resolved() const;

    /// Full validation; requires a resolved config for the gain checks.
    void validate() const;

    ControllerConfig controller_config() const;
    AdaptiveConfig adaptive_config() const;
    std::size_t step_count() const;  // floor(duration/dt), records = count+1
};

struct TelemetryRecord {
    double t = 0.0;
    RelativeState truth;
    Vec3 y_meas = Vec3::Zero();
    Vec3 p_hat = Vec3::Zero();
    Vec3 v_hat = Vec3::Zero();
    std::optional<Vec3> w_d_hat;  // Levant only
    double delta = 1.0;
    Vec3 u_cmd = Vec3::Zero();
    Vec3 u_applied = Vec3::Zero();
    Vec3 v_des = Vec3::Zero();
    double E_t = 0.0;
    double radius_err = 0.0;
    double V = 0.0;
};

struct RunMetrics {
    double E_max = 0.0;        // m/s, sup of the estimation factor
    double E_tail = 0.0;       // m/s, mean estimation factor over the tail window
    double pos_rmse = 0.0;     // m
    double vel_rmse = 0.0;     // m/s
    double radius_err_final = 0.0;  // m, tail mean of | ||p|| - R |
    long switching_count = 0;       // per-axis sign changes of u_cmd
    double total_variation_u = 0.0; // m/s^2, sum of per-axis |du_cmd|
    std::optional<double> convergence_time;  // s
};

/// ||ee_v - vdes_lin(ee_p)||_inf, the coupling of estimation error into the
/// velocity-tracking analysis.
double estimation_factor(const Vec3& ee_v, const Vec3& ee_p, double omega);

/// Total per-axis sign changes over a command series; zero carries no sign.
long switching_count(std::span<const Vec3> u_series);

using TelemetrySink = std::function<void(const TelemetryRecord&)>;

/// Executes the full loop (measure -> estimate -> adapt -> guide -> control
/// -> actuate -> integrate) and streams one record per step.
RunMetrics run_scenario(const ScenarioConfig& cfg, const TelemetrySink& sink);

struct RunResult {
    std::vector<TelemetryRecord> telemetry;
    RunMetrics metrics;
};

RunResult run_scenario(const ScenarioConfig& cfg);

struct NamedScenario {
    std::string name;
    ScenarioConfig config;
};

struct ComparisonRow {
    std::string name;
    RunMetrics metrics;
};

/// Runs every member scenario (all must share dt and duration) and returns
/// the aligned metric table. `jobs` > 1 runs members concurrently; runs share
/// nothing but their immutable configs.
std::vector<ComparisonRow> compare_runs(const std::vector<NamedScenario>& scenarios,
                                        int jobs = 1);

}  // namespace crosim
