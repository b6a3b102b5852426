#ifndef PENDSIM_CONFIG_HPP
#define PENDSIM_CONFIG_HPP

#include <cstdint>
#include <string>

#include "pendsim/arm.hpp"
#include "pendsim/ekf.hpp"
#include "pendsim/hopf.hpp"
#include "pendsim/pendulum.hpp"
#include "pendsim/planner.hpp"

namespace pendsim::harness {

/// Full run configuration. Loaded from a JSON file; unknown keys are
/// rejected so typos surface immediately, missing keys fall back to the
/// documented defaults.
struct ExperimentConfig {
    std::uint64_t seed = 42;
    double tick = 0.01;           // s; must stay within [0.001, 0.015]
    double duration_max = 20.0;   // s; NeverTriggered past this point
    int latency_jitter_ticks = 0; // optional uniform trigger latency

    pendulum::PendulumParams pend;
    pendulum::PendulumState initial{0.50, 0.0};
    pendulum::SensorModel sensor;
    ekf::NoiseConfig noise;       // noise.T mirrors tick
    hopf::HopfParams hopf_base;   // lambda/omega are refit per motion
    planner::InterceptConfig intercept;
    arm::ArmGeometry geom;
    arm::JointAngles home;

    /// Throws ConfigError on any invalid field.
    void validate() const;
};

/// Defaults above plus a home pose placed 0.70 m from the ball's release
/// apex, mirroring the reference scenario.
ExperimentConfig default_config();

/// Strict JSON parse; throws ConfigError on bad values or unknown keys.
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a config file; throws IoError if unreadable.
ExperimentConfig load_config(const std::string& path);

/// Serializes every field, defaults included.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace pendsim::harness

#endif
