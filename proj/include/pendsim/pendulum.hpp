#ifndef PENDSIM_PENDULUM_HPP
#define PENDSIM_PENDULUM_HPP

#include <optional>

#include "pendsim/geometry.hpp"
#include "pendsim/rng.hpp"

namespace pendsim::pendulum {

/// Physical constants of the damped pendulum. The pivot sits at
/// (0, swing_y, pivot_height) in the arm-base frame and the ball swings in
/// the arm's x-z plane.
struct PendulumParams {
    double g = 9.81;           // m/s^2
    double l = 1.93;           // string length, m
    double alpha = 0.1;        // viscous damping, 1/s
    double pivot_height = 2.034; // pivot z above the arm base plane, m
    double swing_y = 0.0;      // swing-plane y offset, m

    /// Throws ConfigError when a value is out of range
    /// (g, l > 0; alpha >= 0; pivot_height >= l).
    void validate() const;
};

/// Angle from vertical and angular velocity.
struct PendulumState {
    double phi = 0.0;      // rad
    double phi_dot = 0.0;  // rad/s
};

/// Synthetic lateral-position sensor standing in for the camera: additive
/// Gaussian noise plus a per-tick chance of yielding no measurement at all.
struct SensorModel {
    double sigma_v = 0.01;      // measurement noise std, m
    double dropout_prob = 0.02; // probability of a missing frame

    void validate() const;
};

struct Derivative {
    double dphi = 0.0;      // rad/s
    double dphi_dot = 0.0;  // rad/s^2
};

/// phi_ddot = -(g/l) sin(phi) - alpha * phi_dot
Derivative derivative(const PendulumState& state, const PendulumParams& params);

/// One classical RK4 step of the truth dynamics. Deliberately higher order
/// than the filter's discrete model so the two stay independent.
PendulumState step_truth(const PendulumState& state, const PendulumParams& params, double dt);

/// Ball position in the arm-base frame:
/// (l sin(phi), swing_y, pivot_height - l cos(phi)).
CartesianPose ball_position(const PendulumState& state, const PendulumParams& params);

/// Noisy lateral position l sin(phi) + v, v ~ N(0, sigma_v^2), or nullopt on
/// a dropped frame. Consumes one dropout draw per call and one noise draw
/// per delivered measurement.
std::optional<double> measure(const PendulumState& state, const PendulumParams& params,
                              const SensorModel& sensor, Pcg32& dropout_rng,
                              Pcg32& noise_rng, Gaussian& gauss);

/// Mechanical energy 0.5 l^2 phidot^2 + g l (1 - cos phi); dissipates under
/// damping, conserved without.
double energy(const PendulumState& state, const PendulumParams& params);

}  // namespace pendsim::pendulum

#endif
