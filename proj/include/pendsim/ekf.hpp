#ifndef PENDSIM_EKF_HPP
#define PENDSIM_EKF_HPP

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "pendsim/pendulum.hpp"

namespace pendsim::ekf {

using pendulum::PendulumParams;

/// Filter sample time and noise intensities.
struct NoiseConfig {
    double sigma_q = 0.05;  // process-noise std on angular velocity, rad/s
    double r_meas = 1e-4;   // measurement variance, m^2
    double T = 0.01;        // filter sample time, s

    void validate() const;
};

/// Mean and covariance of the (phi, phi_dot) estimate.
struct StateEstimate {
    Eigen::Vector2d x_hat = Eigen::Vector2d::Zero();
    Eigen::Matrix2d P = Eigen::Matrix2d::Zero();
};

/// Per-tick diagnostics surfaced to the harness trace.
struct FilterStep {
    Eigen::Vector2d gain = Eigen::Vector2d::Zero();
    double residual = 0.0;  // innovation, m
    bool measurement_used = false;
};

/// Second-order Taylor discretization of the pendulum dynamics. Deterministic;
/// process noise lives entirely in Q.
Eigen::Vector2d f_discrete(const Eigen::Vector2d& x, const PendulumParams& params, double T);

/// Analytic Jacobian of f_discrete with respect to the state.
Eigen::Matrix2d jacobian_A(const Eigen::Vector2d& x, const PendulumParams& params, double T);

/// Analytic Jacobian of the measurement z = l sin(phi): [l cos(phi), 0].
Eigen::RowVector2d jacobian_C(const Eigen::Vector2d& x, const PendulumParams& params);

/// Noise input vector (T^2/2, T): a velocity disturbance acts on the angle
/// through s = a t^2 / 2.
Eigen::Vector2d build_Gd(double T);

/// Process noise Q = Gd Gd' sigma_q^2 (rank one, PSD).
Eigen::Matrix2d build_Q(double T, double sigma_q);

/// Time update: mean through f_discrete, covariance through A P A' + Q,
/// result symmetrized.
StateEstimate predict(const StateEstimate& est, const PendulumParams& params,
                      const NoiseConfig& noise);

/// Measurement update with the nonlinear measurement prediction l sin(phi).
/// Throws SingularInnovationError when C P C' + R is not positive.
std::pair<StateEstimate, FilterStep> correct(const StateEstimate& est, double z,
                                             const PendulumParams& params,
                                             const NoiseConfig& noise);

/// One filter tick: predict, then correct iff a measurement arrived.
std::pair<StateEstimate, FilterStep> update(const StateEstimate& est, std::optional<double> z,
                                            const PendulumParams& params,
                                            const NoiseConfig& noise);

/// Mean forecast: n iterated applications of f_discrete from the current
/// estimate. Element k is the state after k+1 steps.
std::vector<Eigen::Vector2d> forecast(const StateEstimate& est, const PendulumParams& params,
                                      const NoiseConfig& noise, int n);

/// Bootstrap estimate from the first measurement:
/// x0 = (asin(clamp(z/l)), 0), P0 = diag(0.1, 1.0).
StateEstimate initial_estimate(double z0, const PendulumParams& params);

}  // namespace pendsim::ekf

#endif
