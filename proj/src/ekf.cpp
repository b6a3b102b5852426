#include "pendsim/ekf.hpp"

#include <algorithm>
#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::ekf {

void NoiseConfig::validate() const {
    if (!(sigma_q >= 0.0)) throw ConfigError("noise.sigma_q must be >= 0");
    if (!(r_meas > 0.0)) throw ConfigError("noise.r_meas must be > 0");
    if (!(T > 0.0)) throw ConfigError("noise.T must be > 0");
}

Eigen::Vector2d f_discrete(const Eigen::Vector2d& x, const PendulumParams& params, double T) {
    const double accel = -params.alpha * x(1) - (params.g / params.l) * std::sin(x(0));
    return {x(0) + T * x(1) + 0.5 * T * T * accel, x(1) + T * accel};
}

Eigen::Matrix2d jacobian_A(const Eigen::Vector2d& x, const PendulumParams& params, double T) {
    const double c = std::cos(x(0));
    const double gl = params.g / params.l;
    Eigen::Matrix2d A;
    A << 1.0 - 0.5 * T * T * gl * c, T - 0.5 * T * T * params.alpha,
        -T * gl * c, 1.0 - params.alpha * T;
    return A;
}

Eigen::RowVector2d jacobian_C(const Eigen::Vector2d& x, const PendulumParams& params) {
    return {params.l * std::cos(x(0)), 0.0};
}

Eigen::Vector2d build_Gd(double T) {
    return {0.5 * T * T, T};
}

Eigen::Matrix2d build_Q(double T, double sigma_q) {
    const Eigen::Vector2d gd = build_Gd(T);
    return gd * gd.transpose() * (sigma_q * sigma_q);
}

namespace {

Eigen::Matrix2d symmetrized(const Eigen::Matrix2d& m) {
    return 0.5 * (m + m.transpose());
}

}  // namespace

StateEstimate predict(const StateEstimate& est, const PendulumParams& params,
                      const NoiseConfig& noise) {
    const Eigen::Matrix2d A = jacobian_A(est.x_hat, params, noise.T);
    StateEstimate out;
    out.x_hat = f_discrete(est.x_hat, params, noise.T);
    out.P = symmetrized(A * est.P * A.transpose() + build_Q(noise.T, noise.sigma_q));
    return out;
}

std::pair<StateEstimate, FilterStep> correct(const StateEstimate& est, double z,
                                             const PendulumParams& params,
                                             const NoiseConfig& noise) {
    const Eigen::RowVector2d C = jacobian_C(est.x_hat, params);
    const double s = (C * est.P * C.transpose())(0) + noise.r_meas;
    if (!(s > 0.0))
        throw SingularInnovationError("innovation covariance is not positive; check r_meas");

    const Eigen::Vector2d K = est.P * C.transpose() / s;
    const double residual = z - params.l * std::sin(est.x_hat(0));

    StateEstimate out;
    out.x_hat = est.x_hat + K * residual;
    out.P = symmetrized((Eigen::Matrix2d::Identity() - K * C) * est.P);

    FilterStep step;
    step.gain = K;
    step.residual = residual;
    step.measurement_used = true;
    return {out, step};
}

std::pair<StateEstimate, FilterStep> update(const StateEstimate& est, std::optional<double> z,
                                            const PendulumParams& params,
                                            const NoiseConfig& noise) {
    StateEstimate predicted = predict(est, params, noise);
    if (!z) return {predicted, FilterStep{}};
    return correct(predicted, *z, params, noise);
}

std::vector<Eigen::Vector2d> forecast(const StateEstimate& est, const PendulumParams& params,
                                      const NoiseConfig& noise, int n) {
    std::vector<Eigen::Vector2d> out;
    out.reserve(static_cast<std::size_t>(std::max(n, 0)));
    Eigen::Vector2d x = est.x_hat;
    for (int k = 0; k < n; ++k) {
        x = f_discrete(x, params, noise.T);
        out.push_back(x);
    }
    return out;
}

StateEstimate initial_estimate(double z0, const PendulumParams& params) {
    StateEstimate est;
    const double ratio = std::clamp(z0 / params.l, -1.0, 1.0);
    est.x_hat = {std::asin(ratio), 0.0};
    est.P = Eigen::Vector2d(0.1, 1.0).asDiagonal();
    return est;
}

}  // namespace pendsim::ekf
