#include "pendsim/pendulum.hpp"

#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::pendulum {

void PendulumParams::validate() const {
    if (!(g > 0.0)) throw ConfigError("pendulum.g must be > 0");
    if (!(l > 0.0)) throw ConfigError("pendulum.l must be > 0");
    if (!(alpha >= 0.0)) throw ConfigError("pendulum.alpha must be >= 0");
    if (!(pivot_height >= l)) throw ConfigError("pendulum.pivot_height must be >= l");
    if (!std::isfinite(swing_y)) throw ConfigError("pendulum.swing_y must be finite");
}

void SensorModel::validate() const {
    if (!(sigma_v >= 0.0)) throw ConfigError("sensor.sigma_v must be >= 0");
    if (!(dropout_prob >= 0.0 && dropout_prob < 1.0))
        throw ConfigError("sensor.dropout_prob must be in [0, 1)");
}

Derivative derivative(const PendulumState& state, const PendulumParams& params) {
    return {state.phi_dot,
            -(params.g / params.l) * std::sin(state.phi) - params.alpha * state.phi_dot};
}

PendulumState step_truth(const PendulumState& state, const PendulumParams& params, double dt) {
    auto eval = [&](const PendulumState& s) { return derivative(s, params); };

    Derivative k1 = eval(state);
    Derivative k2 = eval({state.phi + 0.5 * dt * k1.dphi, state.phi_dot + 0.5 * dt * k1.dphi_dot});
    Derivative k3 = eval({state.phi + 0.5 * dt * k2.dphi, state.phi_dot + 0.5 * dt * k2.dphi_dot});
    Derivative k4 = eval({state.phi + dt * k3.dphi, state.phi_dot + dt * k3.dphi_dot});

    PendulumState out;
    out.phi = state.phi + dt / 6.0 * (k1.dphi + 2.0 * k2.dphi + 2.0 * k3.dphi + k4.dphi);
    out.phi_dot =
        state.phi_dot + dt / 6.0 * (k1.dphi_dot + 2.0 * k2.dphi_dot + 2.0 * k3.dphi_dot + k4.dphi_dot);
    return out;
}

CartesianPose ball_position(const PendulumState& state, const PendulumParams& params) {
    return {params.l * std::sin(state.phi), params.swing_y,
            params.pivot_height - params.l * std::cos(state.phi)};
}

std::optional<double> measure(const PendulumState& state, const PendulumParams& params,
                              const SensorModel& sensor, Pcg32& dropout_rng,
                              Pcg32& noise_rng, Gaussian& gauss) {
    if (dropout_rng.next_double() < sensor.dropout_prob) return std::nullopt;
    double v = sensor.sigma_v > 0.0 ? sensor.sigma_v * gauss.sample(noise_rng) : 0.0;
    return params.l * std::sin(state.phi) + v;
}

double energy(const PendulumState& state, const PendulumParams& params) {
    return 0.5 * params.l * params.l * state.phi_dot * state.phi_dot +
           params.g * params.l * (1.0 - std::cos(state.phi));
}

}  // namespace pendsim::pendulum
