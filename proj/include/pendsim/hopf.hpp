#ifndef PENDSIM_HOPF_HPP
#define PENDSIM_HOPF_HPP

namespace pendsim::hopf {

/// Limit-cycle and regime parameters of the speed dynamics.
///
/// The oscillator runs in the (a, b) plane, shifted along the a axis by the
/// cycle radius R_h = sqrt(lambda/gamma), so the speed variable a sweeps
/// sinusoidally from 0 up to 2 R_h and back within one cycle of period
/// 2 pi / omega.
struct HopfParams {
    double lambda = 0.49;  // radial gain, 1/s
    double gamma = 2.25;   // cubic saturation, s/m^2
    double omega = 4.18879020478639098;  // angular frequency, rad/s
    double tau = 1.0;      // time constant of the speed dynamics, s
    double c1 = 5.0;       // init-regime contraction
    double c2 = 5.0;       // final-regime contraction
    double alpha_tc = 0.0; // final-regime offset, m/s

    void validate() const;
};

/// Speed variable a (m/s) and auxiliary phase variable b.
struct SpeedState {
    double a = 0.0;
    double b = 0.0;
};

/// Movement phases of the speed dynamics; realized as a discrete FSM since
/// exactly one of the three neurons is active at any time.
enum class Regime { Init, Hopf, Final };

struct RegimeNeurons {
    double u_init = 1.0;
    double u_hopf = 0.0;
    double u_final = 0.0;
};

RegimeNeurons to_neurons(Regime r);

struct SpeedDerivative {
    double da = 0.0;
    double db = 0.0;
};

/// Cycle radius R_h = sqrt(lambda/gamma).
double radius(const HopfParams& p);

/// Hopf normal form around the shifted center (R_h, 0):
/// with (ab, bb) = (a - R_h, b),
///   da = lambda*ab - omega*bb - gamma*(ab^2 + bb^2)*ab
///   db = omega*ab + lambda*bb - gamma*(ab^2 + bb^2)*bb
SpeedDerivative hopf_derivative(const SpeedState& s, const HopfParams& p);

/// Full speed dynamics: tau*(da, db) picks exactly one regime term,
///   -c1 u_init^2 (a, b)  |  u_hopf^2 f_hopf  |  -c2 u_final^2 (a^2 - a alpha_tc, b)
SpeedDerivative speed_dynamics_derivative(const SpeedState& s, const RegimeNeurons& n,
                                          const HopfParams& p);

/// One RK4 step of the speed dynamics. The neuron values are the ones fixed
/// at tick start; regime switches never happen mid-step.
SpeedState step_speed(const SpeedState& s, const RegimeNeurons& n, const HopfParams& p, double dt);

/// Closed-form distance traveled under the profile v(t) = R_h (1 - cos(omega t)):
/// s(t) = R_h (t - sin(omega t)/omega).
double arc_length(double t, double r_h, double omega);

/// Fit the cycle so one full oscillation covers `distance` in exactly
/// `t_move` seconds: omega = 2 pi / t_move, R_h = distance / t_move,
/// lambda = gamma R_h^2. Regime parameters come from `base`.
/// Throws ConfigError for non-positive distance or duration.
HopfParams fit_isochrone(double distance, double t_move, const HopfParams& base);

/// Regime FSM: Init -> Hopf on trigger; Hopf -> Final once elapsed >= t_move
/// (one full cycle done); Final is absorbing.
Regime regime_transition(Regime r, bool triggered, double elapsed, double t_move);

}  // namespace pendsim::hopf

#endif
