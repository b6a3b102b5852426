#include "pendsim/hopf.hpp"

#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::hopf {

void HopfParams::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("hopf.lambda must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("hopf.gamma must be > 0");
    if (!(omega > 0.0)) throw ConfigError("hopf.omega must be > 0");
    if (!(tau > 0.0)) throw ConfigError("hopf.tau must be > 0");
    if (!(c1 > 0.0)) throw ConfigError("hopf.c1 must be > 0");
    if (!(c2 > 0.0)) throw ConfigError("hopf.c2 must be > 0");
    if (!std::isfinite(alpha_tc)) throw ConfigError("hopf.alpha_tc must be finite");
}

RegimeNeurons to_neurons(Regime r) {
    switch (r) {
        case Regime::Init: return {1.0, 0.0, 0.0};
        case Regime::Hopf: return {0.0, 1.0, 0.0};
        case Regime::Final: return {0.0, 0.0, 1.0};
    }
    return {1.0, 0.0, 0.0};
}

double radius(const HopfParams& p) {
    return std::sqrt(p.lambda / p.gamma);
}

SpeedDerivative hopf_derivative(const SpeedState& s, const HopfParams& p) {
    const double r_h = radius(p);
    const double ab = s.a - r_h;
    const double bb = s.b;
    const double r2 = ab * ab + bb * bb;
    return {p.lambda * ab - p.omega * bb - p.gamma * r2 * ab,
            p.omega * ab + p.lambda * bb - p.gamma * r2 * bb};
}

SpeedDerivative speed_dynamics_derivative(const SpeedState& s, const RegimeNeurons& n,
                                          const HopfParams& p) {
    SpeedDerivative d;
    const double wi = n.u_init * n.u_init;
    const double wh = n.u_hopf * n.u_hopf;
    const double wf = n.u_final * n.u_final;
    if (wi != 0.0) {
        d.da -= p.c1 * wi * s.a;
        d.db -= p.c1 * wi * s.b;
    }
    if (wh != 0.0) {
        const SpeedDerivative h = hopf_derivative(s, p);
        d.da += wh * h.da;
        d.db += wh * h.db;
    }
    if (wf != 0.0) {
        d.da -= p.c2 * wf * (s.a * s.a - s.a * p.alpha_tc);
        d.db -= p.c2 * wf * s.b;
    }
    d.da /= p.tau;
    d.db /= p.tau;
    return d;
}

SpeedState step_speed(const SpeedState& s, const RegimeNeurons& n, const HopfParams& p, double dt) {
    auto eval = [&](const SpeedState& x) { return speed_dynamics_derivative(x, n, p); };

    SpeedDerivative k1 = eval(s);
    SpeedDerivative k2 = eval({s.a + 0.5 * dt * k1.da, s.b + 0.5 * dt * k1.db});
    SpeedDerivative k3 = eval({s.a + 0.5 * dt * k2.da, s.b + 0.5 * dt * k2.db});
    SpeedDerivative k4 = eval({s.a + dt * k3.da, s.b + dt * k3.db});

    return {s.a + dt / 6.0 * (k1.da + 2.0 * k2.da + 2.0 * k3.da + k4.da),
            s.b + dt / 6.0 * (k1.db + 2.0 * k2.db + 2.0 * k3.db + k4.db)};
}

double arc_length(double t, double r_h, double omega) {
    return r_h * (t - std::sin(omega * t) / omega);
}

HopfParams fit_isochrone(double distance, double t_move, const HopfParams& base) {
    if (!(distance > 0.0)) throw ConfigError("fit_isochrone: distance must be > 0");
    if (!(t_move > 0.0)) throw ConfigError("fit_isochrone: t_move must be > 0");
    HopfParams p = base;
    p.omega = 2.0 * M_PI / t_move;
    const double r_h = distance / t_move;  // s(t_move) = R_h * t_move exactly
    p.lambda = p.gamma * r_h * r_h;
    return p;
}

Regime regime_transition(Regime r, bool triggered, double elapsed, double t_move) {
    switch (r) {
        case Regime::Init: return triggered ? Regime::Hopf : Regime::Init;
        case Regime::Hopf: return elapsed >= t_move ? Regime::Final : Regime::Hopf;
        case Regime::Final: return Regime::Final;
    }
    return r;
}

}  // namespace pendsim::hopf
