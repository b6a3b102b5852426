#include "pendsim/planner.hpp"

#include <cmath>

#include "pendsim/errors.hpp"

namespace pendsim::planner {

void InterceptConfig::validate() const {
    if (!(t_move > 0.0)) throw ConfigError("intercept.t_move must be > 0");
    if (!(catch_radius > 0.0)) throw ConfigError("intercept.catch_radius must be > 0");
    if (!(max_ball_speed_at_catch > 0.0))
        throw ConfigError("intercept.max_ball_speed_at_catch must be > 0");
    if (!(covariance_gate > 0.0)) throw ConfigError("intercept.covariance_gate must be > 0");
}

InterceptProposal propose_intercept(const ekf::StateEstimate& est, const InterceptContext& ctx) {
    const int horizon = static_cast<int>(std::ceil(ctx.cfg.t_move / ctx.noise.T - 1e-9));
    const auto states = ekf::forecast(est, ctx.pend, ctx.noise, horizon);
    const Eigen::Vector2d terminal = states.empty() ? est.x_hat : states.back();

    InterceptProposal prop;
    prop.predicted = {terminal(0), terminal(1)};
    prop.point = pendulum::ball_position(prop.predicted, ctx.pend);
    return prop;
}

GateReport check_condition(const InterceptProposal& prop, const ekf::StateEstimate& est,
                           const InterceptContext& ctx) {
    GateReport g;
    g.reachable = arm::reachable(prop.point, ctx.geom);
    g.converged = est.P.trace() < ctx.cfg.covariance_gate;
    g.catchable =
        std::abs(ctx.pend.l * prop.predicted.phi_dot) <= ctx.cfg.max_ball_speed_at_catch;
    if (g.reachable && g.converged && g.catchable) {
        try {
            (void)arm::plan_trajectory(ctx.home_ee, prop.point, ctx.cfg.t_move, ctx.dt,
                                       ctx.hopf_base, ctx.geom);
            g.plan_valid = true;
        } catch (const Error&) {
            g.plan_valid = false;
        }
    }
    return g;
}

bool judge_catch(const CartesianPose& ee_pose, const CartesianPose& ball_pose,
                 const InterceptConfig& cfg) {
    return distance(ee_pose, ball_pose) <= cfg.catch_radius;
}

}  // namespace pendsim::planner
