#ifndef PENDSIM_PLANNER_HPP
#define PENDSIM_PLANNER_HPP

#include <vector>

#include "pendsim/arm.hpp"
#include "pendsim/ekf.hpp"
#include "pendsim/geometry.hpp"
#include "pendsim/hopf.hpp"
#include "pendsim/pendulum.hpp"

namespace pendsim::planner {

/// Gates that must all hold before the timed motion is started.
struct InterceptConfig {
    double t_move = 1.5;                 // commanded movement duration, s
    double catch_radius = 0.05;          // success tolerance, m
    double max_ball_speed_at_catch = 0.8;  // m/s at arrival
    double covariance_gate = 1e-3;       // max trace(P) to allow triggering

    void validate() const;
};

/// Ball state and interception point forecast t_move ahead.
struct InterceptProposal {
    CartesianPose point;
    pendulum::PendulumState predicted;  // (phi, phi_dot) at arrival
};

/// Individual gate outcomes; the condition is their conjunction.
struct GateReport {
    bool reachable = false;
    bool converged = false;
    bool catchable = false;
    bool plan_valid = false;

    bool all() const { return reachable && converged && catchable && plan_valid; }
};

/// Everything the per-tick decision needs besides the estimate.
struct InterceptContext {
    pendulum::PendulumParams pend;
    ekf::NoiseConfig noise;
    InterceptConfig cfg;
    arm::ArmGeometry geom;
    hopf::HopfParams hopf_base;
    CartesianPose home_ee;  // where the motion would start
    double dt = 0.01;       // control tick, s
};

/// Forecast the pendulum ceil(t_move / T) filter ticks ahead and take the
/// ball position of the terminal state as the interception point.
InterceptProposal propose_intercept(const ekf::StateEstimate& est, const InterceptContext& ctx);

/// Evaluate all four gates for a proposal. Never throws; infeasibility shows
/// up as a false gate.
GateReport check_condition(const InterceptProposal& prop, const ekf::StateEstimate& est,
                           const InterceptContext& ctx);

/// Closed-ball success test at motion completion.
bool judge_catch(const CartesianPose& ee_pose, const CartesianPose& ball_pose,
                 const InterceptConfig& cfg);

}  // namespace pendsim::planner

#endif
