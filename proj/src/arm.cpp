#include "pendsim/arm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pendsim/errors.hpp"

namespace pendsim::arm {

namespace {

constexpr double kReachMargin = 1e-6;     // keeps IK off the stretch singularity
constexpr double kBoundaryTol = 1e-12;    // exact full-extension is admitted

void check_limit(double value, const JointLimit& lim, const char* name) {
    if (value < lim.min || value > lim.max)
        throw JointLimitError(std::string("joint ") + name + " out of limits: " +
                              std::to_string(value));
}

}  // namespace

void ArmGeometry::validate() const {
    if (!(base_height >= 0.0)) throw ConfigError("arm.base_height must be >= 0");
    if (!(l1 > 0.0)) throw ConfigError("arm.l1 must be > 0");
    if (!(l2 > 0.0)) throw ConfigError("arm.l2 must be > 0");
    for (const auto& lim : joint_limits)
        if (!(lim.min < lim.max)) throw ConfigError("arm joint limit must have min < max");
    if (!(max_joint_speed > 0.0)) throw ConfigError("arm.max_joint_speed must be > 0");
}

CartesianPose forward_kinematics(const JointAngles& q, const ArmGeometry& g) {
    const double r = g.l1 * std::cos(q.theta1) + g.l2 * std::cos(q.theta1 + q.theta2);
    const double z = g.base_height + g.l1 * std::sin(q.theta1) + g.l2 * std::sin(q.theta1 + q.theta2);
    return {r * std::cos(q.theta0), r * std::sin(q.theta0), z};
}

JointAngles inverse_kinematics(const CartesianPose& target, const ArmGeometry& g) {
    const double r = std::hypot(target.x, target.y);
    const double zbar = target.z - g.base_height;
    const double d = std::hypot(r, zbar);

    const double d_min = std::abs(g.l1 - g.l2) + kReachMargin;
    const double d_max = g.l1 + g.l2 - kReachMargin;
    const bool at_full_extension = std::abs(d - (g.l1 + g.l2)) <= kBoundaryTol;
    if (!at_full_extension && (d < d_min || d > d_max))
        throw UnreachableError("target at distance " + std::to_string(d) +
                               " outside reachable shell");

    JointAngles q;
    q.theta0 = (r > 0.0) ? std::atan2(target.y, target.x) : 0.0;

    // Law of cosines; elbow-down branch picks theta2 in [0, pi].
    double c2 = (d * d - g.l1 * g.l1 - g.l2 * g.l2) / (2.0 * g.l1 * g.l2);
    c2 = std::clamp(c2, -1.0, 1.0);
    q.theta2 = std::acos(c2);
    q.theta1 = std::atan2(zbar, r) -
               std::atan2(g.l2 * std::sin(q.theta2), g.l1 + g.l2 * std::cos(q.theta2));

    check_limit(q.theta0, g.joint_limits[0], "theta0");
    check_limit(q.theta1, g.joint_limits[1], "theta1");
    check_limit(q.theta2, g.joint_limits[2], "theta2");
    return q;
}

bool reachable(const CartesianPose& target, const ArmGeometry& g) {
    try {
        (void)inverse_kinematics(target, g);
        return true;
    } catch (const UnreachableError&) {
        return false;
    } catch (const JointLimitError&) {
        return false;
    }
}

CartesianPose linear_path(const CartesianPose& start, const CartesianPose& goal, double fraction) {
    return start + fraction * (goal - start);
}

std::vector<TrajectorySample> plan_trajectory(const CartesianPose& start,
                                              const CartesianPose& goal, double t_move,
                                              double dt, const hopf::HopfParams& hopf_base,
                                              const ArmGeometry& g) {
    if (!(dt > 0.0)) throw ConfigError("plan_trajectory: dt must be > 0");
    if (!(t_move > 0.0)) throw ConfigError("plan_trajectory: t_move must be > 0");

    const double dist = distance(start, goal);
    if (dist < 1e-12)
        return {TrajectorySample{0.0, inverse_kinematics(start, g), start}};

    const hopf::HopfParams fitted = hopf::fit_isochrone(dist, t_move, hopf_base);
    const double r_h = hopf::radius(fitted);

    const int n = static_cast<int>(std::ceil(t_move / dt - 1e-9));
    std::vector<TrajectorySample> plan;
    plan.reserve(static_cast<std::size_t>(n) + 1);

    for (int k = 0; k <= n; ++k) {
        const double t = std::min(k * dt, t_move);
        const double fraction = std::min(hopf::arc_length(t, r_h, fitted.omega) / dist, 1.0);
        TrajectorySample s;
        s.t = t;
        s.pose = linear_path(start, goal, fraction);
        if (s.pose.z < 0.0)
            throw UnreachableError("planned pose below floor plane");
        s.q = inverse_kinematics(s.pose, g);
        plan.push_back(s);
    }
    // Last sample lands on the goal exactly: arc_length(t_move) = dist.
    plan.back().pose = goal;

    for (std::size_t k = 1; k < plan.size(); ++k) {
        const double step_dt = plan[k].t - plan[k - 1].t;
        if (step_dt <= 0.0) continue;
        const double w0 = std::abs(plan[k].q.theta0 - plan[k - 1].q.theta0) / step_dt;
        const double w1 = std::abs(plan[k].q.theta1 - plan[k - 1].q.theta1) / step_dt;
        const double w2 = std::abs(plan[k].q.theta2 - plan[k - 1].q.theta2) / step_dt;
        if (std::max({w0, w1, w2}) > g.max_joint_speed)
            throw JointSpeedError("planned joint speed " +
                                  std::to_string(std::max({w0, w1, w2})) +
                                  " rad/s exceeds cap");
    }
    return plan;
}

}  // namespace pendsim::arm
