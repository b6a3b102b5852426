#ifndef PENDSIM_ARM_HPP
#define PENDSIM_ARM_HPP

#include <array>
#include <vector>

#include "pendsim/geometry.hpp"
#include "pendsim/hopf.hpp"

namespace pendsim::arm {

struct JointLimit {
    double min = 0.0;  // rad
    double max = 0.0;  // rad
};

/// 3-DOF arm: base yaw, shoulder pitch, elbow pitch. The shoulder sits at
/// (0, 0, base_height); theta1 = theta2 = 0 is the fully extended horizontal
/// configuration.
struct ArmGeometry {
    double base_height = 0.34;  // m
    double l1 = 0.4;            // upper arm, m
    double l2 = 0.4;            // forearm + gripper, m
    std::array<JointLimit, 3> joint_limits = {
        JointLimit{-170.0 * M_PI / 180.0, 170.0 * M_PI / 180.0},
        JointLimit{-120.0 * M_PI / 180.0, 120.0 * M_PI / 180.0},
        JointLimit{-120.0 * M_PI / 180.0, 120.0 * M_PI / 180.0}};
    double max_joint_speed = 1.7;  // rad/s, per joint, checked at plan time

    void validate() const;
};

struct JointAngles {
    double theta0 = 0.0;  // base yaw, rad
    double theta1 = 0.0;  // shoulder pitch, rad
    double theta2 = 0.0;  // elbow pitch, rad
};

/// End-effector position of the planar two-link chain in the vertical plane
/// selected by theta0, lifted by base_height.
CartesianPose forward_kinematics(const JointAngles& q, const ArmGeometry& g);

/// Analytic IK, elbow-down branch (theta2 >= 0). Round-trips with FK to
/// better than 1e-9 m inside the reachable shell.
/// Throws UnreachableError outside [|l1-l2|+eps, l1+l2-eps] (the exact
/// full-extension distance is admitted) and JointLimitError when the unique
/// elbow-down solution exits a limit.
JointAngles inverse_kinematics(const CartesianPose& target, const ArmGeometry& g);

/// True iff inverse_kinematics would succeed.
bool reachable(const CartesianPose& target, const ArmGeometry& g);

/// Affine interpolation start + fraction * (goal - start).
CartesianPose linear_path(const CartesianPose& start, const CartesianPose& goal, double fraction);

struct TrajectorySample {
    double t = 0.0;  // s since motion start
    JointAngles q;
    CartesianPose pose;
};

/// Straight-line Cartesian path from start to goal, time-parameterized by
/// the isochronous arc-length law so the full distance is covered in exactly
/// t_move regardless of its magnitude. Every sample is IK-checked and the
/// per-joint speed cap is validated before anything is returned
/// (all-or-nothing plan). A zero-length move yields a single sample.
std::vector<TrajectorySample> plan_trajectory(const CartesianPose& start,
                                              const CartesianPose& goal, double t_move,
                                              double dt, const hopf::HopfParams& hopf_base,
                                              const ArmGeometry& g);

}  // namespace pendsim::arm

#endif
