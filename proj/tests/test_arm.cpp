#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pendsim/arm.hpp"
#include "pendsim/errors.hpp"
#include "pendsim/hopf.hpp"
#include "pendsim/rng.hpp"

using namespace pendsim;
using namespace pendsim::arm;

namespace {

ArmGeometry geom() { return ArmGeometry{}; }  // l1 = l2 = 0.4, base 0.34

}  // namespace

TEST_CASE("forward kinematics frozen poses") {
    const ArmGeometry g = geom();

    // Fully extended along +x.
    CartesianPose p = forward_kinematics({0.0, 0.0, 0.0}, g);
    CHECK(p.x == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(p.z == doctest::Approx(0.34).epsilon(1e-15));

    // Elbow folded square: forearm points straight up.
    p = forward_kinematics({0.0, 0.0, M_PI / 2.0}, g);
    CHECK(p.x == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(p.z == doctest::Approx(0.74).epsilon(1e-12));

    // Base yaw swings the whole plane.
    p = forward_kinematics({M_PI / 2.0, 0.0, 0.0}, g);
    CHECK(p.x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(0.34).epsilon(1e-15));

    // Shoulder down 90 degrees, extended: straight below the shoulder.
    p = forward_kinematics({0.0, -M_PI / 2.0, 0.0}, g);
    CHECK(p.x == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(p.z == doctest::Approx(0.34 - 0.8).epsilon(1e-12));
}

TEST_CASE("inverse kinematics round-trips with forward kinematics") {
    const ArmGeometry g = geom();
    Pcg32 rng = make_stream(31, "ik-targets");
    double max_err = 0.0;
    for (int k = 0; k < 1000; ++k) {
        // Sample elbow-down configurations inside the limits, away from the
        // stretch boundary, and use their poses as targets.
        JointAngles q;
        do {
            q.theta0 = (rng.next_double() - 0.5) * 2.0 * (165.0 * M_PI / 180.0);
            q.theta1 = (rng.next_double() - 0.5) * 2.0 * (115.0 * M_PI / 180.0);
            q.theta2 = 0.01 + rng.next_double() * (115.0 * M_PI / 180.0);
            // A pose folded behind the base axis flips its recovered yaw.
        } while (g.l1 * std::cos(q.theta1) + g.l2 * std::cos(q.theta1 + q.theta2) <= 0.05);
        const CartesianPose target = forward_kinematics(q, g);

        const JointAngles solved = inverse_kinematics(target, g);
        const CartesianPose back = forward_kinematics(solved, g);
        max_err = std::max(max_err, distance(target, back));
    }
    CHECK(max_err < 1e-9);
}

TEST_CASE("inverse kinematics picks the elbow-down branch") {
    const ArmGeometry g = geom();
    const JointAngles q = inverse_kinematics({0.5, 0.2, 0.5}, g);
    CHECK(q.theta2 >= 0.0);
    CHECK(q.theta2 <= M_PI);
}

TEST_CASE("exact full extension is admitted") {
    const ArmGeometry g = geom();
    const JointAngles q = inverse_kinematics({0.8, 0.0, 0.34}, g);
    CHECK(q.theta2 == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    const CartesianPose back = forward_kinematics(q, g);
    CHECK(distance(back, {0.8, 0.0, 0.34}) < 1e-9);
}

TEST_CASE("unreachable and limited targets raise distinct errors") {
    const ArmGeometry g = geom();

    // Beyond the stretch boundary.
    CHECK_THROWS_AS(inverse_kinematics({1.0, 0.0, 0.34}, g), UnreachableError);
    CHECK_THROWS_AS(inverse_kinematics({0.81, 0.0, 0.34}, g), UnreachableError);
    // At the shoulder itself (inner boundary of the annulus).
    CHECK_THROWS_AS(inverse_kinematics({0.0, 0.0, 0.34}, g), UnreachableError);

    // Geometrically solvable but past a joint limit: the elbow would need to
    // fold beyond 120 degrees...
    CHECK_THROWS_AS(inverse_kinematics({0.3, 0.0, 0.34}, g), JointLimitError);
    // ... or the base would need to yaw past 170 degrees.
    const double az = 175.0 * M_PI / 180.0;
    CHECK_THROWS_AS(inverse_kinematics({0.6 * std::cos(az), 0.6 * std::sin(az), 0.34}, g),
                    JointLimitError);
}

TEST_CASE("reachable mirrors inverse kinematics") {
    const ArmGeometry g = geom();
    Pcg32 rng = make_stream(37, "reach-targets");
    for (int k = 0; k < 500; ++k) {
        const CartesianPose t{(rng.next_double() - 0.5) * 2.0, (rng.next_double() - 0.5) * 2.0,
                              rng.next_double() * 1.4 - 0.3};
        bool ik_ok = true;
        try {
            (void)inverse_kinematics(t, g);
        } catch (const Error&) {
            ik_ok = false;
        }
        CHECK(reachable(t, g) == ik_ok);
    }
}

TEST_CASE("linear path interpolation") {
    const CartesianPose a{1.0, 2.0, 3.0};
    const CartesianPose b{2.0, 0.0, 5.0};
    CHECK(distance(linear_path(a, b, 0.0), a) == 0.0);
    CHECK(distance(linear_path(a, b, 1.0), b) == 0.0);
    const CartesianPose mid = linear_path(a, b, 0.5);
    CHECK(mid.x == doctest::Approx(1.5));
    CHECK(mid.y == doctest::Approx(1.0));
    CHECK(mid.z == doctest::Approx(4.0));
}

TEST_CASE("planned trajectory is isochronous and within the speed cap") {
    const ArmGeometry g = geom();
    const hopf::HopfParams base;
    const CartesianPose start{0.6, 0.0, 0.4};
    const CartesianPose goal{0.3, 0.35, 0.5};

    const auto plan = plan_trajectory(start, goal, 1.5, 0.01, base, g);
    REQUIRE(plan.size() == 151);
    CHECK(plan.front().t == 0.0);
    CHECK(plan.back().t == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(distance(plan.front().pose, start) == 0.0);
    CHECK(distance(plan.back().pose, goal) == 0.0);

    const double dist = distance(start, goal);
    const double r_h = dist / 1.5;
    const double omega = 2.0 * M_PI / 1.5;
    for (const auto& s : plan) {
        // Every sample sits on the segment at the arc-length fraction.
        const double expected = std::min(hopf::arc_length(s.t, r_h, omega) / dist, 1.0);
        const double got = distance(s.pose, start) / dist;
        CHECK(got == doctest::Approx(expected).scale(1.0).epsilon(1e-9));
        // And is kinematically consistent.
        CHECK(distance(forward_kinematics(s.q, g), s.pose) < 1e-9);
    }
    for (std::size_t k = 1; k < plan.size(); ++k) {
        const double dt = plan[k].t - plan[k - 1].t;
        CHECK(dt > 0.0);
        CHECK(std::abs(plan[k].q.theta0 - plan[k - 1].q.theta0) / dt <= g.max_joint_speed);
        CHECK(std::abs(plan[k].q.theta1 - plan[k - 1].q.theta1) / dt <= g.max_joint_speed);
        CHECK(std::abs(plan[k].q.theta2 - plan[k - 1].q.theta2) / dt <= g.max_joint_speed);
    }
}

TEST_CASE("zero-length move yields a single sample") {
    const ArmGeometry g = geom();
    const CartesianPose start{0.6, 0.0, 0.4};
    const auto plan = plan_trajectory(start, start, 1.5, 0.01, hopf::HopfParams{}, g);
    REQUIRE(plan.size() == 1);
    CHECK(plan.front().t == 0.0);
    CHECK(distance(plan.front().pose, start) == 0.0);
}

TEST_CASE("infeasible plans are rejected whole") {
    const ArmGeometry g = geom();
    const hopf::HopfParams base;

    // Reachable everywhere, but the base yaw would exceed the speed cap.
    CHECK_THROWS_AS(plan_trajectory({0.5, -0.5, 0.34}, {0.5, 0.5, 0.34}, 1.5, 0.01, base, g),
                    JointSpeedError);

    // Path folds past the elbow limit mid-way.
    CHECK_THROWS_AS(plan_trajectory({0.6, 0.0, 0.4}, {-0.5, 0.3, 0.4}, 1.5, 0.01, base, g),
                    JointLimitError);

    CHECK_THROWS_AS(plan_trajectory({0.6, 0.0, 0.4}, {0.5, 0.1, 0.5}, 0.0, 0.01, base, g),
                    ConfigError);
    CHECK_THROWS_AS(plan_trajectory({0.6, 0.0, 0.4}, {0.5, 0.1, 0.5}, 1.5, -0.01, base, g),
                    ConfigError);
}

TEST_CASE("geometry validation") {
    ArmGeometry g = geom();
    CHECK_NOTHROW(g.validate());
    g.l1 = 0.0;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = geom();
    g.joint_limits[1] = {0.5, 0.5};
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g = geom();
    g.max_joint_speed = 0.0;
    CHECK_THROWS_AS(g.validate(), ConfigError);
}
