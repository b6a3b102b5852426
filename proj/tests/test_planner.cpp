#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pendsim/ekf.hpp"
#include "pendsim/errors.hpp"
#include "pendsim/planner.hpp"

using namespace pendsim;
using namespace pendsim::planner;

namespace {

InterceptContext context() {
    InterceptContext ctx;
    ctx.home_ee = {0.55, 0.35, 0.4};
    return ctx;
}

ekf::StateEstimate converged_estimate(double phi, double phi_dot) {
    ekf::StateEstimate est;
    est.x_hat = {phi, phi_dot};
    est.P = Eigen::Vector2d(1e-5, 1e-4).asDiagonal();
    return est;
}

// A state whose 1.5 s forecast lands near the swing's positive apex, i.e.
// inside the arm's workspace with the ball almost at rest.
ekf::StateEstimate apex_arrival_estimate(const InterceptContext& ctx) {
    Eigen::Vector2d x{0.5, 0.0};
    for (int k = 0; k < 114; ++k) x = ekf::f_discrete(x, ctx.pend, ctx.noise.T);
    return converged_estimate(x(0), x(1));
}

}  // namespace

TEST_CASE("intercept proposal is the 1.5 s forecast of the ball") {
    const InterceptContext ctx = context();
    const ekf::StateEstimate est = converged_estimate(0.45, 0.0);

    const InterceptProposal prop = propose_intercept(est, ctx);

    // Oracle: iterate the discrete model 150 ticks by hand.
    Eigen::Vector2d x = est.x_hat;
    for (int k = 0; k < 150; ++k) x = ekf::f_discrete(x, ctx.pend, ctx.noise.T);
    CHECK(prop.predicted.phi == doctest::Approx(x(0)).epsilon(1e-14));
    CHECK(prop.predicted.phi_dot == doctest::Approx(x(1)).epsilon(1e-14));

    const CartesianPose ball = pendulum::ball_position({x(0), x(1)}, ctx.pend);
    CHECK(prop.point.x == doctest::Approx(ball.x).epsilon(1e-14));
    CHECK(prop.point.y == doctest::Approx(ball.y).epsilon(1e-14));
    CHECK(prop.point.z == doctest::Approx(ball.z).epsilon(1e-14));
}

TEST_CASE("gates fail individually") {
    const InterceptContext ctx = context();

    SUBCASE("unconverged covariance") {
        ekf::StateEstimate est = apex_arrival_estimate(ctx);
        est.P = Eigen::Vector2d(0.05, 0.5).asDiagonal();  // trace far above the gate
        const auto prop = propose_intercept(est, ctx);
        const GateReport g = check_condition(prop, est, ctx);
        CHECK_FALSE(g.converged);
        CHECK_FALSE(g.all());
    }

    SUBCASE("ball too fast at arrival") {
        const ekf::StateEstimate est = converged_estimate(0.0, 1.2);  // swinging through bottom
        const auto prop = propose_intercept(est, ctx);
        const GateReport g = check_condition(prop, est, ctx);
        CHECK(std::abs(ctx.pend.l * prop.predicted.phi_dot) > ctx.cfg.max_ball_speed_at_catch);
        CHECK_FALSE(g.catchable);
        CHECK_FALSE(g.all());
    }

    SUBCASE("unreachable intercept point") {
        // A hanging-rest ball sits under the pivot, outside the arm's shell.
        const ekf::StateEstimate est = converged_estimate(0.0, 0.0);
        const auto prop = propose_intercept(est, ctx);
        const GateReport g = check_condition(prop, est, ctx);
        CHECK_FALSE(g.reachable);
        CHECK_FALSE(g.all());
    }

    SUBCASE("plan too fast never throws, just fails the gate") {
        InterceptContext far = ctx;
        far.home_ee = {0.55, -0.35, 0.4};  // forces a long, fast yaw sweep
        far.geom.max_joint_speed = 0.2;
        const ekf::StateEstimate est = apex_arrival_estimate(far);
        const auto prop = propose_intercept(est, far);
        GateReport g;
        CHECK_NOTHROW(g = check_condition(prop, est, far));
        CHECK(g.reachable);
        CHECK(g.converged);
        CHECK(g.catchable);
        CHECK_FALSE(g.plan_valid);
    }
}

TEST_CASE("all gates pass for a catchable apex forecast") {
    const InterceptContext ctx = context();
    const ekf::StateEstimate est = apex_arrival_estimate(ctx);
    const auto prop = propose_intercept(est, ctx);
    const GateReport g = check_condition(prop, est, ctx);
    CHECK(g.reachable);
    CHECK(g.converged);
    CHECK(g.catchable);
    CHECK(g.plan_valid);
    CHECK(g.all());
}

TEST_CASE("catch judgment is a closed ball") {
    const InterceptConfig cfg;  // radius 0.05
    const CartesianPose ee{0.0, 0.0, 0.0};
    CHECK(judge_catch(ee, {0.0, 0.0, 0.0}, cfg));
    CHECK(judge_catch(ee, {0.03, 0.04, 0.0}, cfg));           // exactly on the boundary
    CHECK_FALSE(judge_catch(ee, {0.0301, 0.04, 0.0}, cfg));   // just outside
}

TEST_CASE("intercept config validation") {
    InterceptConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.catch_radius = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = InterceptConfig{};
    cfg.covariance_gate = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
