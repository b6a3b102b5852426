#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pendsim/ekf.hpp"
#include "pendsim/errors.hpp"
#include "pendsim/pendulum.hpp"
#include "pendsim/rng.hpp"
#include "test_util.hpp"

using namespace pendsim;
using namespace pendsim::ekf;
using pendulum::PendulumParams;
using pendulum::PendulumState;

namespace {

PendulumParams params() { return PendulumParams{}; }

NoiseConfig noise() { return NoiseConfig{}; }  // sigma_q 0.05, r 1e-4, T 0.01

}  // namespace

TEST_CASE("discrete transition frozen values") {
    // Frozen against an independent evaluation of the second-order Taylor map.
    const Eigen::Vector2d next = f_discrete({0.1, 0.0}, params(), 0.01);
    CHECK(next(0) == doctest::Approx(0.09997462782856723).epsilon(1e-13));
    CHECK(next(1) == doctest::Approx(-0.005074434286556395).epsilon(1e-13));

    // Equilibrium is a fixed point.
    const Eigen::Vector2d rest = f_discrete({0.0, 0.0}, params(), 0.01);
    CHECK(rest(0) == 0.0);
    CHECK(rest(1) == 0.0);
}

TEST_CASE("transition jacobian frozen values") {
    const Eigen::Matrix2d A = jacobian_A({0.0, 0.5}, params(), 0.01);
    CHECK(A(0, 0) == doctest::Approx(0.9997458549222797).epsilon(1e-13));
    CHECK(A(0, 1) == doctest::Approx(0.009995).epsilon(1e-13));
    CHECK(A(1, 0) == doctest::Approx(-0.050829015544041456).epsilon(1e-13));
    CHECK(A(1, 1) == doctest::Approx(0.999).epsilon(1e-13));
}

TEST_CASE("measurement jacobian") {
    const PendulumParams p = params();
    const Eigen::RowVector2d C = jacobian_C({0.0, 1.0}, p);
    CHECK(C(0) == doctest::Approx(p.l).epsilon(1e-15));
    CHECK(C(1) == 0.0);
    CHECK(jacobian_C({M_PI / 2.0, 0.0}, p)(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("jacobians match central finite differences") {
    const PendulumParams p = params();
    Pcg32 rng = make_stream(3, "jacobian-states");
    const double h = 1e-6;
    double max_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        Eigen::Vector2d x{(rng.next_double() - 0.5) * M_PI, (rng.next_double() - 0.5) * 6.0};
        const Eigen::Matrix2d A = jacobian_A(x, p, 0.01);
        for (int j = 0; j < 2; ++j) {
            Eigen::Vector2d lo = x, hi = x;
            lo(j) -= h;
            hi(j) += h;
            const Eigen::Vector2d col =
                (f_discrete(hi, p, 0.01) - f_discrete(lo, p, 0.01)) / (2.0 * h);
            max_err = std::max(max_err, std::abs(col(0) - A(0, j)));
            max_err = std::max(max_err, std::abs(col(1) - A(1, j)));
        }
        const Eigen::RowVector2d C = jacobian_C(x, p);
        const double dz = (p.l * std::sin(x(0) + h) - p.l * std::sin(x(0) - h)) / (2.0 * h);
        max_err = std::max(max_err, std::abs(dz - C(0)));
        max_err = std::max(max_err, std::abs(C(1)));
    }
    CHECK(max_err < 1e-6);
}

TEST_CASE("noise input and process noise frozen values") {
    const Eigen::Vector2d gd = build_Gd(0.01);
    CHECK(gd(0) == doctest::Approx(5e-5).epsilon(1e-14));
    CHECK(gd(1) == doctest::Approx(0.01).epsilon(1e-15));

    const Eigen::Matrix2d Q = build_Q(0.01, 1.0);
    CHECK(Q(0, 0) == doctest::Approx(2.5e-9).epsilon(1e-13));
    CHECK(Q(0, 1) == doctest::Approx(5e-7).epsilon(1e-13));
    CHECK(Q(1, 0) == doctest::Approx(5e-7).epsilon(1e-13));
    CHECK(Q(1, 1) == doctest::Approx(1e-4).epsilon(1e-13));

    // Rank one and PSD: det = 0, trace > 0, scales with sigma_q^2.
    CHECK(Q.determinant() == doctest::Approx(0.0).scale(1e-12).epsilon(1.0));
    CHECK(build_Q(0.01, 0.05)(1, 1) == doctest::Approx(1e-4 * 0.0025).epsilon(1e-12));
}

TEST_CASE("predict and correct match an independent one-step oracle") {
    // Frozen from a hand-rolled 2x2 implementation of the same equations:
    // x0 = (0.2, 0), P0 = diag(0.1, 1), z = l sin(0.21).
    StateEstimate est;
    est.x_hat = {0.2, 0.0};
    est.P = Eigen::Vector2d(0.1, 1.0).asDiagonal();

    const StateEstimate pred = predict(est, params(), noise());
    CHECK(pred.x_hat(0) == doctest::Approx(0.19994950916748447).epsilon(1e-13));
    CHECK(pred.x_hat(1) == doctest::Approx(-0.01009816650310648).epsilon(1e-13));
    CHECK(pred.P(0, 0) == doctest::Approx(0.10005009041597035).epsilon(1e-12));
    CHECK(pred.P(0, 1) == doctest::Approx(0.005004665125998427).epsilon(1e-12));
    CHECK(pred.P(1, 0) == pred.P(0, 1));
    CHECK(pred.P(1, 1) == doctest::Approx(0.9982494115854452).epsilon(1e-12));

    const double z = params().l * std::sin(0.21);
    auto [corr, step] = correct(pred, z, params(), noise());
    CHECK(step.measurement_used);
    CHECK(step.residual == doctest::Approx(0.018991303605660648).epsilon(1e-12));
    CHECK(step.gain(0) == doctest::Approx(0.5285199246555907).epsilon(1e-12));
    CHECK(step.gain(1) == doctest::Approx(0.02643740974467862).epsilon(1e-12));
    CHECK(corr.x_hat(0) == doctest::Approx(0.2099867915182597).epsilon(1e-12));
    CHECK(corr.x_hat(1) == doctest::Approx(-0.009596085628098038).epsilon(1e-12));
    CHECK(corr.P(0, 0) == doctest::Approx(2.794113423699282e-05).epsilon(1e-10));
    CHECK(corr.P(0, 1) == doctest::Approx(1.3976601072054237e-06).epsilon(1e-10));
    CHECK(corr.P(1, 1) == doctest::Approx(0.9979991401654147).epsilon(1e-12));

    // The measurement shrinks total uncertainty.
    CHECK(corr.P.trace() < pred.P.trace());
}

TEST_CASE("update passes through predict on dropout") {
    StateEstimate est;
    est.x_hat = {0.1, 0.2};
    est.P = Eigen::Vector2d(0.01, 0.02).asDiagonal();

    auto [dropped, step] = update(est, std::nullopt, params(), noise());
    CHECK_FALSE(step.measurement_used);
    CHECK(step.gain.norm() == 0.0);
    const StateEstimate pred = predict(est, params(), noise());
    CHECK(dropped.x_hat == pred.x_hat);
    CHECK(dropped.P == pred.P);
}

TEST_CASE("singular innovation is rejected") {
    StateEstimate est;  // zero covariance
    NoiseConfig n = noise();
    n.r_meas = 0.0;  // bypasses validate() deliberately
    CHECK_THROWS_AS(correct(est, 0.0, params(), n), SingularInnovationError);
}

TEST_CASE("forecast iterates the discrete model") {
    StateEstimate est;
    est.x_hat = {0.3, -0.1};
    const auto states = forecast(est, params(), noise(), 50);
    REQUIRE(states.size() == 50);
    Eigen::Vector2d x = est.x_hat;
    for (int k = 0; k < 50; ++k) {
        x = f_discrete(x, params(), noise().T);
        CHECK(states[static_cast<std::size_t>(k)] == x);
    }
    CHECK(forecast(est, params(), noise(), 0).empty());
}

TEST_CASE("bootstrap estimate") {
    const PendulumParams p = params();
    const StateEstimate est = initial_estimate(p.l * std::sin(0.25), p);
    CHECK(est.x_hat(0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(est.x_hat(1) == 0.0);
    CHECK(est.P(0, 0) == 0.1);
    CHECK(est.P(1, 1) == 1.0);
    CHECK(est.P(0, 1) == 0.0);

    // Out-of-range measurements clamp instead of producing NaN.
    CHECK(initial_estimate(2.5 * p.l, p).x_hat(0) == doctest::Approx(M_PI / 2.0));
}

TEST_CASE("covariance stays symmetric and PSD through mixed ticks") {
    const PendulumParams p = params();
    const NoiseConfig n = noise();
    Pcg32 rng = make_stream(99, "dropout-pattern");
    PendulumState truth{0.5, 0.0};
    StateEstimate est = initial_estimate(p.l * std::sin(truth.phi), p);

    int burst = 0;
    for (int i = 0; i < 100000; ++i) {
        truth = pendulum::step_truth(truth, p, n.T);
        // Poisson-ish dropout bursts of up to 80 ticks.
        if (burst == 0 && rng.next_double() < 0.01)
            burst = 1 + static_cast<int>(rng.next_u32() % 80);
        std::optional<double> z;
        if (burst > 0)
            --burst;
        else
            z = p.l * std::sin(truth.phi);
        est = update(est, z, p, n).first;

        REQUIRE(std::abs(est.P(0, 1) - est.P(1, 0)) <= 1e-12);
        REQUIRE(testutil::eigmin_sym2(est.P(0, 0), est.P(0, 1), est.P(1, 1)) >= -1e-10);
    }
}

TEST_CASE("uncertainty grows across a dropout burst") {
    const PendulumParams p = params();
    const NoiseConfig n = noise();
    PendulumState truth{0.4, 0.0};
    StateEstimate est = initial_estimate(p.l * std::sin(truth.phi), p);
    for (int i = 0; i < 600; ++i) {
        truth = pendulum::step_truth(truth, p, n.T);
        est = update(est, p.l * std::sin(truth.phi), p, n).first;
    }
    const double converged_trace = est.P.trace();
    for (int i = 0; i < 200; ++i) {
        truth = pendulum::step_truth(truth, p, n.T);
        est = update(est, std::nullopt, p, n).first;
    }
    CHECK(est.P.trace() > 2.0 * converged_trace);
}

TEST_CASE("filter beats direct arcsin inversion on noisy data") {
    const PendulumParams p = params();
    const NoiseConfig n = noise();
    pendulum::SensorModel sensor;  // defaults: sigma_v 0.01, dropout 0.02

    double filter_sq = 0.0, raw_sq = 0.0;
    long filter_n = 0, raw_n = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Pcg32 d = make_stream(seed, "sensor-dropout");
        Pcg32 nz = make_stream(seed, "sensor-noise");
        Gaussian g;
        PendulumState truth{0.5, 0.0};
        std::optional<StateEstimate> est;
        for (int i = 0; i < 600; ++i) {
            const auto z = pendulum::measure(truth, p, sensor, d, nz, g);
            if (!est) {
                if (z) est = initial_estimate(*z, p);
            } else {
                est = update(*est, z, p, n).first;
            }
            if (i >= 200 && est) {
                filter_sq += (est->x_hat(0) - truth.phi) * (est->x_hat(0) - truth.phi);
                ++filter_n;
                if (z) {
                    const double raw = std::asin(std::clamp(*z / p.l, -1.0, 1.0));
                    raw_sq += (raw - truth.phi) * (raw - truth.phi);
                    ++raw_n;
                }
            }
            for (int s = 0; s < 4; ++s) truth = pendulum::step_truth(truth, p, n.T / 4.0);
        }
    }
    REQUIRE(filter_n > 0);
    REQUIRE(raw_n > 0);
    CHECK(std::sqrt(filter_sq / filter_n) < std::sqrt(raw_sq / raw_n));
}

TEST_CASE("noise config validation") {
    NoiseConfig n;
    CHECK_NOTHROW(n.validate());
    n.r_meas = 0.0;
    CHECK_THROWS_AS(n.validate(), ConfigError);
    n = NoiseConfig{};
    n.sigma_q = -0.1;
    CHECK_THROWS_AS(n.validate(), ConfigError);
}
