#include "teig/sshopm.hpp"

#include "teig/generators.hpp"
#include "teig/rng.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace teig;

TEST_SUITE_BEGIN("sshopm");

TEST_CASE("diagonal dominant eigenpair is a fixed point of the estimate")
{
    const SymmetricTensor a = example7(30);
    Eigen::VectorXd e30 = Eigen::VectorXd::Zero(30);
    e30[29] = 1.0;
    SshopmConfig cfg;
    cfg.alpha = -2.0;
    const SshopmResult res = sshopm_run(a, e30, cfg);
    CHECK(res.termination == SshopmTermination::Tol);
    CHECK(res.pair.lambda == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(res.iterations <= 2);
}

TEST_CASE("iterates stay on the unit sphere")
{
    const SymmetricTensor a = example1(5);
    Rng rng(15);
    SshopmConfig cfg;
    cfg.alpha = -2.0;
    cfg.record_trace = true;
    const SshopmResult res = sshopm_run(a, normalized_random_start(5, rng), cfg);
    REQUIRE(!res.norm_trace.empty());
    for (double norm : res.norm_trace) CHECK(std::abs(norm - 1.0) <= 1e-14);
}

TEST_CASE("sufficiently negative shifts give monotone non-increasing estimates")
{
    for (int seed = 1; seed <= 3; ++seed) {
        const SymmetricTensor a = test::random_symmetric(4, 3, 600 + seed);
        double max_abs = 0.0;
        for (double v : a.values()) max_abs = std::max(max_abs, std::abs(v));
        SshopmConfig cfg;
        cfg.alpha = -3.0 * max_abs * 27.0; // (m-1) * max|A| * n^(m-1)
        cfg.record_trace = true;
        cfg.max_iters = 300;
        Rng rng(seed);
        const SshopmResult res = sshopm_run(a, normalized_random_start(3, rng), cfg);
        for (std::size_t k = 1; k < res.lambda_trace.size(); ++k)
            CHECK(res.lambda_trace[k] <= res.lambda_trace[k - 1] + 1e-12);
    }
}

TEST_CASE("a genuinely fixed iterate is an eigenpair")
{
    // Exact fixed point: for a positive shift the dominant axis reproduces
    // itself bitwise.
    {
        const SymmetricTensor a = example7(6);
        Eigen::VectorXd e6 = Eigen::VectorXd::Zero(6);
        e6[5] = 1.0;
        SshopmConfig cfg;
        cfg.alpha = 2.0;
        const SshopmResult res = sshopm_run(a, e6, cfg);
        REQUIRE(res.final_step_inf <= 1e-13);
        CHECK(res.pair.residual <= 1e-8);
        CHECK(res.pair.lambda == doctest::Approx(60.0).epsilon(1e-14));
    }

    // Negative diagonal entries make lambda + alpha negative at the limit, so
    // the negated update has a true fixed point; the estimate stalls before
    // the iterate does, so warm restarts drive the step below the threshold.
    {
        Eigen::VectorXd d(3);
        d << -1.0, -2.0, -3.0;
        const SymmetricTensor a = SymmetricTensor::diagonal(4, d);
        SshopmConfig cfg;
        cfg.alpha = -2.0;
        cfg.tol = 1e-300;
        cfg.max_iters = 3000;
        Rng rng(44);
        Eigen::VectorXd x = normalized_random_start(3, rng);
        SshopmResult res = sshopm_run(a, x, cfg);
        for (int restart = 0; restart < 40 && res.final_step_inf > 1e-13; ++restart)
            res = sshopm_run(a, res.pair.x, cfg);
        REQUIRE(res.final_step_inf <= 1e-13);
        CHECK(res.pair.residual <= 1e-8);
        CHECK(res.pair.lambda < 0.0);
    }
}

TEST_CASE("constant/diagonal family at n = 10 reaches published accuracy")
{
    const SymmetricTensor a = example1(10);
    SshopmConfig cfg;
    cfg.alpha = -2.0;
    for (int s = 0; s < 5; ++s) {
        Rng rng(child_seed(808, static_cast<std::uint64_t>(s)));
        const SshopmResult res = sshopm_run(a, normalized_random_start(10, rng), cfg);
        CHECK(res.termination == SshopmTermination::Tol);
        CHECK(res.pair.residual <= 1e-5);
        CHECK(res.pair.lambda < 0.0);
    }
}

TEST_CASE("the nearly semidefinite diagonal tensor exhausts the iteration budget")
{
    const SymmetricTensor a = example5();
    SshopmConfig cfg;
    cfg.alpha = -2.0;
    cfg.max_iters = 10000;
    for (int s = 0; s < 3; ++s) {
        Rng rng(child_seed(909, static_cast<std::uint64_t>(s)));
        const SshopmResult res = sshopm_run(a, normalized_random_start(3, rng), cfg);
        CHECK(res.termination == SshopmTermination::MaxIters);
        CHECK(res.iterations == 10000);
    }
}

TEST_CASE("degenerate shift annihilates the iterate")
{
    Eigen::VectorXd d(3);
    d << 10.0, 1.0, 1.0;
    const SymmetricTensor a = SymmetricTensor::diagonal(4, d);
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
    e1[0] = 1.0;
    SshopmConfig cfg;
    cfg.alpha = -10.0;
    CHECK_THROWS_AS(sshopm_run(a, e1, cfg), std::runtime_error);
}

TEST_CASE("input validation")
{
    const SymmetricTensor a = example1(3);
    SshopmConfig cfg;
    CHECK_THROWS_AS(sshopm_run(a, Eigen::VectorXd::Ones(3), cfg), std::invalid_argument);
    CHECK_THROWS_AS(sshopm_run(a, Eigen::VectorXd::Zero(2), cfg), std::invalid_argument);
    SshopmConfig bad;
    bad.tol = 0.0;
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
    e1[0] = 1.0;
    CHECK_THROWS_AS(sshopm_run(a, e1, bad), std::invalid_argument);
}

TEST_SUITE_END();
