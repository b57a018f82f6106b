#include "teig/bfgs.hpp"

#include "teig/generators.hpp"
#include "teig/rng.hpp"
#include "teig/variational.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace teig;

TEST_SUITE_BEGIN("bfgs");

TEST_CASE("quadratic sanity: matrix eigenpairs through the order-2 path")
{
    // Indefinite symmetric matrix; its smallest eigenvalue is negative, so the
    // unshifted objective already detects it.
    Eigen::MatrixXd a2(2, 2);
    a2 << 2.0, 0.5,
          0.5, -1.0;
    const std::vector<double> ev = test::jacobi_eigenvalues(a2);
    const double lambda_min = ev.front();
    REQUIRE(lambda_min < 0.0);

    std::vector<double> vals = {a2(0, 0), a2(0, 1), a2(1, 0), a2(1, 1)};
    Objective obj(Flavor::F1, 0.0, SymmetricTensor(2, 2, vals, true),
                  BOperator::identity_power(2, 2));
    for (int s = 0; s < 5; ++s) {
        Rng rng(child_seed(31, static_cast<std::uint64_t>(s)));
        const SolveReport rep = minimize(obj, normalized_random_start(2, rng));
        const Eigenpair pair = recover_lambda(obj, rep.x);
        CHECK(pair.lambda == doctest::Approx(lambda_min).epsilon(1e-8));
        CHECK(pair.residual <= 1e-8);
    }

    // Positive definite matrix with a shift pushing the spectrum negative.
    Eigen::MatrixXd spd(2, 2);
    spd << 0.5, 0.0,
           0.0, 3.0;
    std::vector<double> vals2 = {0.5, 0.0, 0.0, 3.0};
    Objective shifted(Flavor::F1, -2.0, SymmetricTensor(2, 2, vals2, true),
                      BOperator::identity_power(2, 2));
    Rng rng(32);
    const SolveReport rep = minimize(shifted, normalized_random_start(2, rng));
    const Eigenpair pair = recover_lambda(shifted, rep.x);
    CHECK(pair.lambda == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("the known Z-eigenvalue is found from every start")
{
    Objective obj(Flavor::F1, 0.0, example1(4), BOperator::identity_power(4, 4));
    SolverConfig cfg;
    cfg.debug_checks = true; // Wolfe conditions and curvature asserted on every step
    int grad_tol_count = 0;
    for (int s = 0; s < 20; ++s) {
        Rng rng(child_seed(2025, static_cast<std::uint64_t>(s)));
        const SolveReport rep = minimize(obj, normalized_random_start(4, rng), cfg);
        if (rep.termination == Termination::GradTol) {
            ++grad_tol_count;
            CHECK(rep.final_grad_norm <= cfg.grad_tol);
        }
        const Eigenpair pair = recover_lambda(obj, rep.x);
        CHECK(pair.lambda == doctest::Approx(-0.9345).epsilon(2e-3));
        CHECK(pair.residual <= 1e-6);
    }
    CHECK(grad_tol_count >= 19); // >= 95% of runs end on the gradient test
}

TEST_CASE("start at the origin terminates immediately")
{
    Objective obj(Flavor::F1, 0.0, example1(4), BOperator::identity_power(4, 4));
    const SolveReport rep = minimize(obj, Eigen::VectorXd::Zero(4));
    CHECK(rep.termination == Termination::GradTol);
    CHECK(rep.iterations == 0);
    CHECK(rep.x.norm() == 0.0);
}

TEST_CASE("deterministic given identical inputs")
{
    Objective obj(Flavor::F1, 0.0, example1(6), BOperator::identity_power(4, 6));
    Rng rng(77);
    const Eigen::VectorXd x0 = normalized_random_start(6, rng);
    const SolveReport a = minimize(obj, x0);
    const SolveReport b = minimize(obj, x0);
    CHECK(a.iterations == b.iterations);
    CHECK(a.objective_value == b.objective_value);
    CHECK(a.x == b.x); // bitwise
}

TEST_CASE("non-finite start is rejected")
{
    Objective obj(Flavor::F1, 0.0, example1(3), BOperator::identity_power(4, 3));
    CHECK_THROWS_AS(minimize(obj, Eigen::VectorXd::Constant(3, 1e80)), std::invalid_argument);
}

TEST_CASE("config validation")
{
    Objective obj(Flavor::F1, 0.0, example1(3), BOperator::identity_power(4, 3));
    const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(3);
    SolverConfig bad;
    bad.wolfe_c1 = 0.5;
    bad.wolfe_c2 = 0.4;
    CHECK_THROWS_AS(minimize(obj, x0, bad), std::invalid_argument);
    SolverConfig bad2;
    bad2.grad_tol = 0.0;
    CHECK_THROWS_AS(minimize(obj, x0, bad2), std::invalid_argument);
    SolverConfig bad3;
    bad3.max_iter = 0;
    CHECK_THROWS_AS(minimize(obj, x0, bad3), std::invalid_argument);
    CHECK_THROWS_AS(minimize(obj, Eigen::VectorXd::Ones(5)), std::invalid_argument);
}

TEST_CASE("monotone decrease across accepted iterates")
{
    // Richer objective: symmetrized random tensor.
    Objective obj(Flavor::F1, 0.0, test::random_symmetric(4, 5, 404),
                  BOperator::identity_power(4, 5));
    Rng rng(99);
    const Eigen::VectorXd x0 = normalized_random_start(5, rng);
    double prev = obj.value(x0);
    // Track decrease through a capped-iteration ladder of reruns.
    for (int cap = 1; cap <= 15; ++cap) {
        SolverConfig cfg;
        cfg.max_iter = cap;
        const SolveReport rep = minimize(obj, x0, cfg);
        CHECK(rep.objective_value <= prev + 1e-14);
        prev = rep.objective_value;
        if (rep.termination != Termination::MaxIter) break;
    }
}

TEST_CASE("normalized random starts")
{
    Rng rng(123);
    const Eigen::VectorXd x = normalized_random_start(7, rng);
    CHECK(std::abs(x.norm() - 1.0) <= 1e-15);

    Rng r1(9), r2(9), r3(10);
    const Eigen::VectorXd a = normalized_random_start(5, r1);
    const Eigen::VectorXd b = normalized_random_start(5, r2);
    const Eigen::VectorXd c = normalized_random_start(5, r3);
    CHECK(a == b); // same seed, fresh generators: identical bitwise
    CHECK(a != c);
}

TEST_SUITE_END();
