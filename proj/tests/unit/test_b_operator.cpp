#include "teig/b_operator.hpp"

#include "teig/rng.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace teig;

namespace {

double norm_m_pow_m(const Eigen::VectorXd& x, int m)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]), m);
    return s;
}

} // namespace

TEST_SUITE_BEGIN("b_operator");

TEST_CASE("closed-form values")
{
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    CHECK(BOperator::identity_power(4, 2).form(x) == doctest::Approx(4.0).epsilon(1e-15));

    Eigen::VectorXd y(2);
    y << 1.0, -2.0;
    CHECK(BOperator::unit_tensor(4, 2).form(y) == doctest::Approx(17.0).epsilon(1e-15));

    const Eigen::MatrixXd d = 2.0 * Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd e1(2);
    e1 << 1.0, 0.0;
    CHECK(BOperator::matrix_power(4, d).form(e1) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("closed-form contractions")
{
    Eigen::VectorXd x(2);
    x << 1.0, 1.0;
    const Eigen::VectorXd c = BOperator::identity_power(4, 2).contract(x);
    CHECK(c[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c[1] == doctest::Approx(2.0).epsilon(1e-15));

    Eigen::VectorXd y(2);
    y << 1.0, -2.0;
    const Eigen::VectorXd cu = BOperator::unit_tensor(4, 2).contract(y);
    CHECK(cu[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cu[1] == doctest::Approx(-8.0).epsilon(1e-15));
}

TEST_CASE("gradient identity m * contract = grad(form) for every kind")
{
    Rng rng(17);
    Eigen::MatrixXd d(3, 3);
    d << 4.0, 1.0, 0.5,
         1.0, 3.0, 0.2,
         0.5, 0.2, 5.0;
    const std::vector<BOperator> ops = {
        BOperator::unit_tensor(4, 3),
        BOperator::identity_power(4, 3),
        BOperator::matrix_power(4, d),
        BOperator::explicit_dense(BOperator::matrix_power(4, d).to_dense(), true),
        BOperator::identity_power(6, 3),
    };
    for (const BOperator& b : ops) {
        for (int rep = 0; rep < 5; ++rep) {
            const Eigen::VectorXd x = test::random_vector(3, rng);
            const double h = 1e-5 * (1.0 + x.lpNorm<Eigen::Infinity>());
            const Eigen::VectorXd fd =
                test::fd_gradient([&](const Eigen::VectorXd& y) { return b.form(y); }, x, h);
            const Eigen::VectorXd analytic = static_cast<double>(b.order()) * b.contract(x);
            CHECK((fd - analytic).norm() <= 1e-6 * (1.0 + analytic.norm()));
        }
    }
}

TEST_CASE("dense materialization reproduces the closed forms")
{
    Rng rng(27);
    Eigen::MatrixXd d(2, 2);
    d << 2.0, 0.3,
         0.3, 1.0;
    const std::vector<BOperator> ops = {
        BOperator::unit_tensor(4, 2),
        BOperator::identity_power(4, 2),
        BOperator::matrix_power(4, d),
    };
    for (const BOperator& b : ops) {
        const SymmetricTensor dense = b.to_dense();
        CHECK(dense.is_symmetric());
        for (int rep = 0; rep < 6; ++rep) {
            const Eigen::VectorXd x = test::random_vector(2, rng);
            CHECK(evaluate_form(dense, x) == doctest::Approx(b.form(x)).epsilon(1e-12));
            const Eigen::VectorXd cd = contract(dense, x);
            const Eigen::VectorXd cb = b.contract(x);
            CHECK((cd - cb).norm() <= 1e-10 * (1.0 + cb.norm()));
        }
    }
}

TEST_CASE("lower bound inequality B x^m >= mu * ||x||_m^m")
{
    Rng rng(37);
    for (int m : {4, 6}) {
        const BOperator unit = BOperator::unit_tensor(m, 6);
        const BOperator zid = BOperator::identity_power(m, 6);
        const double mu_u = unit.min_h_eigenvalue_lower_bound();
        const double mu_z = zid.min_h_eigenvalue_lower_bound();
        CHECK(mu_u == 1.0);
        CHECK(mu_z == 1.0);
        for (int rep = 0; rep < 500; ++rep) {
            const Eigen::VectorXd x = test::random_vector(6, rng);
            const double mm = norm_m_pow_m(x, m);
            CHECK(unit.form(x) >= mu_u * mm - 1e-12);
            CHECK(zid.form(x) >= mu_z * mm - 1e-12);
        }
    }

    // Equality cases.
    Eigen::VectorXd e1 = Eigen::VectorXd::Zero(6);
    e1[0] = 1.0;
    CHECK(BOperator::identity_power(4, 6).form(e1) == 1.0);
    Rng rng2(38);
    const Eigen::VectorXd x = test::random_vector(6, rng2);
    CHECK(BOperator::unit_tensor(4, 6).form(x) == doctest::Approx(norm_m_pow_m(x, 4)).epsilon(1e-14));
}

TEST_CASE("positivity away from zero")
{
    Rng rng(47);
    Eigen::MatrixXd d(3, 3);
    d << 4.0, 1.0, 0.5,
         1.0, 3.0, 0.2,
         0.5, 0.2, 5.0;
    const std::vector<BOperator> ops = {
        BOperator::unit_tensor(4, 3),
        BOperator::identity_power(4, 3),
        BOperator::matrix_power(4, d),
    };
    for (const BOperator& b : ops)
        for (int rep = 0; rep < 200; ++rep)
            CHECK(b.form(test::random_vector(3, rng)) > 0.0);
}

TEST_CASE("homogeneity of degree m")
{
    Rng rng(57);
    const BOperator b = BOperator::identity_power(4, 3);
    const Eigen::VectorXd x = test::random_vector(3, rng);
    const double f = b.form(x);
    for (double s : {-2.0, 0.5, 3.0})
        CHECK(b.form(s * x) == doctest::Approx(s * s * s * s * f).epsilon(1e-10));
}

TEST_CASE("matrix_power construction demands SPD input")
{
    Eigen::MatrixXd indef(2, 2);
    indef << 1.0, 2.0,
             2.0, 1.0; // eigenvalues 3, -1
    CHECK_THROWS_AS(BOperator::matrix_power(4, indef), std::invalid_argument);

    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5,
            0.0, 1.0;
    CHECK_THROWS_AS(BOperator::matrix_power(4, asym), std::invalid_argument);

    CHECK_THROWS_AS(BOperator::matrix_power(3, Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
    CHECK_NOTHROW(BOperator::matrix_power(4, Eigen::MatrixXd::Identity(2, 2)));
}

TEST_CASE("explicit_dense requires the symmetry flag and records the PD assertion")
{
    std::vector<double> raw(16, 0.0);
    raw[3] = 1.0;
    CHECK_THROWS_AS(BOperator::explicit_dense(SymmetricTensor(4, 2, raw, false), true),
                    std::invalid_argument);
    const BOperator b = BOperator::explicit_dense(BOperator::identity_power(4, 2).to_dense(), false);
    CHECK_FALSE(b.positive_definite_asserted());
}

TEST_CASE("no closed-form lower bound for matrix kinds")
{
    const BOperator b = BOperator::matrix_power(4, Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(b.min_h_eigenvalue_lower_bound(), std::domain_error);
}

TEST_CASE("dimension mismatch is rejected")
{
    const BOperator b = BOperator::identity_power(4, 3);
    CHECK_THROWS_AS(b.form(Eigen::VectorXd::Zero(2)), std::invalid_argument);
    CHECK_THROWS_AS(b.contract(Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST_SUITE_END();
