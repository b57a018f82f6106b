#include "teig/sshopm.hpp"

#include <cmath>
#include <stdexcept>

namespace teig {

SshopmResult sshopm_run(const SymmetricTensor& a, const Eigen::VectorXd& x0,
                        const SshopmConfig& cfg)
{
    if (a.order() % 2 != 0)
        throw std::invalid_argument("sshopm_run: tensor order must be even");
    if (x0.size() != a.dim())
        throw std::invalid_argument("sshopm_run: x0 has length " + std::to_string(x0.size()) + ", expected " + std::to_string(a.dim()));
    if (std::abs(x0.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("sshopm_run: x0 must have unit 2-norm");
    if (!(cfg.tol > 0.0) || cfg.max_iters < 1)
        throw std::invalid_argument("sshopm_run: tol must be positive and max_iters >= 1");

    SshopmResult result;
    Eigen::VectorXd x = x0;
    Eigen::VectorXd c = contract(a, x);
    double lambda = x.dot(c);
    if (cfg.record_trace) {
        result.lambda_trace.push_back(lambda);
        result.norm_trace.push_back(x.norm());
    }

    result.termination = SshopmTermination::MaxIters;
    for (int k = 0; k < cfg.max_iters; ++k) {
        Eigen::VectorXd y = c + cfg.alpha * x;
        if (cfg.alpha < 0.0) y = -y;
        const double ynorm = y.norm();
        if (ynorm == 0.0)
            throw std::runtime_error("sshopm_run: shift annihilated iterate (A x^{m-1} + alpha x = 0)");
        const Eigen::VectorXd x_next = y / ynorm;
        result.final_step_inf = (x_next - x).lpNorm<Eigen::Infinity>();
        x = x_next;
        c = contract(a, x);
        const double lambda_next = x.dot(c);
        result.iterations = k + 1;
        if (cfg.record_trace) {
            result.lambda_trace.push_back(lambda_next);
            result.norm_trace.push_back(x.norm());
        }
        const double change = std::abs(lambda_next - lambda);
        lambda = lambda_next;
        if (change <= cfg.tol) {
            result.termination = SshopmTermination::Tol;
            break;
        }
    }

    Eigenpair pair;
    pair.lambda = lambda;
    pair.x = x;
    pair.b_kind = BKind::IdentityPower;
    pair.normalization = Normalization::UnitSphere;
    pair.residual = residual(a, BOperator::identity_power(a.order(), a.dim()), lambda, x);
    result.pair = std::move(pair);
    return result;
}

} // namespace teig
