#include "teig/eigenpair.hpp"

#include <stdexcept>

namespace teig {

double residual(const SymmetricTensor& a, const BOperator& b, double lambda,
                const Eigen::VectorXd& x)
{
    if (x.size() != a.dim())
        throw std::invalid_argument("residual: x has length " + std::to_string(x.size()) + ", expected " + std::to_string(a.dim()));
    if (x.lpNorm<Eigen::Infinity>() == 0.0)
        throw std::invalid_argument("residual: x is the zero vector");
    const Eigen::VectorXd xhat = x / x.norm();
    return (contract(a, xhat) - lambda * b.contract(xhat)).norm();
}

} // namespace teig
