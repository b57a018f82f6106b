#include "teig/b_operator.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace teig {

namespace {

// Deterministic integer power by repeated squaring.
double ipow(double base, int e)
{
    double r = 1.0;
    double b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

void check_dim(const char* who, int dim, const Eigen::VectorXd& x)
{
    if (x.size() != dim) {
        std::ostringstream msg;
        msg << who << ": x has length " << x.size() << ", expected " << dim;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

const char* to_string(BKind kind)
{
    switch (kind) {
    case BKind::UnitTensor: return "unit_tensor";
    case BKind::IdentityPower: return "identity_power";
    case BKind::MatrixPower: return "matrix_power";
    case BKind::ExplicitDense: return "explicit_dense";
    }
    return "unknown";
}

BOperator::BOperator(BKind kind, int order, int dim)
    : kind_(kind), order_(order), dim_(dim)
{
    if (order < 2 || order % 2 != 0)
        throw std::invalid_argument("B operator order must be a positive even integer, got " + std::to_string(order));
    if (dim < 1)
        throw std::invalid_argument("B operator dimension must be >= 1, got " + std::to_string(dim));
}

BOperator BOperator::unit_tensor(int order, int dim)
{
    return BOperator(BKind::UnitTensor, order, dim);
}

BOperator BOperator::identity_power(int order, int dim)
{
    return BOperator(BKind::IdentityPower, order, dim);
}

BOperator BOperator::matrix_power(int order, const Eigen::MatrixXd& d)
{
    if (d.rows() != d.cols())
        throw std::invalid_argument("matrix_power: D must be square");
    const double scale = d.cwiseAbs().maxCoeff();
    if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + scale))
        throw std::invalid_argument("matrix_power: D is not symmetric");
    Eigen::MatrixXd sym = 0.5 * (d + d.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(sym);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("matrix_power: D is not positive definite (Cholesky failed)");
    BOperator b(BKind::MatrixPower, order, static_cast<int>(d.rows()));
    b.d_ = std::move(sym);
    return b;
}

BOperator BOperator::explicit_dense(SymmetricTensor t, bool positive_definite_asserted)
{
    return explicit_dense(std::make_shared<const SymmetricTensor>(std::move(t)), positive_definite_asserted);
}

BOperator BOperator::explicit_dense(std::shared_ptr<const SymmetricTensor> t,
                                    bool positive_definite_asserted)
{
    if (!t) throw std::invalid_argument("explicit_dense: null tensor");
    if (!t->is_symmetric())
        throw std::invalid_argument("explicit_dense: tensor must carry a verified symmetry flag");
    BOperator b(BKind::ExplicitDense, t->order(), t->dim());
    b.dense_ = std::move(t);
    b.pd_asserted_ = positive_definite_asserted;
    return b;
}

double BOperator::form(const Eigen::VectorXd& x) const
{
    check_dim("b_form", dim_, x);
    switch (kind_) {
    case BKind::UnitTensor: {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += ipow(x[i], order_);
        return s;
    }
    case BKind::IdentityPower:
        return ipow(x.squaredNorm(), order_ / 2);
    case BKind::MatrixPower:
        return ipow(x.dot(d_ * x), order_ / 2);
    case BKind::ExplicitDense:
        return evaluate_form(*dense_, x);
    }
    throw std::logic_error("unreachable");
}

Eigen::VectorXd BOperator::contract(const Eigen::VectorXd& x) const
{
    check_dim("b_contract", dim_, x);
    switch (kind_) {
    case BKind::UnitTensor: {
        Eigen::VectorXd out(dim_);
        for (int i = 0; i < dim_; ++i) out[i] = ipow(x[i], order_ - 1);
        return out;
    }
    case BKind::IdentityPower:
        return ipow(x.squaredNorm(), (order_ - 2) / 2) * x;
    case BKind::MatrixPower: {
        Eigen::VectorXd dx = d_ * x;
        return ipow(x.dot(dx), (order_ - 2) / 2) * dx;
    }
    case BKind::ExplicitDense:
        return teig::contract(*dense_, x);
    }
    throw std::logic_error("unreachable");
}

double BOperator::min_h_eigenvalue_lower_bound() const
{
    switch (kind_) {
    case BKind::UnitTensor:
        return 1.0; // B x^m = ||x||_m^m exactly
    case BKind::IdentityPower:
        return 1.0; // ||x||_2 >= ||x||_m for m >= 2
    default:
        throw std::domain_error(std::string("no closed-form bound for B kind ") + to_string(kind_));
    }
}

SymmetricTensor BOperator::to_dense() const
{
    switch (kind_) {
    case BKind::UnitTensor:
        return SymmetricTensor::diagonal(order_, Eigen::VectorXd::Ones(dim_));
    case BKind::IdentityPower:
    case BKind::MatrixPower: {
        // Raw product tensor P(i1,...,im) = M(i1,i2) M(i3,i4) ... then
        // symmetrized; the multilinear form is unchanged by symmetrization.
        Eigen::MatrixXd mmat = (kind_ == BKind::MatrixPower)
            ? d_
            : Eigen::MatrixXd(Eigen::MatrixXd::Identity(dim_, dim_));
        std::vector<double> raw(dense_size(order_, dim_), 0.0);
        std::vector<int> idx(order_, 0);
        const int n = dim_;
        for (std::size_t off = 0; off < raw.size(); ++off) {
            double v = 1.0;
            for (int p = 0; p + 1 < order_; p += 2) v *= mmat(idx[p], idx[p + 1]);
            raw[off] = v;
            for (int p = order_ - 1; p >= 0; --p) {
                if (++idx[p] < n) break;
                idx[p] = 0;
            }
        }
        return symmetrize(SymmetricTensor(order_, dim_, std::move(raw), false));
    }
    case BKind::ExplicitDense:
        return *dense_;
    }
    throw std::logic_error("unreachable");
}

const Eigen::MatrixXd& BOperator::matrix() const
{
    if (kind_ != BKind::MatrixPower)
        throw std::logic_error("matrix() is only available for the matrix_power kind");
    return d_;
}

const SymmetricTensor& BOperator::dense() const
{
    if (kind_ != BKind::ExplicitDense)
        throw std::logic_error("dense() is only available for the explicit_dense kind");
    return *dense_;
}

} // namespace teig
