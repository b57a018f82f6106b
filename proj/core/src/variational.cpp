#include "teig/variational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace teig {

const char* to_string(Flavor flavor)
{
    return flavor == Flavor::F1 ? "f1" : "f2";
}

const char* to_string(PointClass c)
{
    switch (c) {
    case PointClass::ZeroPoint: return "zero_point";
    case PointClass::EigenpairPoint: return "eigenpair";
    case PointClass::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

Objective::Objective(Flavor flavor, double shift, std::shared_ptr<const SymmetricTensor> a, BOperator b)
    : flavor_(flavor), shift_(shift), a_(std::move(a)), b_(std::move(b))
{
    if (!a_) throw std::invalid_argument("objective: null tensor");
    if (!a_->is_symmetric())
        throw std::invalid_argument("objective: tensor must carry a verified symmetry flag");
    if (a_->dim() != b_.dim() || a_->order() != b_.order()) {
        std::ostringstream msg;
        msg << "objective: A is order " << a_->order() << " dim " << a_->dim()
            << " but B is order " << b_.order() << " dim " << b_.dim();
        throw std::invalid_argument(msg.str());
    }
}

Objective::Objective(Flavor flavor, double shift, const SymmetricTensor& a, BOperator b)
    : Objective(flavor, shift, std::make_shared<const SymmetricTensor>(a), std::move(b))
{
}

double Objective::value(const Eigen::VectorXd& x) const
{
    const double m = static_cast<double>(order());
    const double bf = b_.form(x);
    const double af = evaluate_form(*a_, x);
    const double sgn = flavor_ == Flavor::F1 ? 1.0 : -1.0;
    return bf * bf / (2.0 * m) + sgn * (af + shift_ * bf) / m;
}

double Objective::value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const
{
    const double m = static_cast<double>(order());
    const double bf = b_.form(x);
    const Eigen::VectorXd bc = b_.contract(x);
    const double af = evaluate_form(*a_, x);
    const Eigen::VectorXd ac = contract(*a_, x);
    const double sgn = flavor_ == Flavor::F1 ? 1.0 : -1.0;
    grad = bf * bc + sgn * (ac + shift_ * bc);
    return bf * bf / (2.0 * m) + sgn * (af + shift_ * bf) / m;
}

Eigenpair recover_lambda(const Objective& obj, const Eigen::VectorXd& x, double eta1)
{
    const double bf = obj.b().form(x);
    if (bf < eta1)
        throw std::domain_error("recover_lambda: zero critical point, no eigenpair (B x^m = " + std::to_string(bf) + ")");

    const double t = obj.shift();
    const double m = static_cast<double>(obj.order());
    const bool f1 = obj.flavor() == Flavor::F1;
    const double lambda = (f1 ? -bf : bf) - t;

    // Objective-value route: s = -(lambda + t)^2 / (2m) at an exact critical
    // point; tiny positive s is solver noise and clamps to zero.
    const double s = obj.value(x);
    bool consistent = false;
    if (s <= 1e-12) {
        const double s_cl = s > 0.0 ? 0.0 : s;
        const double root = std::sqrt(-2.0 * m * s_cl);
        const double lambda_obj = (f1 ? -root : root) - t;
        consistent = std::abs(lambda_obj - lambda) <= 1e-6 * (1.0 + std::abs(lambda));
    }

    Eigenpair pair;
    pair.lambda = lambda;
    pair.x = x / x.norm();
    pair.residual = residual(obj.tensor(), obj.b(), lambda, pair.x);
    pair.b_kind = obj.b().kind();
    pair.normalization = Normalization::UnitSphere;
    pair.dual_recovery_consistent = consistent;
    return pair;
}

CriticalPoint classify_critical_point(const Objective& obj, const Eigen::VectorXd& x,
                                      double objective_value, double grad_norm,
                                      double eta1, double eta2)
{
    CriticalPoint cp;
    cp.x = x;
    cp.objective_value = objective_value;
    cp.grad_norm = grad_norm;
    cp.b_form = obj.b().form(x);
    if (cp.b_form < eta1) {
        cp.classification = PointClass::ZeroPoint;
    } else if (cp.b_form > eta2) {
        cp.classification = PointClass::EigenpairPoint;
        cp.recovered = recover_lambda(obj, x, eta1);
    } else {
        cp.classification = PointClass::Inconclusive;
    }
    return cp;
}

} // namespace teig
