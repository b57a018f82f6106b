#pragma once

#include "teig/b_operator.hpp"
#include "teig/eigenpair.hpp"
#include "teig/tensor.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>

namespace teig {

enum class Flavor {
    F1, // value (B x^m)^2/(2m) + (A + tB) x^m / m, detects eigenvalues of A + tB below zero
    F2, // value (B x^m)^2/(2m) - (A + tB) x^m / m, detects eigenvalues of A + tB above zero
};

const char* to_string(Flavor flavor);

/// Unconstrained objective whose nonzero critical points are generalized
/// eigenvectors of A (after removing the shift t). Immutable and safe to
/// evaluate concurrently.
class Objective {
public:
    Objective(Flavor flavor, double shift, std::shared_ptr<const SymmetricTensor> a, BOperator b);
    /// Convenience overload; copies the tensor into shared storage.
    Objective(Flavor flavor, double shift, const SymmetricTensor& a, BOperator b);

    double value(const Eigen::VectorXd& x) const;
    /// Value and gradient with exactly one A-form, one A-contraction, one
    /// B-form and one B-contraction evaluation.
    double value_and_gradient(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const;

    Flavor flavor() const { return flavor_; }
    double shift() const { return shift_; }
    int order() const { return a_->order(); }
    int dim() const { return a_->dim(); }
    const SymmetricTensor& tensor() const { return *a_; }
    const std::shared_ptr<const SymmetricTensor>& tensor_ptr() const { return a_; }
    const BOperator& b() const { return b_; }

private:
    Flavor flavor_;
    double shift_;
    std::shared_ptr<const SymmetricTensor> a_;
    BOperator b_;
};

enum class PointClass {
    ZeroPoint,      // B x^m below eta1: the trivial critical point
    EigenpairPoint, // B x^m above eta2: x is (approximately) an eigenvector
    Inconclusive,   // B x^m inside [eta1, eta2]
};

const char* to_string(PointClass c);

/// A solver endpoint classified against the eta1/eta2 band.
struct CriticalPoint {
    Eigen::VectorXd x;
    double objective_value = 0.0;
    double grad_norm = 0.0;
    PointClass classification = PointClass::Inconclusive;
    std::optional<Eigenpair> recovered; // present iff EigenpairPoint
    double b_form = 0.0;                // B x^m at x
};

/// Recovers the eigenvalue at a (near-)critical x. The algebraic route
/// lambda = -B x^m - t (F1) or +B x^m - t (F2) provides the value; the
/// objective-value route -sqrt(-2m s) - t is cross-checked and any
/// disagreement beyond 1e-6*(1+|lambda|) sets the consistency flag to false.
/// The residual is computed against the original A and B with the shift
/// removed. Throws std::domain_error when B x^m < eta1 (zero critical point).
Eigenpair recover_lambda(const Objective& obj, const Eigen::VectorXd& x, double eta1 = 1e-10);

CriticalPoint classify_critical_point(const Objective& obj, const Eigen::VectorXd& x,
                                      double objective_value, double grad_norm,
                                      double eta1 = 1e-10, double eta2 = 1e-4);

} // namespace teig
