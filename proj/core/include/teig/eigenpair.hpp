#pragma once

#include "teig/b_operator.hpp"
#include "teig/tensor.hpp"

#include <Eigen/Core>

namespace teig {

enum class Normalization {
    UnitSphere, // x rescaled to ||x||_2 = 1
    BLevelSet,  // x left on the level set B x^m = |lambda|
};

/// A computed generalized eigenpair A x^{m-1} = lambda B x^{m-1} together
/// with its independently checkable accuracy.
struct Eigenpair {
    double lambda = 0.0;
    Eigen::VectorXd x;
    /// ||A x^{m-1} - lambda * B x^{m-1}||_2 evaluated at the stored
    /// normalization.
    double residual = 0.0;
    BKind b_kind = BKind::IdentityPower;
    Normalization normalization = Normalization::UnitSphere;
    /// False when the two lambda recovery routes (algebraic and
    /// objective-value) disagreed beyond tolerance.
    bool dual_recovery_consistent = true;
};

/// Residual of a candidate pair after normalizing x to the unit sphere:
/// ||A xhat^{m-1} - lambda * B xhat^{m-1}||_2 with xhat = x / ||x||_2.
/// Throws on a zero vector.
double residual(const SymmetricTensor& a, const BOperator& b, double lambda,
                const Eigen::VectorXd& x);

} // namespace teig
