#pragma once

#include "teig/tensor.hpp"

#include <Eigen/Core>

#include <memory>

namespace teig {

enum class BKind {
    UnitTensor,    // B x^m = sum_i x_i^m         (H-eigenvalue metric)
    IdentityPower, // B x^m = (x^T x)^(m/2)       (Z-eigenvalue metric)
    MatrixPower,   // B x^m = (x^T D x)^(m/2), D symmetric positive definite
    ExplicitDense, // dense symmetric tensor, positive definiteness caller-asserted
};

const char* to_string(BKind kind);

/// Positive definite metric tensor evaluated implicitly: `form` computes
/// B x^m and `contract` computes B x^{m-1}, normalized so that
/// grad(B x^m) = m * B x^{m-1}. The three closed-form kinds never
/// materialize entries; `to_dense` exists for cross-checks.
class BOperator {
public:
    static BOperator unit_tensor(int order, int dim);
    static BOperator identity_power(int order, int dim);
    /// Requires even order and symmetric positive definite `d` (validated by
    /// a Cholesky factorization that fails on non-SPD input).
    static BOperator matrix_power(int order, const Eigen::MatrixXd& d);
    /// Requires a tensor with the symmetry flag set. Positive definiteness is
    /// not verified; the caller's assertion is recorded as a flag.
    static BOperator explicit_dense(SymmetricTensor b, bool positive_definite_asserted);
    static BOperator explicit_dense(std::shared_ptr<const SymmetricTensor> b,
                                    bool positive_definite_asserted);

    BKind kind() const { return kind_; }
    int order() const { return order_; }
    int dim() const { return dim_; }

    double form(const Eigen::VectorXd& x) const;
    Eigen::VectorXd contract(const Eigen::VectorXd& x) const;

    /// A constant mu with B x^m >= mu * ||x||_m^m for all x. Available for
    /// the two closed-form kinds only (both return 1).
    double min_h_eigenvalue_lower_bound() const;

    /// Dense materialization (symmetrized product tensor for the matrix
    /// kinds). Intended for tests and shift cross-checks at small sizes.
    SymmetricTensor to_dense() const;

    bool positive_definite_asserted() const { return pd_asserted_; }
    const Eigen::MatrixXd& matrix() const;
    const SymmetricTensor& dense() const;

private:
    BOperator(BKind kind, int order, int dim);

    BKind kind_;
    int order_;
    int dim_;
    bool pd_asserted_ = true;
    Eigen::MatrixXd d_;
    std::shared_ptr<const SymmetricTensor> dense_;
};

} // namespace teig
