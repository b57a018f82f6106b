#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace teig {

/// Dense even-order real tensor with all n^m entries stored in row-major
/// multi-index order: entry (i1,...,im) lives at offset
/// sum_k i_k * n^(m-k), zero based.
///
/// Instances are logically immutable once constructed and safe to share
/// across threads; every operation on them is a pure function.
class SymmetricTensor {
public:
    /// Wraps a flat value array. `symmetric` records whether the values are
    /// known to be invariant under index permutations (construction by
    /// `symmetrize` or a diagonal builder guarantees this exactly).
    SymmetricTensor(int order, int dim, std::vector<double> values, bool symmetric);

    /// All-zero tensor (trivially symmetric).
    static SymmetricTensor zeros(int order, int dim);

    /// Tensor with d[k] at (k,k,...,k) and zero elsewhere.
    static SymmetricTensor diagonal(int order, const Eigen::VectorXd& d);

    int order() const { return order_; }
    int dim() const { return dim_; }
    bool is_symmetric() const { return symmetric_; }
    std::size_t size() const { return values_.size(); }

    const std::vector<double>& values() const { return values_; }

    /// Row-major flat offset of a full multi-index.
    std::size_t flat_index(std::span<const int> idx) const;

    double at(std::span<const int> idx) const { return values_[flat_index(idx)]; }
    double at(std::initializer_list<int> idx) const
    {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }

    /// Returns a copy whose symmetry flag is set, after checking that every
    /// permutation of every multi-index stores the identical value. Throws
    /// std::runtime_error naming the first offending index pair.
    SymmetricTensor verified_symmetric() const;

private:
    int order_;
    int dim_;
    bool symmetric_;
    std::vector<double> values_;
};

/// n^m as size_t, throwing on overflow.
std::size_t dense_size(int order, int dim);

/// The scalar multilinear form: sum over all n^m index tuples of
/// A[i1,...,im] * x[i1] * ... * x[im]. Fixed row-major summation order.
double evaluate_form(const SymmetricTensor& a, const Eigen::VectorXd& x);

/// The vector of partial contractions: out[i] = sum over (i2,...,im) of
/// A[i,i2,...,im] * x[i2] * ... * x[im]. For symmetric A this equals
/// grad(A x^m) / m.
Eigen::VectorXd contract(const SymmetricTensor& a, const Eigen::VectorXd& x);

/// Symmetrizes a raw dense tensor: every output entry is the arithmetic mean
/// of the input over all m! permutations of its multi-index. The same mean is
/// written to every permuted slot, so the result is exactly symmetric and the
/// operation is idempotent at the bit level.
SymmetricTensor symmetrize(const SymmetricTensor& t);

/// True when every permutation class stores one identical value.
bool is_symmetric_data(const SymmetricTensor& t);

} // namespace teig
