#pragma once

#include "teig/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace teig {

// Fourth-order test tensor families. The seeded families draw entries in
// row-major order from the documented generator (see rng.hpp), so identical
// (n, seed) inputs reproduce bit-identical tensors.

/// Diagonal -0.9, every other entry 0.1.
SymmetricTensor example1(int n);

/// Symmetrized standard-normal tensor.
SymmetricTensor example2(int n, std::uint64_t seed);

/// Entrywise reciprocals of standard normals (exact zeros redrawn), then
/// symmetrized. Heavy-tailed.
SymmetricTensor example3(int n, std::uint64_t seed);

/// Symmetrized standard-normal tensor whose diagonal is overwritten last:
/// 1000 at (k,k,k,k) for k < n-1 and -1 at (n-1,...,n-1). Not positive
/// semidefinite for n >= 2.
SymmetricTensor example4(int n, std::uint64_t seed);

/// Fixed 3-dimensional diagonal tensor diag(1, 0, -0.001). Not positive
/// semidefinite.
SymmetricTensor example5();

/// Diagonal tensor with uniform(0,1) entries except a zero last entry.
/// Positive semidefinite but not definite.
SymmetricTensor example6(int n, std::uint64_t seed);

/// Positive definite diagonal tensor with entries 10, 20, ..., 10n.
SymmetricTensor example7(int n);

/// Lookup by id 1..7 ("example3" style names accepted by the overload).
/// Throws std::invalid_argument for unknown ids, bad n, or a seeded family
/// without meaning for the given arguments (example5 has fixed n = 3).
SymmetricTensor make_example(int id, int n, std::uint64_t seed);
SymmetricTensor make_example(const std::string& name, int n, std::uint64_t seed);

/// All Z-eigenvalues of the fourth-order diagonal tensor with diagonal d,
/// sorted ascending and deduplicated within 1e-12. A support set S yields
/// lambda_S = 1 / sum_{i in S} (1/d_i) exactly when all d_i, i in S, share
/// one sign (x_i^2 = lambda / d_i must be positive); each zero diagonal
/// entry contributes lambda = 0. Exhaustive over subsets; requires
/// d.size() <= 20.
std::vector<double> diagonal_z_oracle(const std::vector<double>& d);

} // namespace teig
