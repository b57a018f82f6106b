#pragma once

#include "teig/eigenpair.hpp"
#include "teig/tensor.hpp"

#include <Eigen/Core>

#include <vector>

namespace teig {

struct SshopmConfig {
    double alpha = -2.0;   // scalar shift; negative values drive minimization
    double tol = 1e-12;    // on the change of successive eigenvalue estimates
    int max_iters = 5000;
    bool record_trace = false; // store per-iteration lambda and iterate norm
};

enum class SshopmTermination { Tol, MaxIters };

struct SshopmResult {
    Eigenpair pair;
    int iterations = 0;
    SshopmTermination termination = SshopmTermination::MaxIters;
    double final_step_inf = 0.0; // ||x_{k+1} - x_k||_inf of the last update
    std::vector<double> lambda_trace; // filled when record_trace
    std::vector<double> norm_trace;
};

/// Shifted symmetric higher-order power method for Z-eigenpairs, fixed-point
/// iteration on the unit sphere:
///   lambda_k = A x_k^m;  y = A x_k^{m-1} + alpha x_k  (negated for alpha < 0);
///   x_{k+1} = y / ||y||_2;  stop when |lambda_{k+1} - lambda_k| <= tol.
/// Requires even order and a unit-norm start. Throws when the shift
/// annihilates the iterate (y = 0).
SshopmResult sshopm_run(const SymmetricTensor& a, const Eigen::VectorXd& x0,
                        const SshopmConfig& cfg = {});

} // namespace teig
