#pragma once

#include "teig/variational.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>

namespace teig {

struct SolverConfig {
    double grad_tol = 1e-10;  // infinity norm of the gradient
    double step_tol = 1e-12;  // applied to both the step and the value change
    int max_iter = 1000;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
    int max_line_search_steps = 40; // function evaluations per line search
    std::optional<std::uint64_t> seed; // reserved; the solver itself is deterministic
    bool debug_checks = false; // verify Wolfe conditions and curvature on every accepted step
};

enum class Termination { GradTol, StepTol, MaxIter, LineSearchFail };

const char* to_string(Termination t);

struct SolveReport {
    int iterations = 0;
    double final_grad_norm = 0.0; // infinity norm
    double objective_value = 0.0;
    Termination termination = Termination::MaxIter;
    Eigen::VectorXd x;
    double wall_time = 0.0; // seconds
};

/// Objective callback: writes the gradient at x into `grad` and returns the
/// value.
using ObjectiveFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Full-memory BFGS (dense inverse-Hessian approximation, identity start with
/// standard first-step scaling) with a bracketing strong-Wolfe line search.
/// Deterministic given (f, x0, cfg). Throws std::invalid_argument when the
/// objective or gradient is not finite at x0; non-finite values encountered
/// later end the run with LineSearchFail at the last finite iterate.
SolveReport minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0, const SolverConfig& cfg = {});

SolveReport minimize(const Objective& obj, const Eigen::VectorXd& x0, const SolverConfig& cfg = {});

} // namespace teig
