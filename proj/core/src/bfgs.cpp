#include "teig/bfgs.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace teig {

const char* to_string(Termination t)
{
    switch (t) {
    case Termination::GradTol: return "grad_tol";
    case Termination::StepTol: return "step_tol";
    case Termination::MaxIter: return "max_iter";
    case Termination::LineSearchFail: return "line_search_fail";
    }
    return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LsPoint {
    double alpha = 0.0;
    double phi = 0.0;
    double dphi = 0.0;
};

struct LsOutcome {
    bool ok = false;
    double alpha = 0.0;
    double f = 0.0;
    Eigen::VectorXd x;
    Eigen::VectorXd g;
};

class LineSearch {
public:
    LineSearch(const ObjectiveFn& f, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
               double phi0, double dphi0, const SolverConfig& cfg)
        : f_(f), x_(x), p_(p), phi0_(phi0), dphi0_(dphi0), cfg_(cfg),
          budget_(cfg.max_line_search_steps),
          // Near the value floor the true decrease per step drops below one
          // ulp of phi; the sufficient-decrease test gets this allowance so
          // curvature-satisfying points remain acceptable there.
          noise_(16.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(phi0)))
    {
    }

    LsOutcome run(double alpha_init)
    {
        LsPoint prev{0.0, phi0_, dphi0_};
        double alpha = alpha_init;
        bool first = true;
        while (budget_ > 0) {
            LsPoint cur;
            if (!eval(alpha, cur)) {
                // Non-finite trial value: pull back toward the last finite point.
                alpha = 0.5 * (prev.alpha + alpha);
                if (alpha <= prev.alpha) break;
                continue;
            }
            if (wolfe_ok(cur))
                return accept(cur);
            if (cur.phi > phi0_ + cfg_.wolfe_c1 * alpha * dphi0_ || (!first && cur.phi >= prev.phi))
                return zoom(prev, cur);
            if (cur.dphi >= 0.0)
                return zoom(cur, prev);
            prev = cur;
            alpha *= 2.0;
            if (alpha > 1e12) break;
            first = false;
        }
        return {};
    }

private:
    bool eval(double alpha, LsPoint& out)
    {
        --budget_;
        trial_x_ = x_ + alpha * p_;
        trial_f_ = f_(trial_x_, trial_g_);
        out.alpha = alpha;
        out.phi = trial_f_;
        out.dphi = trial_g_.dot(p_);
        if (!std::isfinite(trial_f_) || !trial_g_.allFinite()) {
            out.phi = kInf;
            out.dphi = 0.0;
            return false;
        }
        return true;
    }

    LsOutcome accept(const LsPoint& pt)
    {
        LsOutcome out;
        out.ok = true;
        out.alpha = pt.alpha;
        out.f = trial_f_;
        out.x = std::move(trial_x_);
        out.g = std::move(trial_g_);
        return out;
    }

    bool wolfe_ok(const LsPoint& pt) const
    {
        return std::abs(pt.dphi) <= -cfg_.wolfe_c2 * dphi0_
            && pt.phi <= phi0_ + cfg_.wolfe_c1 * pt.alpha * dphi0_ + noise_;
    }

    // Shrinks [lo, hi] where lo satisfies Armijo with the lower value and the
    // minimizer lies between them. Quadratic interpolation from the lo end,
    // bisection when the fit lands too close to an endpoint.
    LsOutcome zoom(LsPoint lo, LsPoint hi)
    {
        while (budget_ > 0) {
            const double d = hi.alpha - lo.alpha;
            if (std::abs(d) <= 1e-16 * std::max(1.0, std::abs(lo.alpha))) break;
            double alpha_j;
            const double denom = 2.0 * (hi.phi - lo.phi - lo.dphi * d);
            if (std::isfinite(denom) && denom != 0.0) {
                alpha_j = lo.alpha - lo.dphi * d * d / denom;
                const double rel = (alpha_j - lo.alpha) / d;
                if (!(rel >= 0.1 && rel <= 0.9)) alpha_j = lo.alpha + 0.5 * d;
            } else {
                alpha_j = lo.alpha + 0.5 * d;
            }
            LsPoint cur;
            if (!eval(alpha_j, cur)) {
                hi = cur; // infinite value: shrink toward lo
                continue;
            }
            if (wolfe_ok(cur))
                return accept(cur);
            if (cur.phi > phi0_ + cfg_.wolfe_c1 * alpha_j * dphi0_ || cur.phi >= lo.phi) {
                hi = cur;
            } else {
                if (cur.dphi * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                lo = cur;
            }
        }
        return {};
    }

    const ObjectiveFn& f_;
    const Eigen::VectorXd& x_;
    const Eigen::VectorXd& p_;
    double phi0_;
    double dphi0_;
    const SolverConfig& cfg_;
    int budget_;
    double noise_;
    Eigen::VectorXd trial_x_;
    Eigen::VectorXd trial_g_;
    double trial_f_ = 0.0;
};

void validate(const SolverConfig& cfg)
{
    if (!(cfg.grad_tol > 0.0) || !(cfg.step_tol > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (cfg.max_iter < 1)
        throw std::invalid_argument("max_iter must be >= 1");
    if (!(0.0 < cfg.wolfe_c1 && cfg.wolfe_c1 < cfg.wolfe_c2 && cfg.wolfe_c2 < 1.0))
        throw std::invalid_argument("Wolfe constants must satisfy 0 < c1 < c2 < 1");
    if (cfg.max_line_search_steps < 1)
        throw std::invalid_argument("max_line_search_steps must be >= 1");
}

} // namespace

SolveReport minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0, const SolverConfig& cfg)
{
    validate(cfg);
    const auto t_start = std::chrono::steady_clock::now();
    const int n = static_cast<int>(x0.size());

    Eigen::VectorXd x = x0;
    Eigen::VectorXd g(n);
    double fx = f(x, g);
    if (!std::isfinite(fx) || !g.allFinite())
        throw std::invalid_argument("minimize: objective or gradient is not finite at the start point");

    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    bool scale_pending = true;
    int iter = 0;
    Termination termination;

    for (;;) {
        const double gnorm = g.lpNorm<Eigen::Infinity>();
        if (gnorm <= cfg.grad_tol) {
            termination = Termination::GradTol;
            break;
        }
        if (iter >= cfg.max_iter) {
            termination = Termination::MaxIter;
            break;
        }

        Eigen::VectorXd p = -(h * g);
        double dphi0 = g.dot(p);
        if (!(dphi0 < 0.0)) {
            // Lost descent (numerical breakdown of the approximation): restart.
            h.setIdentity();
            scale_pending = true;
            p = -g;
            dphi0 = -g.squaredNorm();
        }

        const double alpha_init = iter == 0 ? std::min(1.0, 1.0 / std::max(1.0, gnorm)) : 1.0;
        LineSearch search(f, x, p, fx, dphi0, cfg);
        LsOutcome ls = search.run(alpha_init);
        if (!ls.ok) {
            termination = Termination::LineSearchFail;
            break;
        }
        if (cfg.debug_checks) {
            if (ls.f > fx + cfg.wolfe_c1 * ls.alpha * dphi0 + 1e-12 * (1.0 + std::abs(fx)))
                throw std::logic_error("bfgs debug: accepted step violates the Armijo condition");
            if (std::abs(ls.g.dot(p)) > -cfg.wolfe_c2 * dphi0 * (1.0 + 1e-12))
                throw std::logic_error("bfgs debug: accepted step violates the curvature condition");
        }

        const Eigen::VectorXd s = ls.x - x;
        const Eigen::VectorXd y = ls.g - g;
        const double df = std::abs(ls.f - fx);
        const bool step_small = s.lpNorm<Eigen::Infinity>() <= cfg.step_tol * (1.0 + ls.x.lpNorm<Eigen::Infinity>());
        const bool value_small = df <= cfg.step_tol * (1.0 + std::abs(ls.f));

        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (scale_pending) {
                h *= sy / y.squaredNorm();
                scale_pending = false;
            }
            const double rho = 1.0 / sy;
            const Eigen::VectorXd hy = h * y;
            const double yhy = y.dot(hy);
            h.noalias() -= rho * (s * hy.transpose() + hy * s.transpose());
            h.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
        }
        // else: update skipped to preserve positive definiteness

        x = std::move(ls.x);
        fx = ls.f;
        g = std::move(ls.g);
        ++iter;

        if (cfg.debug_checks) {
            const double shs = s.dot(h * s);
            if (!(shs > 0.0))
                throw std::logic_error("bfgs debug: inverse-Hessian approximation lost positive definiteness");
        }

        // The gradient test outranks the step test when a step lands on both.
        if (g.lpNorm<Eigen::Infinity>() <= cfg.grad_tol) {
            termination = Termination::GradTol;
            break;
        }
        if (step_small && value_small) {
            termination = Termination::StepTol;
            break;
        }
    }

    SolveReport report;
    report.iterations = iter;
    report.final_grad_norm = g.lpNorm<Eigen::Infinity>();
    report.objective_value = fx;
    report.termination = termination;
    report.x = std::move(x);
    report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

SolveReport minimize(const Objective& obj, const Eigen::VectorXd& x0, const SolverConfig& cfg)
{
    if (x0.size() != obj.dim())
        throw std::invalid_argument("minimize: x0 has length " + std::to_string(x0.size()) + ", expected " + std::to_string(obj.dim()));
    return minimize(
        [&obj](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
            return obj.value_and_gradient(x, grad);
        },
        x0, cfg);
}

} // namespace teig
