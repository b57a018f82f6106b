#pragma once

#include "teig/rng.hpp"
#include "teig/tensor.hpp"

#include <Eigen/Core>

#include <cmath>
#include <functional>
#include <vector>

namespace teig::test {

// Independent oracles. These deliberately avoid the library's evaluation
// strategies: the brute-force form recomputes the full x-product per index
// tuple, and the eigenvalue oracle is a plain Jacobi sweep.

inline double brute_force_form(const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    const int m = a.order();
    const int n = a.dim();
    std::vector<int> idx(m, 0);
    double sum = 0.0;
    for (std::size_t off = 0; off < a.size(); ++off) {
        double term = a.values()[off];
        for (int p = 0; p < m; ++p) term *= x[idx[p]];
        sum += term;
        for (int p = m - 1; p >= 0; --p) {
            if (++idx[p] < n) break;
            idx[p] = 0;
        }
    }
    return sum;
}

inline Eigen::VectorXd brute_force_contract(const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    const int m = a.order();
    const int n = a.dim();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    std::vector<int> idx(m, 0);
    for (std::size_t off = 0; off < a.size(); ++off) {
        double term = a.values()[off];
        for (int p = 1; p < m; ++p) term *= x[idx[p]];
        out[idx[0]] += term;
        for (int p = m - 1; p >= 0; --p) {
            if (++idx[p] < n) break;
            idx[p] = 0;
        }
    }
    return out;
}

/// Central finite differences of a scalar function.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                   const Eigen::VectorXd& x, double h)
{
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xp[i] = xi + h;
        const double fp = f(xp);
        xp[i] = xi - h;
        const double fm = f(xp);
        xp[i] = xi;
        g[i] = (fp - fm) / (2.0 * h);
    }
    return g;
}

/// Eigenvalues of a small symmetric matrix by classical Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a)
{
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0)
                    / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
                r(p, p) = c;
                r(q, q) = c;
                r(p, q) = s;
                r(q, p) = -s;
                a = r.transpose() * a * r;
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

/// Symmetrized standard-normal test tensor.
inline SymmetricTensor random_symmetric(int order, int n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> raw(dense_size(order, n));
    for (double& v : raw) v = rng.normal();
    return symmetrize(SymmetricTensor(order, n, std::move(raw), false));
}

inline Eigen::VectorXd random_vector(int n, Rng& rng, double scale = 1.0)
{
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = scale * rng.normal();
    return x;
}

} // namespace teig::test
