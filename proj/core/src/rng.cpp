#include "teig/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace teig {

double Rng::normal()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * factor;
    has_cached_ = true;
    return u * factor;
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Eigen::VectorXd normalized_random_start(int n, Rng& rng)
{
    if (n < 1) throw std::invalid_argument("normalized_random_start: n must be >= 1");
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.normal();
    const double norm = y.norm();
    if (norm == 0.0) { // astronomically unlikely; retry keeps the contract
        return normalized_random_start(n, rng);
    }
    return y / norm;
}

} // namespace teig
