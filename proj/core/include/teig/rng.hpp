#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace teig {

/// Seeded random source with a fully specified output stream: the engine is
/// std::mt19937_64 (bit-exact by the C++ standard), uniforms map the top 53
/// bits onto [0,1), and normal variates use the Marsaglia polar method (a
/// Box-Muller variant drawing only log and sqrt), consuming uniforms in
/// documented order. MATLAB streams are not reproduced.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal variate. Pairs are generated together; the second of
    /// each pair is cached and returned by the next call.
    double normal();

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Deterministic per-index child seed: splitmix64's mix function applied to
/// master + (index + 1) * golden gamma.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t index);

/// Unit-norm start vector: y with i.i.d. standard normal components, scaled
/// to y / ||y||_2.
Eigen::VectorXd normalized_random_start(int n, Rng& rng);

} // namespace teig
