#include "teig/generators.hpp"

#include "teig/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teig {

namespace {

constexpr int kOrder = 4;

std::size_t diag_offset(int n, int k)
{
    std::size_t off = 0;
    for (int level = 0; level < kOrder; ++level) off = off * n + k;
    return off;
}

void check_n(const char* who, int n, int min_n)
{
    if (n < min_n)
        throw std::invalid_argument(std::string(who) + ": n must be >= " + std::to_string(min_n) + ", got " + std::to_string(n));
}

} // namespace

SymmetricTensor example1(int n)
{
    check_n("example1", n, 1);
    std::vector<double> v(dense_size(kOrder, n), 0.1);
    for (int k = 0; k < n; ++k) v[diag_offset(n, k)] = -0.9;
    return SymmetricTensor(kOrder, n, std::move(v), true);
}

SymmetricTensor example2(int n, std::uint64_t seed)
{
    check_n("example2", n, 1);
    Rng rng(seed);
    std::vector<double> raw(dense_size(kOrder, n));
    for (double& x : raw) x = rng.normal();
    return symmetrize(SymmetricTensor(kOrder, n, std::move(raw), false));
}

SymmetricTensor example3(int n, std::uint64_t seed)
{
    check_n("example3", n, 1);
    Rng rng(seed);
    std::vector<double> raw(dense_size(kOrder, n));
    for (double& x : raw) {
        double y = rng.normal();
        while (y == 0.0) y = rng.normal();
        x = 1.0 / y;
    }
    return symmetrize(SymmetricTensor(kOrder, n, std::move(raw), false));
}

SymmetricTensor example4(int n, std::uint64_t seed)
{
    check_n("example4", n, 2);
    Rng rng(seed);
    std::vector<double> raw(dense_size(kOrder, n));
    for (double& x : raw) x = rng.normal();
    SymmetricTensor sym = symmetrize(SymmetricTensor(kOrder, n, std::move(raw), false));
    // Diagonal slots are singleton permutation classes, so overwriting them
    // after symmetrization keeps the tensor symmetric.
    std::vector<double> v = sym.values();
    for (int k = 0; k + 1 < n; ++k) v[diag_offset(n, k)] = 1000.0;
    v[diag_offset(n, n - 1)] = -1.0;
    return SymmetricTensor(kOrder, n, std::move(v), true);
}

SymmetricTensor example5()
{
    Eigen::VectorXd d(3);
    d << 1.0, 0.0, -0.001;
    return SymmetricTensor::diagonal(kOrder, d);
}

SymmetricTensor example6(int n, std::uint64_t seed)
{
    check_n("example6", n, 1);
    Rng rng(seed);
    Eigen::VectorXd d(n);
    for (int k = 0; k + 1 < n; ++k) d[k] = rng.uniform01();
    d[n - 1] = 0.0;
    return SymmetricTensor::diagonal(kOrder, d);
}

SymmetricTensor example7(int n)
{
    check_n("example7", n, 1);
    Eigen::VectorXd d(n);
    for (int k = 0; k < n; ++k) d[k] = 10.0 * (k + 1);
    return SymmetricTensor::diagonal(kOrder, d);
}

SymmetricTensor make_example(int id, int n, std::uint64_t seed)
{
    switch (id) {
    case 1: return example1(n);
    case 2: return example2(n, seed);
    case 3: return example3(n, seed);
    case 4: return example4(n, seed);
    case 5:
        if (n != 3)
            throw std::invalid_argument("example5 has fixed n = 3, got n = " + std::to_string(n));
        return example5();
    case 6: return example6(n, seed);
    case 7: return example7(n);
    default:
        throw std::invalid_argument("unknown example id " + std::to_string(id) + " (valid: 1..7)");
    }
}

SymmetricTensor make_example(const std::string& name, int n, std::uint64_t seed)
{
    if (name.rfind("example", 0) == 0 && name.size() == 8)
        return make_example(name[7] - '0', n, seed);
    throw std::invalid_argument("unknown tensor generator '" + name + "' (valid: example1..example7)");
}

std::vector<double> diagonal_z_oracle(const std::vector<double>& d)
{
    const int n = static_cast<int>(d.size());
    if (n < 1 || n > 20)
        throw std::invalid_argument("diagonal_z_oracle: need 1 <= n <= 20, got " + std::to_string(n));

    std::vector<int> pos, neg;
    bool has_zero = false;
    for (int i = 0; i < n; ++i) {
        if (d[i] > 0.0) pos.push_back(i);
        else if (d[i] < 0.0) neg.push_back(i);
        else has_zero = true;
    }

    std::vector<double> out;
    auto add_subsets = [&](const std::vector<int>& idx) {
        const std::size_t count = std::size_t{1} << idx.size();
        for (std::size_t mask = 1; mask < count; ++mask) {
            double inv_sum = 0.0;
            for (std::size_t b = 0; b < idx.size(); ++b)
                if (mask & (std::size_t{1} << b)) inv_sum += 1.0 / d[idx[b]];
            out.push_back(1.0 / inv_sum);
        }
    };
    add_subsets(pos);
    add_subsets(neg);
    if (has_zero) out.push_back(0.0);

    std::sort(out.begin(), out.end());
    std::vector<double> dedup;
    for (double v : out)
        if (dedup.empty() || std::abs(v - dedup.back()) > 1e-12) dedup.push_back(v);
    return dedup;
}

} // namespace teig
