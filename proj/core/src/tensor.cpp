#include "teig/tensor.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace teig {

namespace {

void check_shape(int order, int dim)
{
    if (order < 2 || order % 2 != 0)
        throw std::invalid_argument("tensor order must be a positive even integer, got " + std::to_string(order));
    if (dim < 1)
        throw std::invalid_argument("tensor dimension must be >= 1, got " + std::to_string(dim));
}

void check_dim(const char* who, const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    if (x.size() != a.dim()) {
        std::ostringstream msg;
        msg << who << ": x has length " << x.size() << ", expected " << a.dim();
        throw std::invalid_argument(msg.str());
    }
}

// Visits all non-decreasing index tuples (one canonical representative per
// permutation class). Returns false when exhausted.
bool next_canonical(std::vector<int>& c, int n)
{
    int k = static_cast<int>(c.size()) - 1;
    while (k >= 0 && c[k] == n - 1) --k;
    if (k < 0) return false;
    const int v = c[k] + 1;
    for (std::size_t j = k; j < c.size(); ++j) c[j] = v;
    return true;
}

} // namespace

std::size_t dense_size(int order, int dim)
{
    check_shape(order, dim);
    std::size_t s = 1;
    for (int k = 0; k < order; ++k) {
        if (s > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(dim))
            throw std::invalid_argument("tensor too large: dim^order overflows");
        s *= static_cast<std::size_t>(dim);
    }
    return s;
}

SymmetricTensor::SymmetricTensor(int order, int dim, std::vector<double> values, bool symmetric)
    : order_(order), dim_(dim), symmetric_(symmetric), values_(std::move(values))
{
    const std::size_t expect = dense_size(order, dim);
    if (values_.size() != expect) {
        std::ostringstream msg;
        msg << "tensor value array has length " << values_.size() << ", expected " << expect;
        throw std::invalid_argument(msg.str());
    }
}

SymmetricTensor SymmetricTensor::zeros(int order, int dim)
{
    return SymmetricTensor(order, dim, std::vector<double>(dense_size(order, dim), 0.0), true);
}

SymmetricTensor SymmetricTensor::diagonal(int order, const Eigen::VectorXd& d)
{
    const int n = static_cast<int>(d.size());
    std::vector<double> v(dense_size(order, n), 0.0);
    for (int k = 0; k < n; ++k) {
        std::size_t off = 0;
        for (int level = 0; level < order; ++level) off = off * n + k;
        v[off] = d[k];
    }
    return SymmetricTensor(order, n, std::move(v), true);
}

std::size_t SymmetricTensor::flat_index(std::span<const int> idx) const
{
    if (static_cast<int>(idx.size()) != order_)
        throw std::invalid_argument("multi-index has " + std::to_string(idx.size()) + " components, expected " + std::to_string(order_));
    std::size_t off = 0;
    for (int i : idx) {
        if (i < 0 || i >= dim_)
            throw std::out_of_range("multi-index component " + std::to_string(i) + " outside [0, " + std::to_string(dim_) + ")");
        off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
}

SymmetricTensor SymmetricTensor::verified_symmetric() const
{
    const int m = order_;
    const int n = dim_;
    std::vector<int> c(m, 0);
    std::vector<int> arr(m);
    do {
        arr.assign(c.begin(), c.end());
        const double ref = values_[flat_index(arr)];
        while (std::next_permutation(arr.begin(), arr.end())) {
            const double v = values_[flat_index(arr)];
            if (v != ref) {
                std::ostringstream msg;
                msg << "tensor is not symmetric: entry at (";
                for (std::size_t j = 0; j < arr.size(); ++j) msg << (j ? "," : "") << arr[j];
                msg << ") differs from its sorted permutation (";
                for (std::size_t j = 0; j < c.size(); ++j) msg << (j ? "," : "") << c[j];
                msg << ")";
                throw std::runtime_error(msg.str());
            }
        }
    } while (next_canonical(c, n));
    return SymmetricTensor(order_, dim_, values_, true);
}

bool is_symmetric_data(const SymmetricTensor& t)
{
    try {
        (void)t.verified_symmetric();
        return true;
    } catch (const std::runtime_error&) {
        return false;
    }
}

namespace {

double form_order4(const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    const int n = a.dim();
    const double* v = a.values().data();
    double total = 0.0;
    std::size_t off = 0;
    for (int i = 0; i < n; ++i) {
        const double xi = x[i];
        double acc_i = 0.0;
        for (int j = 0; j < n; ++j) {
            const double xij = xi * x[j];
            for (int k = 0; k < n; ++k) {
                const double xijk = xij * x[k];
                double inner = 0.0;
                for (int l = 0; l < n; ++l) inner += v[off + l] * x[l];
                off += n;
                acc_i += xijk * inner;
            }
        }
        total += acc_i;
    }
    return total;
}

// Row-major recursion over the remaining levels, carrying the partial
// product of x factors picked so far.
double form_generic(const double* v, const Eigen::VectorXd& x, int n, int levels,
                    std::size_t base, double prod)
{
    if (levels == 1) {
        double acc = 0.0;
        const double* row = v + base * static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i) acc += row[i] * x[i];
        return prod * acc;
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += form_generic(v, x, n, levels - 1, base * n + i, prod * x[i]);
    return acc;
}

} // namespace

double evaluate_form(const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    check_dim("evaluate_form", a, x);
    if (a.order() == 4) return form_order4(a, x);
    return form_generic(a.values().data(), x, a.dim(), a.order(), 0, 1.0);
}

Eigen::VectorXd contract(const SymmetricTensor& a, const Eigen::VectorXd& x)
{
    check_dim("contract", a, x);
    const int n = a.dim();
    const double* v = a.values().data();
    Eigen::VectorXd out(n);
    if (a.order() == 4) {
        std::size_t off = 0;
        for (int i = 0; i < n; ++i) {
            double acc_i = 0.0;
            for (int j = 0; j < n; ++j) {
                const double xj = x[j];
                for (int k = 0; k < n; ++k) {
                    const double xjk = xj * x[k];
                    double inner = 0.0;
                    for (int l = 0; l < n; ++l) inner += v[off + l] * x[l];
                    off += n;
                    acc_i += xjk * inner;
                }
            }
            out[i] = acc_i;
        }
        return out;
    }
    const std::size_t block = a.size() / static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) {
        if (a.order() == 2) {
            double acc = 0.0;
            const double* row = v + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) acc += row[j] * x[j];
            out[i] = acc;
        } else {
            out[i] = form_generic(v + static_cast<std::size_t>(i) * block, x, n, a.order() - 1, 0, 1.0);
        }
    }
    return out;
}

SymmetricTensor symmetrize(const SymmetricTensor& t)
{
    const int m = t.order();
    const int n = t.dim();
    const double* in = t.values().data();
    std::vector<double> out(t.size(), 0.0);

    std::size_t fact = 1;
    for (int k = 2; k <= m; ++k) fact *= k;

    std::vector<int> c(m, 0);
    std::vector<int> pos(m);
    std::vector<int> arr(m);
    do {
        // Mean over all m! position permutations, centered on the canonical
        // slot so that a class of identical values reproduces them exactly.
        std::iota(pos.begin(), pos.end(), 0);
        std::size_t off0 = 0;
        for (int j = 0; j < m; ++j) off0 = off0 * n + c[j];
        const double v0 = in[off0];
        double delta = 0.0;
        do {
            std::size_t off = 0;
            for (int j = 0; j < m; ++j) off = off * n + c[pos[j]];
            delta += in[off] - v0;
        } while (std::next_permutation(pos.begin(), pos.end()));
        const double mean = v0 + delta / static_cast<double>(fact);

        arr.assign(c.begin(), c.end());
        do {
            std::size_t off = 0;
            for (int j = 0; j < m; ++j) off = off * n + arr[j];
            out[off] = mean;
        } while (std::next_permutation(arr.begin(), arr.end()));
    } while (next_canonical(c, n));

    return SymmetricTensor(m, n, std::move(out), true);
}

} // namespace teig
