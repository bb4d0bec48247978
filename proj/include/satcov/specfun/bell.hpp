#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace satcov {

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= static_cast<double>(n - k + j) / j;
    return r;
}

// Product m(m-1)...(m-q+1); empty product for q = 0. This is the falling
// factorial even though some references label the same product a "rising
// Pochhammer symbol".
inline int64_t falling_product(int m, int q) {
    if (m < 1 || q < 0) throw std::domain_error("falling_product: require m >= 1, q >= 0");
    int64_t r = 1;
    for (int k = 0; k < q; ++k) r *= (m - k);
    return r;
}

// Rising factorial (Pochhammer) x(x+1)...(x+q-1).
inline double rising_product(double x, int q) {
    if (q < 0) throw std::domain_error("rising_product: require q >= 0");
    double r = 1.0;
    for (int k = 0; k < q; ++k) r *= (x + k);
    return r;
}

// Table of partial Bell polynomials B_{n,k}(x_1..x_{n-k+1}) for all n <= nmax,
// built from B_{n,k} = sum_j C(n-1,j-1) x_j B_{n-j,k-1}.
class BellTable {
public:
    // Entries B_{n,k} with n-k+1 > x.size() would need absent arguments; they
    // are computed with those treated as zero and must not be queried.
    BellTable(std::span<const double> x, int nmax) : nmax_(nmax), b_((nmax + 1) * (nmax + 1), 0.0) {
        if (nmax < 0) throw std::domain_error("BellTable: nmax must be >= 0");
        std::vector<double> args(static_cast<size_t>(nmax), 0.0);
        for (size_t j = 0; j < x.size() && j < args.size(); ++j) args[j] = x[j];
        at(0, 0) = 1.0;
        for (int n = 1; n <= nmax; ++n) {
            for (int k = 1; k <= n; ++k) {
                double sum = 0.0;
                for (int j = 1; j <= n - k + 1; ++j)
                    sum += binomial(n - 1, j - 1) * args[static_cast<size_t>(j - 1)] * at(n - j, k - 1);
                at(n, k) = sum;
            }
        }
    }

    double partial(int n, int k) const {
        if (n < 0 || n > nmax_ || k < 0 || k > nmax_) throw std::domain_error("BellTable: index out of range");
        return b_[static_cast<size_t>(n * (nmax_ + 1) + k)];
    }

    // Complete Bell polynomial sum_{k=1..n} B_{n,k}; equals d^n/dt^n e^{f(t)}
    // divided by e^{f(t)} when the x_j are the derivatives of f.
    double complete(int n) const {
        if (n == 0) return 1.0;
        double sum = 0.0;
        for (int k = 1; k <= n; ++k) sum += partial(n, k);
        return sum;
    }

private:
    double& at(int n, int k) { return b_[static_cast<size_t>(n * (nmax_ + 1) + k)]; }

    int nmax_;
    std::vector<double> b_;
};

// Single partial Bell polynomial B_{n,k}(x_1,...,x_{n-k+1}).
inline double partial_bell(int n, int k, std::span<const double> x) {
    if (n < 1 || k < 1 || k > n) throw std::domain_error("partial_bell: require 1 <= k <= n");
    if (static_cast<int>(x.size()) < n - k + 1)
        throw std::domain_error("partial_bell: need n-k+1 arguments");
    return BellTable(x, n).partial(n, k);
}

} // namespace satcov
