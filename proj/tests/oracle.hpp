#pragma once

// Brute-force eigenvalue oracle for small complex matrices: characteristic
// polynomial by Faddeev-LeVerrier, roots by Durand-Kerner iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Monic coefficients c[0..n], det(lambda I - A) = sum_k c[k] lambda^{n-k}.
inline std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& a)
{
    const auto n = a.rows();
    std::vector<cplx> c(static_cast<std::size_t>(n) + 1);
    c[0] = 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        m = a * m + c[static_cast<std::size_t>(k - 1)] * Eigen::MatrixXcd::Identity(n, n);
        c[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline cplx horner(const std::vector<cplx>& c, cplx z)
{
    cplx v = 0.0;
    for (const auto& ck : c) v = v * z + ck;
    return v;
}

inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c)
{
    const std::size_t n = c.size() - 1;
    double bound = 0.0;
    for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, std::abs(c[k]));
    bound = 1.0 + bound;
    std::vector<cplx> z(n);
    for (std::size_t k = 0; k < n; ++k) z[k] = bound * std::polar(1.0, 0.4 + 2.0 * M_PI * k / n);
    for (int iter = 0; iter < 5000; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx den = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den *= z[i] - z[j];
            const cplx step = horner(c, z[i]) / den;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-16 * bound) break;
    }
    // Roots that coalesce are multiple roots; a root of multiplicity m is a
    // simple root of the (m-1)-th derivative, where Newton converges to full
    // precision.
    auto derivative = [](const std::vector<cplx>& p) {
        const std::size_t deg = p.size() - 1;
        std::vector<cplx> d(deg);
        for (std::size_t k = 0; k < deg; ++k) d[k] = p[k] * static_cast<double>(deg - k);
        return d;
    };
    auto newton = [](const std::vector<cplx>& p, cplx r) {
        for (int it = 0; it < 8; ++it) {
            cplx v = 0.0, dv = 0.0;
            for (const auto& ck : p) {
                dv = dv * r + v;
                v = v * r + ck;
            }
            if (std::abs(dv) == 0.0) break;
            r -= v / dv;
        }
        return r;
    };
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::vector<std::size_t> cluster{i};
        for (std::size_t j = i + 1; j < n; ++j)
            if (!done[j] && std::abs(z[i] - z[j]) < 1e-5 * bound) cluster.push_back(j);
        std::vector<cplx> p = c;
        for (std::size_t k = 1; k < cluster.size(); ++k) p = derivative(p);
        cplx centre = 0.0;
        for (auto k : cluster) centre += z[k];
        centre /= static_cast<double>(cluster.size());
        const cplx r = newton(p, centre);
        for (auto k : cluster) {
            z[k] = r;
            done[k] = true;
        }
    }
    return z;
}

inline std::vector<cplx> sorted(std::vector<cplx> v)
{
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (std::abs(a.real() - b.real()) > 1e-10) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

inline std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& a) { return sorted(polynomial_roots(characteristic_polynomial(a))); }

// Largest distance from each value to its nearest partner in the other list.
inline double match_distance(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    if (a.size() != b.size()) return INFINITY;
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& x : a) {
        std::size_t best = b.size();
        double d = INFINITY;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (!used[j] && std::abs(x - b[j]) < d) {
                d = std::abs(x - b[j]);
                best = j;
            }
        used[best] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

} // namespace oracle
