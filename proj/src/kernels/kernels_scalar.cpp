#include <cmath>
#include <cstddef>

#include "covstark/kernels.hpp"

namespace covstark::kernels::scalar {

namespace {

constexpr std::size_t kBlock = 8;

// Pairwise summation of term(i) over [lo, hi).
template <class T, class Term>
T pairwise(std::size_t lo, std::size_t hi, const Term& term)
{
    if (hi - lo <= kBlock) {
        T acc{};
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        return acc;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise<T>(lo, mid, term) + pairwise<T>(mid, hi, term);
}

} // namespace

double weighted_sum(std::span<const double> w, std::span<const double> f)
{
    return pairwise<double>(0, w.size(), [&](std::size_t i) { return w[i] * f[i]; });
}

double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g)
{
    return pairwise<double>(0, w.size(), [&](std::size_t i) { return w[i] * f[i] * g[i]; });
}

std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b)
{
    return pairwise<std::complex<double>>(0, w.size(),
                                          [&](std::size_t i) { return w[i] * (std::conj(a[i]) * b[i]); });
}

void gaussian_row(const GaussianRow& row, std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = row.start + static_cast<double>(i) * row.step - row.center;
        out[i] = row.amplitude * std::exp(-(d * d + row.base_r2) * row.inv_two_s2);
    }
}

} // namespace covstark::kernels::scalar
