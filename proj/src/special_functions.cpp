#include "covstark/special_functions.hpp"

#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "covstark/errors.hpp"

namespace covstark {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial_ratio(int num, int den)
{
    // num! / den!
    double r = 1.0;
    if (num >= den)
        for (int k = den + 1; k <= num; ++k) r *= k;
    else
        for (int k = num + 1; k <= den; ++k) r /= k;
    return r;
}

// C(x, j) = x (x-1) ... (x-j+1) / j!
cplx gen_binomial(cplx x, int j)
{
    cplx r = 1.0;
    for (int i = 0; i < j; ++i) r *= (x - static_cast<double>(i)) / static_cast<double>(i + 1);
    return r;
}

bool is_nonpositive_integer(cplx z)
{
    return std::abs(z.imag()) < 1e-14 && z.real() <= 0.0 && std::abs(z.real() - std::round(z.real())) < 1e-12;
}

// base >= 0 raised to a complex exponent, with 0^0 = 1.
cplx real_base_pow(double base, cplx e)
{
    if (base > 0.0) return std::exp(e * std::log(base));
    if (std::abs(e) == 0.0) return 1.0;
    if (e.real() > 0.0) return 0.0;
    return {std::numeric_limits<double>::infinity(), 0.0};
}

// Integer n with |L - a - n| tiny, or -1.
int polynomial_degree(HalfInt L, cplx a)
{
    const cplx d = L.value() - a;
    if (std::abs(d.imag()) > 1e-12) return -1;
    const double r = std::round(d.real());
    if (std::abs(d.real() - r) > 1e-12 || r < 0.0) return -1;
    return static_cast<int>(r);
}

cplx generalized_PL_impl(HalfInt L, cplx a, cplx b, double z, double one_minus_z, double one_plus_z, int degree)
{
    const double l = L.value();
    const cplx arg_num1 = l - a + 1.0, arg_num2 = l + a + 1.0;
    const cplx arg_den1 = l - b + 1.0, arg_den2 = l + b + 1.0;
    for (const cplx& g : {arg_num1, arg_num2, arg_den1, arg_den2})
        if (is_nonpositive_integer(g)) throw DomainError("generalized_PL: factorial of a negative integer");

    const cplx log_ratio = complex_lgamma(arg_num1) + complex_lgamma(arg_num2) - complex_lgamma(arg_den1) -
                           complex_lgamma(arg_den2);
    const cplx root = std::exp(0.5 * log_ratio);
    const cplx phase = std::exp(cplx(0.0, 0.5 * kPi) * (a - b));
    const cplx two_a = std::exp(a * std::log(2.0));

    return phase / two_a * root * real_base_pow(one_minus_z, 0.5 * (a - b)) * real_base_pow(one_plus_z, 0.5 * (a + b)) *
           jacobi_poly(degree, a - b, a + b, z);
}

} // namespace

double assoc_legendre(int ell, int m, double x)
{
    if (!(std::abs(x) <= 1.0)) throw DomainError("assoc_legendre: |x| > 1");
    if (ell < 0) throw DomainError("assoc_legendre: negative degree");
    if (std::abs(m) > ell) return 0.0;
    if (m < 0) {
        const int mm = -m;
        const double sign = (mm % 2 == 0) ? 1.0 : -1.0;
        return sign * factorial_ratio(ell - mm, ell + mm) * assoc_legendre(ell, mm, x);
    }

    double pmm = 1.0;
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if (ell == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (ell == m + 1) return pmmp1;
    double pll = 0.0;
    for (int l = m + 2; l <= ell; ++l) {
        pll = (x * (2.0 * l - 1.0) * pmmp1 - (l + m - 1.0) * pmm) / (l - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

cplx jacobi_poly(int k, cplx alpha, cplx beta, double z)
{
    if (k < 0) throw DomainError("jacobi_poly: negative degree");
    const double lo = 0.5 * (z - 1.0), hi = 0.5 * (z + 1.0);
    cplx sum = 0.0;
    for (int s = 0; s <= k; ++s)
        sum += gen_binomial(alpha + static_cast<double>(k), k - s) * gen_binomial(beta + static_cast<double>(k), s) *
               std::pow(lo, s) * std::pow(hi, k - s);
    return sum;
}

cplx complex_gamma(cplx z)
{
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
    return std::exp(complex_lgamma(z));
}

cplx complex_lgamma(cplx z)
{
    static constexpr std::array<double, 9> c{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                             771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z)
        return std::log(kPi / std::sin(kPi * z)) - complex_lgamma(1.0 - z);
    }
    const cplx zz = z - 1.0;
    cplx x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (zz + static_cast<double>(i));
    const cplx t = zz + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

cplx generalized_PL(HalfInt L, cplx a, cplx b, double z)
{
    const int degree = polynomial_degree(L, a);
    if (degree < 0) throw BranchError("generalized_PL: L - a is not a non-negative integer (L = " + L.str() + ")");
    return generalized_PL_impl(L, a, b, z, 1.0 - z, 1.0 + z, degree);
}

cplx generalized_PL_second_branch(HalfInt L, cplx a, cplx b, double z)
{
    return generalized_PL_second_branch(L, a, b, z, 1.0 - z, 1.0 + z);
}

cplx generalized_PL_second_branch(HalfInt L, cplx a, cplx b, double z, double one_minus_z, double one_plus_z)
{
    const int degree = polynomial_degree(L, b);
    if (degree < 0)
        throw BranchError("generalized_PL_second_branch: L - b is not a non-negative integer (L = " + L.str() + ")");
    return generalized_PL_impl(L, b, a, z, one_minus_z, one_plus_z, degree);
}

double generalized_laguerre(int n, double alpha, double x)
{
    if (n < 0) throw DomainError("generalized_laguerre: negative degree");
    double l0 = 1.0;
    if (n == 0) return l0;
    double l1 = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double l2 = ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

double coulomb_radial(const RadialLabel& r, double rho)
{
    if (r.n_a < 0 || r.ell < 0 || !(r.a0 > 0.0)) throw DomainError("coulomb_radial: invalid label");
    if (rho < 0.0) throw DomainError("coulomb_radial: rho < 0");
    const int n = r.principal();
    const double k = 2.0 / (n * r.a0);
    const double norm = std::sqrt(k * k * k * factorial_ratio(r.n_a, r.n_a + 2 * r.ell + 1) / (2.0 * n));
    const double x = k * rho;
    const double sign = (r.n_a % 2 == 0) ? 1.0 : -1.0;
    return sign * norm * std::pow(x, r.ell) * std::exp(-0.5 * x) * generalized_laguerre(r.n_a, 2.0 * r.ell + 1.0, x);
}

double coulomb_level(const RadialLabel& r, double mass)
{
    const double n = r.principal();
    return -1.0 / (2.0 * mass * r.a0 * r.a0 * n * n);
}

RadialEigenCheck coulomb_eigen_check(const RadialLabel& r, double mass, double h, double rho_max)
{
    if (!(h > 0.0) || !(rho_max > 10.0 * h)) throw DomainError("coulomb_eigen_check: bad grid");
    const auto count = static_cast<std::size_t>(rho_max / h);
    std::vector<double> u(count + 2, 0.0);
    for (std::size_t i = 1; i <= count + 1; ++i) {
        const double rho = static_cast<double>(i) * h;
        u[i] = rho * coulomb_radial(r, rho);
    }
    const double centrifugal = r.ell * (r.ell + 1.0) / (2.0 * mass);
    const double coulomb = 1.0 / (mass * r.a0);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 1; i <= count; ++i) {
        const double rho = static_cast<double>(i) * h;
        const double lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
        const double hu = -lap / (2.0 * mass) + (centrifugal / (rho * rho) - coulomb / rho) * u[i];
        num += u[i] * hu;
        den += u[i] * u[i];
    }
    RadialEigenCheck out;
    out.rayleigh_quotient = num / den;
    out.exact_level = coulomb_level(r, mass);
    out.relative_error = std::abs(out.rayleigh_quotient - out.exact_level) / std::abs(out.exact_level);
    return out;
}

} // namespace covstark
