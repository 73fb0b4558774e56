#include "covstark/matrix_elements.hpp"

#include <algorithm>
#include <cmath>

#include "covstark/errors.hpp"
#include "covstark/quadrature.hpp"

namespace covstark {

namespace {

const cplx kI(0.0, 1.0);

double factorial(int n)
{
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

double ic_value(double L, double nh, double c2)
{
    if (L <= nh) return 0.0;
    return -(1.0 / L) * std::sqrt((L * L - nh * nh) * (L * L + c2 * c2 / (nh * nh)) / (4.0 * L * L - 1.0));
}

bool conserved(const QuantumNumbers& a, const QuantumNumbers& b)
{
    return a.q == b.q && a.n == b.n && a.c2 == b.c2;
}

double rho_element_order(const RadialLabel& bra, const RadialLabel& ket, int order)
{
    const double scale = 1.0 / (1.0 / (bra.principal() * bra.a0) + 1.0 / (ket.principal() * ket.a0));
    const QuadratureRule rule = build_quadrature(QuadratureDomain::half_line(scale), order);
    return integrate(rule, [&](double rho) {
        return coulomb_radial(bra, rho) * rho * coulomb_radial(ket, rho) * rho * rho;
    });
}

} // namespace

BoostCoefficients boost_coefficients(HalfInt L, HalfInt n_hat, double c2)
{
    const double l = L.value(), nh = n_hat.value();
    return {ic_value(l, nh, c2), c2 / (l * (l + 1.0)), ic_value(l + 1.0, nh, c2)};
}

cplx boost_element(const ElementKey& key)
{
    const QuantumNumbers& b = key.bra;
    const QuantumNumbers& k = key.ket;
    if (!conserved(b, k) || b.ell != k.ell || b.n_a != k.n_a) return 0.0;

    const BoostCoefficients c = boost_coefficients(k.L, k.n_hat(), k.c2);
    const double L = k.L.value(), q = k.q.value();
    const HalfInt one = HalfInt::from_int(1);
    if (b.L == k.L - one) return c.iC_L * std::sqrt(L * L - q * q);
    if (b.L == k.L) return -kI * c.A_L * q;
    if (b.L == k.L + one) return -c.iC_Lp1 * std::sqrt((L + 1.0) * (L + 1.0) - q * q);
    return 0.0;
}

double x_angular_coefficient(int ell, int n, int i)
{
    const int lp = ell + i;
    if ((i != 1 && i != -1) || lp < 0 || n > ell || n > lp) return 0.0;
    const double root = std::sqrt(1.0 / (2.0 * ell + 1.0) / (2.0 * lp + 1.0) * factorial(ell - n) / factorial(ell + n) *
                                  factorial(lp + n) / factorial(lp - n));
    return (i == 1 ? (ell - n + 1.0) : static_cast<double>(ell + n)) * root;
}

double x1_element(const ElementKey& key, double radial_rho)
{
    const QuantumNumbers& b = key.bra;
    const QuantumNumbers& k = key.ket;
    if (!conserved(b, k) || b.L != k.L) return 0.0;
    const int i = b.ell - k.ell;
    if (i != 1 && i != -1) return 0.0;
    const double L = k.L.value();
    return radial_rho * k.q.value() / (L * (L + 1.0)) * x_angular_coefficient(k.ell, k.n, i);
}

double n1_element(const ElementKey& key)
{
    const QuantumNumbers& b = key.bra;
    const QuantumNumbers& k = key.ket;
    if (!conserved(b, k) || b.L != k.L || b.ell != k.ell || b.n_a != k.n_a) return 0.0;
    const double L = k.L.value();
    return k.q.value() / (L * (L + 1.0));
}

double rho_element(const RadialLabel& bra, const RadialLabel& ket)
{
    const int order = 2 * (bra.n_a + bra.ell + ket.n_a + ket.ell) + 24;
    const double v = rho_element_order(bra, ket, order);
    const double check = rho_element_order(bra, ket, 2 * order);
    if (std::abs(v - check) > 1e-10 * std::max(1.0, std::abs(v)))
        throw ConvergenceError("radial <rho> integral not converged");
    return check;
}

} // namespace covstark
