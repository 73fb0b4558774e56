#include "doctest.h"

#include <cmath>

#include "covstark/matrix_elements.hpp"
#include "covstark/quadrature.hpp"

using namespace covstark;

namespace {

QuantumNumbers state(int na, int ell, int n, int twice_L, int twice_q, double c2 = 0.0)
{
    return {na, ell, n, half(twice_L), half(twice_q), c2};
}

double factorial(int n) { return std::tgamma(n + 1.0); }

} // namespace

TEST_CASE("radial position integrals")
{
    CHECK(rho_element({1, 0, 1.0}, {0, 1, 1.0}) == doctest::Approx(5.196152422706632).epsilon(1e-12));
    CHECK(rho_element({1, 0, 1.0}, {0, 1, 1.0}) == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rho_element({0, 0, 1.0}, {0, 0, 1.0}) == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(rho_element({2, 0, 1.0}, {1, 1, 1.0}) == doctest::Approx(12.727922061357852).epsilon(1e-12));
    CHECK(rho_element({1, 1, 1.0}, {0, 2, 1.0}) == doctest::Approx(10.062305898749051).epsilon(1e-12));
    CHECK(rho_element({1, 0, 2.0}, {0, 1, 2.0}) == doctest::Approx(2.0 * 3.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(rho_element({0, 1, 1.0}, {1, 0, 1.0}) == doctest::Approx(rho_element({1, 0, 1.0}, {0, 1, 1.0})).epsilon(1e-14));
}

TEST_CASE("angular position coefficient equals the normalized Legendre integral")
{
    const QuadratureRule rule = gauss_legendre(40);
    for (int ell = 0; ell <= 4; ++ell)
        for (int n = 0; n <= ell; ++n)
            for (int i : {-1, 1}) {
                const int lp = ell + i;
                if (lp < n) continue;
                auto norm = [](int l, int m) { return std::sqrt((2.0 * l + 1.0) / 2.0 * factorial(l - m) / factorial(l + m)); };
                const double want = integrate(rule, [&](double x) {
                    return norm(lp, n) * assoc_legendre(lp, n, x) * x * norm(ell, n) * assoc_legendre(ell, n, x);
                });
                CHECK(x_angular_coefficient(ell, n, i) == doctest::Approx(want).epsilon(1e-13).scale(1.0));
            }
    CHECK(x_angular_coefficient(1, 0, 2) == 0.0);
}

TEST_CASE("boost coefficients")
{
    const BoostCoefficients c = boost_coefficients(half(1), half(1), 0.0);
    CHECK(c.iC_L == 0.0);
    CHECK(c.A_L == 0.0);
    CHECK(c.iC_Lp1 == doctest::Approx(-0.5).epsilon(1e-15));
    const BoostCoefficients d = boost_coefficients(half(3), half(1), 0.4);
    CHECK(d.A_L == doctest::Approx(0.4 / 3.75));
    CHECK(d.iC_L == doctest::Approx(-(2.0 / 3.0) * std::sqrt(2.0 * (2.25 + 0.64) / 8.0)).epsilon(1e-14));
}

TEST_CASE("boost element is anti-Hermitian and obeys its selection rules")
{
    for (double c2 : {0.0, 0.3, -1.1}) {
        std::vector<QuantumNumbers> basis;
        for (int tL : {1, 3, 5})
            for (int tq = -tL; tq <= tL; tq += 2) basis.push_back(state(0, 0, 0, tL, tq, c2));
        for (const auto& a : basis)
            for (const auto& b : basis) {
                const cplx ab = boost_element({a, b}), ba = boost_element({b, a});
                CHECK(std::abs(ab + std::conj(ba)) < 1e-15);
                if (a.q != b.q || std::abs((a.L - b.L).twice()) > 2) CHECK(ab == cplx(0.0, 0.0));
            }
    }
    CHECK(std::abs(boost_element({state(0, 0, 0, 3, 1), state(0, 0, 0, 1, 1)}) - cplx(std::sqrt(0.5), 0.0)) < 1e-15);
    CHECK(boost_element({state(1, 0, 0, 3, 1), state(0, 0, 0, 1, 1)}) == cplx(0.0, 0.0));
}

TEST_CASE("position and frame-vector elements")
{
    const auto s2 = state(1, 0, 0, 1, 1), p2 = state(0, 1, 0, 1, 1);
    const double rho = rho_element(s2.radial(1.0), p2.radial(1.0));
    CHECK(x1_element({s2, p2}, rho) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(x1_element({p2, s2}, rho) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(x1_element({s2, s2}, rho) == 0.0);
    CHECK(x1_element({s2, state(0, 1, 0, 1, -1)}, rho) == 0.0);
    CHECK(n1_element({s2, s2}) == doctest::Approx(2.0 / 3.0));
    CHECK(n1_element({state(0, 0, 0, 3, -1), state(0, 0, 0, 3, -1)}) == doctest::Approx(-0.5 / 3.75));
    CHECK(n1_element({s2, p2}) == 0.0);
}

TEST_CASE("raising and lowering angular coefficients agree")
{
    for (int ell = 0; ell < 6; ++ell)
        for (int n = 0; n <= ell; ++n)
            CHECK(x_angular_coefficient(ell, n, 1) == doctest::Approx(x_angular_coefficient(ell + 1, n, -1)).epsilon(1e-14));
}
