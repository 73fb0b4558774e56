#pragma once

// Closed-form first-order matrix elements between induced-representation
// states: the boost generator i h_n(lambda_01), the position x^1, the frame
// vector n^1, and radial <rho> integrals. Elements whose selection rules
// fail are exact zeros.

#include <complex>

#include "covstark/bound_states.hpp"
#include "covstark/special_functions.hpp"

namespace covstark {

struct ElementKey {
    QuantumNumbers bra;
    QuantumNumbers ket;
};

/// The real numbers multiplying i in the boost element.
struct BoostCoefficients {
    double iC_L = 0.0;   // -(1/L) sqrt((L^2 - n^2)(L^2 + c2^2/n^2) / (4L^2 - 1)); 0 when L <= n_hat
    double A_L = 0.0;    // iA_L = i * A_L with A_L = c2 / (L (L+1))
    double iC_Lp1 = 0.0; // iC_L evaluated at L + 1
};

BoostCoefficients boost_coefficients(HalfInt L, HalfInt n_hat, double c2);

/// <bra| i h_n(lambda_01) |ket>:
///   iC_L sqrt(L^2 - q^2)                   for L' = L - 1
///   -i A_L q                               for L' = L
///   -iC_{L+1} sqrt((L+1)^2 - q^2)          for L' = L + 1
/// with q, n, ell, n_a and c2 conserved.
cplx boost_element(const ElementKey& key);

/// (x_element) coefficient E^{(i)}_{ell n} for ell' = ell + i, i = +-1.
double x_angular_coefficient(int ell, int n, int i);

/// <bra| x^1 |ket> = radial_rho * q / (L(L+1)) * E^{(i)}_{ell n} for
/// ell' = ell + i; zero otherwise. radial_rho = <n_a' ell'| rho |n_a ell>.
double x1_element(const ElementKey& key, double radial_rho);

/// <bra| n^1 |ket> = q / (L(L+1)) when every label matches.
double n1_element(const ElementKey& key);

/// int_0^inf R_{bra} rho R_{ket} rho^2 drho by Gauss-Laguerre quadrature.
/// Throws ConvergenceError when doubling the order moves the value by more
/// than 1e-10 relative.
double rho_element(const RadialLabel& bra, const RadialLabel& ket);

} // namespace covstark
