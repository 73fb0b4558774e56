#pragma once

// Special functions used by the bound-state wavefunctions.
//
// Associated Legendre functions carry the Condon-Shortley phase:
//   P_2^1(x) = -3 x sqrt(1 - x^2).
// Negative orders use P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.

#include <complex>

#include "covstark/half_int.hpp"

namespace covstark {

using cplx = std::complex<double>;

/// Throws DomainError for |x| > 1. Returns 0 when |m| > ell.
double assoc_legendre(int ell, int m, double x);

/// Jacobi polynomial P_k^{(alpha, beta)}(z) with complex parameters,
/// evaluated from the (k+1)-term finite sum
///   sum_s C(k+alpha, k-s) C(k+beta, s) ((z-1)/2)^s ((z+1)/2)^{k-s}
/// with generalized binomial coefficients; finite for every parameter.
cplx jacobi_poly(int k, cplx alpha, cplx beta, double z);

/// Gamma function for complex arguments (Lanczos, g = 7, with reflection).
cplx complex_gamma(cplx z);

/// log Gamma(z), principal branch of the logarithm of complex_gamma.
cplx complex_lgamma(cplx z);

/// The generalized function
///   P^L_{ab}(z) = i^{a-b} / 2^a * sqrt((L-a)!(L+a)! / ((L-b)!(L+b)!))
///                 * (1-z)^{(a-b)/2} (1+z)^{(a+b)/2} P_{L-a}^{(a-b, a+b)}(z)
/// on its polynomial branch. i^{a-b} = exp(i pi (a-b)/2). Throws
/// BranchError unless L - a is a non-negative integer.
cplx generalized_PL(HalfInt L, cplx a, cplx b, double z);

/// The same displayed formula with the roles of a and b exchanged, i.e.
/// the branch that is polynomial of degree L - b. Used where only the
/// second index differs from L by an integer (the frame factor Xi).
/// Throws BranchError unless L - b is a non-negative integer.
cplx generalized_PL_second_branch(HalfInt L, cplx a, cplx b, double z);

/// Same, with 1 - z and 1 + z supplied separately so that arguments of the
/// form tanh(alpha) keep full relative accuracy near the endpoints.
cplx generalized_PL_second_branch(HalfInt L, cplx a, cplx b, double z, double one_minus_z, double one_plus_z);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x).
double generalized_laguerre(int n, double alpha, double x);

struct RadialLabel {
    int n_a = 0;    // radial quantum number
    int ell = 0;
    double a0 = 1.0; // Bohr radius

    int principal() const { return n_a + ell + 1; }
};

/// Hydrogen-like radial function R_{n_a l}(rho), normalized so that
/// int R^2 rho^2 drho = 1. Sign convention: positive as rho -> infinity,
/// i.e. R = (-1)^{n_a} N x^l e^{-x/2} L_{n_a}^{(2l+1)}(x), x = 2 rho/(N a0).
double coulomb_radial(const RadialLabel& r, double rho);

/// Rydberg level -1 / (2 m a0^2 N^2) (hbar = 1, e^2 = 1/(m a0)).
double coulomb_level(const RadialLabel& r, double mass);

struct RadialEigenCheck {
    double rayleigh_quotient;
    double exact_level;
    double relative_error;
};

/// Applies the second-order finite-difference radial Coulomb operator
/// -1/(2m) u'' + [l(l+1)/(2 m rho^2) - 1/(m a0 rho)] u to u = rho R on a
/// uniform grid of spacing h up to rho_max and returns the Rayleigh
/// quotient against the exact level.
RadialEigenCheck coulomb_eigen_check(const RadialLabel& r, double mass, double h, double rho_max);

} // namespace covstark
