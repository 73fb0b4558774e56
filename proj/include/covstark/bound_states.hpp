#pragma once

// Induced-representation bound states psi_n^Q(y) at c2 = 0 and their
// inner products under d^4y d^4n delta(1 - n^2).
//
// Both the alpha integral (frame boost) and the beta integral diverge for
// these states: the alpha one is the continuum normalization in c2, the
// beta one is the flat zeta-profile of n = 0 states. Inner products are
// therefore taken over the box |alpha|, |beta| <= line_cutoff, and every
// state is normalized in the same box.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "covstark/half_int.hpp"
#include "covstark/lorentz_geometry.hpp"
#include "covstark/special_functions.hpp"

namespace covstark {

struct QuantumNumbers {
    int n_a = 0;
    int ell = 0;
    int n = 0;
    HalfInt L = half(1);
    HalfInt q = half(1);
    double c2 = 0.0;

    HalfInt n_hat() const { return HalfInt::from_twice(2 * n + 1); }

    /// Upper limit of the k-sum, L - n_hat.
    int k_max() const { return (L - n_hat()).twice() / 2; }

    /// Principal-series value c1 = n_hat^2 - 1 - c2^2 / n_hat^2.
    double c1() const;

    RadialLabel radial(double a0) const { return {n_a, ell, a0}; }

    /// e.g. "na=0,l=0,n=0,L=1/2,q=-1/2,c2=0"
    std::string label() const;

    bool same_discrete(const QuantumNumbers& o) const
    {
        return n_a == o.n_a && ell == o.ell && n == o.n && L == o.L && q == o.q;
    }
};

/// Throws DomainError unless n <= ell, L >= n_hat with L - n_hat integral,
/// q half-odd with |q| <= L and n_a >= 0.
void validate(const QuantumNumbers& qn);

struct QuadratureOptions {
    enum class Scheme {
        Primary,   // Gauss-Laguerre rho, xi and z variables
        Alternate, // mapped Gauss-Legendre rho, theta and omega variables
    };

    Scheme scheme = Scheme::Primary;
    int rho_order = 48;
    int xi_order = 64;
    int z_order = 64;
    int periodic_points = 16; // trapezoid points for gamma and phi
    double line_cutoff = 12.0;
    int line_panels = 24;
    int line_order = 8;

    QuadratureOptions doubled() const;
    static QuadratureOptions alternate();
};

class BoundState {
public:
    /// Fixes the normalization numerically with `opts`.
    BoundState(const QuantumNumbers& qn, double a0 = 1.0, const QuadratureOptions& opts = {});

    static BoundState with_normalization(const QuantumNumbers& qn, double a0, double normalization);

    const QuantumNumbers& labels() const { return qn_; }
    double a0() const { return a0_; }
    double normalization() const { return norm_; }

    cplx operator()(const RMSPoint& pt, const FrameParams& p) const;

private:
    BoundState() = default;

    QuantumNumbers qn_;
    double a0_ = 1.0;
    double norm_ = 1.0;
};

/// psi_n^Q at (y(pt), n(p)). Throws BranchError for c2 != 0.
cplx evaluate_wavefunction(const BoundState& s, const RMSPoint& pt, const FrameParams& p);

struct InnerProduct {
    cplx value;
    double tail_fraction; // largest share of an alpha or beta integral from the outermost panels
};

InnerProduct inner_product_detail(const BoundState& s1, const BoundState& s2, const QuadratureOptions& opts = {});

/// <s1|s2>, antilinear in s1.
cplx inner_product(const BoundState& s1, const BoundState& s2, const QuadratureOptions& opts = {});

/// N_L^Q with <psi|psi> = 1 in the regularization box of `opts`.
double fix_normalization(const QuantumNumbers& qn, double a0 = 1.0, const QuadratureOptions& opts = {});

/// -i d/dgamma psi / psi by central differences at (pt, p).
cplx apply_L1(const BoundState& s, const RMSPoint& pt, const FrameParams& p, double h = 1e-5);

Eigen::MatrixXcd gram_matrix(const std::vector<BoundState>& states, const QuadratureOptions& opts = {});

/// Ground doublet (L = 1/2, q = +-1/2), its L = 3/2 partners and the
/// 2s, 2p states (L = 1/2, q = 1/2), all at c2 = 0.
std::vector<QuantumNumbers> low_lying_states();

} // namespace covstark
