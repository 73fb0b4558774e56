#pragma once

// Frame geometry of the induced representation: metric, RMS coordinates,
// the frame matrix L^T(n), Lorentz generators, the derivative matrices S_mu
// and the O(2,1) little-group matrix.
//
// Index conventions used throughout:
//   * metric g = diag(-1, 1, 1, 1);
//   * vectors are plain component columns (0,1,2,3); Minkowski products
//     always go through minkowski_dot();
//   * generator(s, l) is the contravariant matrix (M^{sl})^{mu nu};
//     generator_action(s, l) = g * M^{sl} is the matrix that acts on
//     component columns, so that exp(t * generator_action) is a Lorentz
//     matrix (Lambda^T g Lambda = g);
//   * frame_matrix_LT(p) is the explicit matrix of the frame chart; its
//     inverse frame_matrix_L(p) = g * LT^T * g is the Lorentz inverse.

#include <array>
#include <functional>
#include <utility>

#include <Eigen/Dense>

namespace covstark {

using FourVector = Eigen::Vector4d;
using LorentzMatrix = Eigen::Matrix4d;

/// diag(-1, 1, 1, 1)
const LorentzMatrix& metric();

inline double minkowski_dot(const FourVector& a, const FourVector& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double minkowski_norm2(const FourVector& a) { return minkowski_dot(a, a); }

/// Standard frame vector (0, 0, 0, 1).
FourVector standard_frame_vector();

/// Chart of the unit spacelike hyperboloid: rapidity alpha, omega in
/// (-pi/2, pi/2) and gamma in [0, 2 pi).
struct FrameParams {
    double alpha = 0.0;
    double omega = 0.0;
    double gamma = 0.0;
};

struct RMSPoint {
    double rho = 0.0;
    double theta = 0.0;
    double beta = 0.0;
    double phi = 0.0;
};

/// Index pair of an antisymmetric generator.
struct GeneratorIndex {
    int first;
    int second;
};

/// Closed-form frame matrix L^T(n).
LorentzMatrix frame_matrix_LT(const FrameParams& p);

/// The same matrix assembled as exp(gamma G23) exp(omega G31) exp(alpha G03)
/// with a general matrix exponential.
LorentzMatrix frame_matrix_LT_from_exponentials(const FrameParams& p);

/// Lorentz inverse of frame_matrix_LT: g * LT^T * g.
LorentzMatrix frame_matrix_L(const FrameParams& p);

FourVector frame_vector(const FrameParams& p);

/// Inverse chart. Throws FrameRecoveryError when n is not a unit spacelike
/// vector within `tol` or when |n^1| >= cosh(alpha) (omega at the poles).
FrameParams frame_params_from_vector(const FourVector& n, double tol = 1e-10);

/// Lambda^T g Lambda - g, max-abs entry.
double lorentz_defect(const LorentzMatrix& lambda);

/// D^{-1}(Lambda, n) = L(Lambda n) Lambda L^T(n).
LorentzMatrix little_group_matrix(const LorentzMatrix& lambda, const FrameParams& p);

/// (M^{sl})^{mu nu} = g^{s mu} g^{l nu} - g^{s nu} g^{l mu}.
LorentzMatrix generator(int s, int l);

/// g * M^{sl}; exponentiates to proper Lorentz matrices.
LorentzMatrix generator_action(int s, int l);

/// Index pairs (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
const std::array<GeneratorIndex, 6>& generator_indices();

std::array<LorentzMatrix, 6> generator_matrices();

/// Structure-constant right-hand side of [A^{ab}, A^{cd}] on the
/// acting matrices: g^{bc} A^{ad} - g^{bd} A^{ac} - g^{ac} A^{bd} + g^{ad} A^{bc}.
LorentzMatrix commutator_from_structure_constants(int a, int b, int c, int d);

/// Derivatives of frame_matrix_LT along the three chart parameters
/// (alpha, omega, gamma).
std::array<LorentzMatrix, 3> frame_matrix_LT_param_derivatives(const FrameParams& p);

/// 4x3 Jacobian dn/d(alpha, omega, gamma).
Eigen::Matrix<double, 4, 3> frame_jacobian(const FrameParams& p);

/// dL^T/dn^mu for mu = 0..3, through the chart. Throws SingularFrameError
/// when cos(omega) vanishes.
std::array<LorentzMatrix, 4> frame_matrix_LT_n_derivatives(const FrameParams& p);

/// Mixed matrices L * dL^T/dn^mu, which act on component columns.
std::array<LorentzMatrix, 4> s_matrices_mixed(const FrameParams& p);

/// Lowered matrices g * L * dL^T/dn^mu; each one is antisymmetric.
std::array<LorentzMatrix, 4> s_matrices(const FrameParams& p);

/// L^T evaluated at the unit vector n / sqrt(n.n): the off-shell extension
/// of the frame matrix used for finite differences in n^mu.
LorentzMatrix frame_matrix_LT_extended(const FourVector& n);

FourVector rms_map(const RMSPoint& pt);

/// Throws OutOfRMSError when (y1)^2 + (y2)^2 - (y0)^2 < 0 beyond rounding.
RMSPoint rms_inverse(const FourVector& y);

/// (y1)^2 + (y2)^2 - (y0)^2
double rms_rule(const FourVector& y);

struct GeneratorVariation {
    FourVector delta_n;
    FourVector delta_y;
};

/// Infinitesimal variation of (n, y) generated by the algebra element
/// `action` (a combination of generator_action matrices).
GeneratorVariation classical_generator_action(const LorentzMatrix& action, const FrameParams& p,
                                              const FourVector& y);

GeneratorVariation classical_generator_action(GeneratorIndex idx, const FrameParams& p,
                                              const FourVector& y);

/// Finite (exact) group action (n, y) -> (Lambda n, D^{-1}(Lambda, n) y).
std::pair<FourVector, FourVector> transform_phase_point(const LorentzMatrix& lambda,
                                                        const FrameParams& p,
                                                        const FourVector& y);

using FrameFunction = std::function<double(const FourVector& n, const FourVector& y)>;

/// D_mu f = df/dn^mu - (S_mu y) . grad_y f, derivatives by central
/// differences of step h (n derivatives use the extension P(n/|n|)).
FourVector covariant_derivative(const FrameFunction& f, const FrameParams& p, const FourVector& y,
                                double h = 1e-6);

} // namespace covstark
