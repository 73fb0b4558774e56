#pragma once

// Classical five-field electrodynamics: field strengths from (a^mu, a_5),
// the Lorentz force M x'' = f^mu_nu x'^nu + f^mu_5, three-vector fields,
// concatenation over tau and Gaussian-smeared event currents.
//
// f^{5 mu} is identified with f^mu_5 = d^mu a_5 - d_tau a^mu.

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "covstark/lorentz_geometry.hpp"

namespace covstark {

struct FieldStrength5 {
    LorentzMatrix f = LorentzMatrix::Zero(); // f^{mu nu}
    FourVector f5 = FourVector::Zero();      // f^mu_5
};

struct FivePotential {
    std::function<FourVector(const FourVector& x, double tau)> a; // a^mu
    std::function<double(const FourVector& x, double tau)> a5;
    /// Exact field strengths; empty means central differences.
    std::function<FieldStrength5(const FourVector& x, double tau)> exact;
};

/// a^mu = -1/2 F^{mu nu} x_nu, a_5 = 0. F must be antisymmetric.
FivePotential constant_field_preset(const LorentzMatrix& F);

/// a^mu = 0, a_5 = eps^mu x_mu, so f^mu_5 = eps^mu.
FivePotential constant_fifth_field_preset(const FourVector& eps);

/// a^mu = g(tau) (c^mu - 1/2 F^{mu nu} x_nu), a_5 = 0, with
/// g(tau) = exp(-(tau - tau0)^2 / (2 width^2)).
FivePotential gaussian_pulse_preset(const FourVector& c, const LorentzMatrix& F, double tau0, double width);

/// Piecewise-linear tau interpolation of sampled (F^{mu nu}, eps^mu):
/// a^mu = -1/2 F(tau)^{mu nu} x_nu and a_5 = eps(tau)^mu x_mu. Outside the
/// grid the end samples are held. Field strengths use central differences.
FivePotential tabulated_preset(std::vector<double> tau, std::vector<LorentzMatrix> F, std::vector<FourVector> eps);

/// Exact closure when present, otherwise central differences of step h.
FieldStrength5 field_strength(const FivePotential& p, const FourVector& x, double tau, double h = 1e-5);

/// Always central differences of step h.
FieldStrength5 field_strength_numeric(const FivePotential& p, const FourVector& x, double tau, double h = 1e-5);

struct TrajectoryState {
    double tau = 0.0;
    FourVector x = FourVector::Zero();
    FourVector xdot = FourVector::Zero();
    double M = 1.0;
    double work = 0.0; // int xdot^mu f_{mu 5} dtau from the start

    double xdot_sq() const { return minkowski_norm2(xdot); }
};

/// Fixed-step classical RK4 on (x, xdot, work). Returns the initial state
/// and every `stride`-th step, plus the final state. Throws DomainError
/// for dt <= 0 or M <= 0 and StepOverflowError on a non-finite state.
std::vector<TrajectoryState> integrate_trajectory(const FivePotential& p, const TrajectoryState& s0, double tau_end,
                                                  double dt, int stride = 1);

struct ThreeVectorFields {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();   // e_i = f^{0i}
    Eigen::Vector3d h = Eigen::Vector3d::Zero();   // h_i = 1/2 eps_ijk f^{jk}
    Eigen::Vector3d eps = Eigen::Vector3d::Zero(); // eps^i = f^{5i}
    double eps0 = 0.0;                             // f^{50}
};

ThreeVectorFields three_vector_decompose(const FieldStrength5& f);

FieldStrength5 three_vector_recompose(const ThreeVectorFields& t);

/// Residuals of the homogeneous three-vector equations at (x, tau):
///   curl e + d_0 h,  div h,  curl eps - sigma d_tau h,
///   grad eps0 + sigma d_tau e + d_0 eps.
/// Returns the largest absolute component.
double homogeneous_residual(const FivePotential& p, const FourVector& x, double tau, double sigma, double h = 1e-3);

/// max_alpha |d_beta f^{alpha beta}| with f^{mu 5} = -f^{5 mu}, by central
/// differences; the source-free field equations.
double field_equation_residual(const FivePotential& p, const FourVector& x, double tau, double h = 1e-3);

struct TauGrid {
    double start = -10.0;
    double end = 10.0;
    int points = 2001;
};

struct Concatenated {
    FourVector A = FourVector::Zero();
    LorentzMatrix F = LorentzMatrix::Zero();
};

/// Trapezoid integrals of a^mu and f^{mu nu} over the tau grid. Throws
/// TailError when |a| at either grid end exceeds 1e-8 of its peak.
Concatenated concatenate(const FivePotential& p, const FourVector& x, const TauGrid& grid);

/// (2 pi s^2)^-2 exp(-|r|^2 / (2 s^2)), Euclidean |r|.
double smeared_delta(const FourVector& r, double s);

struct EventCurrent {
    FourVector j = FourVector::Zero(); // j^mu
    double j5 = 0.0;
};

/// Smeared j^mu = xdot^mu delta^4(y - x), j^5 = delta^4(y - x) at sample k.
EventCurrent event_current(const std::vector<TrajectoryState>& traj, std::size_t k, const FourVector& y, double s);

struct ContinuityCheck {
    double max_residual = 0.0; // max over the grid of |d_mu j^mu + d_tau j^5|
    double peak_j5 = 0.0;
    std::size_t points = 0;
};

/// Evaluates d_mu j^mu + d_tau j^5 at trajectory sample k (1 <= k <
/// size-1) on a uniform 4-D grid of spacing h covering +-half_width
/// around x(tau_k): second-order central differences in y, central
/// difference between samples k-1 and k+1 in tau. Throws ResolutionError
/// when h > s/2.
ContinuityCheck event_current_continuity(const std::vector<TrajectoryState>& traj, std::size_t k, double s, double h,
                                         double half_width);

/// J^mu(y) = int dtau j^mu by the trapezoid rule over the samples.
FourVector concatenated_current(const std::vector<TrajectoryState>& traj, const FourVector& y, double s);

/// Closed form of concatenated_current for x(tau) = x0 + u tau on
/// [tau_a, tau_b].
FourVector uniform_motion_current(const FourVector& x0, const FourVector& u, double tau_a, double tau_b,
                                  const FourVector& y, double s);

} // namespace covstark
