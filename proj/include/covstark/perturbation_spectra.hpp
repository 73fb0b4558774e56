#pragma once

// First-order covariant Zeeman and Stark shifts over explicit degenerate
// bases: block assembly, diagonalization and the closed-form references.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "covstark/bound_states.hpp"
#include "covstark/lorentz_geometry.hpp"

namespace covstark {

struct FieldConfig {
    double B = 0.0;   // along axis 1
    double E = 0.0;   // along axis 1
    double eps = 0.0; // epsilon^1, fifth-field strength
    double e = 1.0;
    double m = 1.0;
    double r0 = 1.0;
    double a0 = 1.0;
};

/// Throws DomainError unless m, r0, a0 > 0 and every value is finite.
void validate(const FieldConfig& f);

struct PerturbationBlock {
    std::vector<QuantumNumbers> basis;
    Eigen::MatrixXcd matrix; // matrix(i, j) = <basis_i| K' |basis_j>
};

struct SpectralShift {
    cplx delta_K;
    int multiplicity = 1;
};

/// Named degenerate subspaces: "ground" (L = 1/2, 3/2; q = +-1/2) and
/// "2s2p" (ell + n_a = 1, L = 1/2, q = +-1/2), plus "low-lying" for the
/// six states of low_lying_states(). Throws DomainError for an unknown name.
std::vector<QuantumNumbers> basis_preset(const std::string& name, double c2 = 0.0);

/// -(eB/2m) q.
SpectralShift zeeman_shift(HalfInt q, const FieldConfig& f);

/// Diagonal Zeeman block over `basis`.
PerturbationBlock zeeman_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f);

/// (eE/2m) <i h_n(lambda_01)> over `basis`. Throws BasisNotClosedError
/// when a nonzero element reaches a state outside the basis whose L lies
/// within the range of L values present.
PerturbationBlock stark_electric_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f);

/// e eps [<x^1> + r0 <n^1>] over `basis`, with <rho> from radial
/// quadrature. Throws BasisNotClosedError when a nonzero element reaches a
/// state outside the basis whose ell lies within the range present.
PerturbationBlock stark_scalar_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f);

/// Sum of the electric and scalar blocks.
PerturbationBlock stark_combined_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f);

/// All eigenvalues (with repetition) sorted by real part, then imaginary
/// part. Throws DomainError above dimension 16 and ConvergenceError when
/// the eigensolver does not converge.
std::vector<cplx> eigenvalues(const PerturbationBlock& block);

/// Eigenvalues merged into multiplicities at tolerance 1e-10.
std::vector<SpectralShift> diagonalize(const PerturbationBlock& block);

/// The four values +-i (eE/2m) (6/15 c2 +- sqrt((4/15 c2)^2 + 1/4 + 4/9 c2^2)),
/// sorted like eigenvalues().
std::vector<cplx> e_cont_closed_form(double c2, const FieldConfig& f);

/// The displayed ground-state block entry for bra (L', q) and ket (L, q):
/// (eE/2m) [(-q)(4 i c2/3 d_{L,1/2} d_{L',1/2} + 4 i c2/15 d_{L,3/2} d_{L',3/2})
///          + sqrt(2)/3 sqrt(9/4 + 4 c2^2)(d_{L,3/2} d_{L',1/2} - d_{L,1/2} d_{L',3/2})]
cplx displayed_ground_entry(const QuantumNumbers& bra, const QuantumNumbers& ket, const FieldConfig& f);

struct GroundStarkReport {
    PerturbationBlock block;            // assembled from boost elements
    Eigen::MatrixXcd displayed;         // the printed ground block on the same basis
    std::vector<cplx> numeric;          // eigenvalues of `block`
    std::vector<cplx> displayed_values; // eigenvalues of `displayed`
    std::vector<cplx> closed_form;      // e_cont_closed_form
    double max_discrepancy = 0.0;       // max |numeric - closed_form| after sorting
};

GroundStarkReport ground_state_stark(double c2, const FieldConfig& f);

/// +-eE (3 a0), ascending.
std::vector<SpectralShift> nonrelativistic_reference(const FieldConfig& f);

/// F^{mu nu} with F^{0i} = E^i and F^{ij} = eps_{ijk} B^k.
LorentzMatrix field_tensor(const Eigen::Vector3d& E, const Eigen::Vector3d& B);

/// (e/4m) F_{alpha beta} M^{alpha beta}, lowering F with the metric.
LorentzMatrix coupling_matrix(const LorentzMatrix& F_upper, double e, double m);

/// (e/2m) B^k (1/2) eps_{ijk} M^{ij}.
LorentzMatrix magnetic_reduction(const Eigen::Vector3d& B, double e, double m);

/// (e/2m) E^j M^{j0}.
LorentzMatrix electric_reduction(const Eigen::Vector3d& E, double e, double m);

} // namespace covstark
