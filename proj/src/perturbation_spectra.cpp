#include "covstark/perturbation_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "covstark/errors.hpp"
#include "covstark/matrix_elements.hpp"

namespace covstark {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kMergeTol = 1e-10;

bool before(cplx a, cplx b)
{
    if (std::abs(a.real() - b.real()) > kMergeTol) return a.real() < b.real();
    return a.imag() < b.imag();
}

void sort_values(std::vector<cplx>& v) { std::stable_sort(v.begin(), v.end(), before); }

int find_state(const std::vector<QuantumNumbers>& basis, const QuantumNumbers& s)
{
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].same_discrete(s) && basis[i].c2 == s.c2) return static_cast<int>(i);
    return -1;
}

PerturbationBlock empty_block(const std::vector<QuantumNumbers>& basis)
{
    for (const auto& s : basis) validate(s);
    const auto n = static_cast<Eigen::Index>(basis.size());
    return {basis, Eigen::MatrixXcd::Zero(n, n)};
}

using Element = std::function<cplx(const QuantumNumbers& bra, const QuantumNumbers& ket)>;

void fill(PerturbationBlock& block, const Element& element)
{
    const auto n = static_cast<Eigen::Index>(block.basis.size());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) block.matrix(i, j) = element(block.basis[i], block.basis[j]);
}

// A nonzero coupling to a state missing from the basis is an error only
// when that state lies inside the label range the basis covers; the upper
// end of a truncated ladder is allowed to leak.
void check_closed(const std::vector<QuantumNumbers>& basis, const std::vector<QuantumNumbers>& targets,
                  const QuantumNumbers& source, const Element& element, bool by_L)
{
    int lo = 1 << 30, hi = -(1 << 30);
    for (const auto& s : basis) {
        const int v = by_L ? s.L.twice() : s.ell;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& t : targets) {
        const int v = by_L ? t.L.twice() : t.ell;
        if (v < lo || v > hi || find_state(basis, t) >= 0) continue;
        if (std::abs(element(t, source)) == 0.0) continue;
        throw BasisNotClosedError(source.label() + " couples to " + t.label() + ", which is not in the basis");
    }
}

} // namespace

void validate(const FieldConfig& f)
{
    for (double v : {f.B, f.E, f.eps, f.e, f.m, f.r0, f.a0})
        if (!std::isfinite(v)) throw DomainError("field configuration has a non-finite value");
    if (!(f.m > 0.0) || !(f.r0 > 0.0) || !(f.a0 > 0.0)) throw DomainError("m, r0 and a0 must be positive");
}

std::vector<QuantumNumbers> basis_preset(const std::string& name, double c2)
{
    std::vector<QuantumNumbers> out;
    if (name == "ground") {
        for (int twice_q : {1, -1})
            for (int twice_L : {1, 3}) out.push_back({0, 0, 0, half(twice_L), half(twice_q), c2});
    } else if (name == "2s2p") {
        for (int twice_q : {1, -1}) {
            out.push_back({1, 0, 0, half(1), half(twice_q), c2});
            out.push_back({0, 1, 0, half(1), half(twice_q), c2});
        }
    } else if (name == "low-lying") {
        out = low_lying_states();
        for (auto& s : out) s.c2 = c2;
    } else {
        throw DomainError("unknown basis preset '" + name + "' (expected ground, 2s2p or low-lying)");
    }
    return out;
}

SpectralShift zeeman_shift(HalfInt q, const FieldConfig& f)
{
    validate(f);
    return {-(f.e * f.B / (2.0 * f.m)) * q.value(), 1};
}

PerturbationBlock zeeman_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f)
{
    PerturbationBlock block = empty_block(basis);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        block.matrix(k, k) = zeeman_shift(basis[i].q, f).delta_K;
    }
    return block;
}

PerturbationBlock stark_electric_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f)
{
    validate(f);
    PerturbationBlock block = empty_block(basis);
    const double coupling = f.e * f.E / (2.0 * f.m);
    const Element element = [&](const QuantumNumbers& bra, const QuantumNumbers& ket) {
        return coupling * boost_element({bra, ket});
    };
    const Element structural = [](const QuantumNumbers& bra, const QuantumNumbers& ket) {
        return boost_element({bra, ket});
    };
    for (const auto& s : basis) {
        std::vector<QuantumNumbers> targets;
        for (int d : {-2, 2}) {
            QuantumNumbers t = s;
            t.L = HalfInt::from_twice(s.L.twice() + d);
            if (t.L >= t.n_hat() && t.q <= t.L && -t.L <= t.q) targets.push_back(t);
        }
        check_closed(basis, targets, s, structural, true);
    }
    fill(block, element);
    return block;
}

PerturbationBlock stark_scalar_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f)
{
    validate(f);
    PerturbationBlock block = empty_block(basis);
    const Element structural = [&](const QuantumNumbers& bra, const QuantumNumbers& ket) -> cplx {
        double x1 = 0.0;
        if (std::abs(bra.ell - ket.ell) == 1 && bra.L == ket.L && bra.q == ket.q && bra.n == ket.n && bra.c2 == ket.c2)
            x1 = x1_element({bra, ket}, rho_element(bra.radial(f.a0), ket.radial(f.a0)));
        return x1 + f.r0 * n1_element({bra, ket});
    };
    for (const auto& s : basis) {
        std::vector<QuantumNumbers> targets;
        for (int d : {-1, 1}) {
            QuantumNumbers t = s;
            t.ell = s.ell + d;
            t.n_a = s.n_a - d;
            if (t.ell >= 0 && t.n_a >= 0 && t.n <= t.ell) targets.push_back(t);
        }
        check_closed(basis, targets, s, structural, false);
    }
    fill(block, [&](const QuantumNumbers& bra, const QuantumNumbers& ket) { return f.e * f.eps * structural(bra, ket); });
    return block;
}

PerturbationBlock stark_combined_block(const std::vector<QuantumNumbers>& basis, const FieldConfig& f)
{
    PerturbationBlock block = stark_electric_block(basis, f);
    block.matrix += stark_scalar_block(basis, f).matrix;
    return block;
}

std::vector<cplx> eigenvalues(const PerturbationBlock& block)
{
    const Eigen::Index n = block.matrix.rows();
    if (n != block.matrix.cols() || n != static_cast<Eigen::Index>(block.basis.size()))
        throw DomainError("perturbation block is not square or does not match its basis");
    if (n > 16) throw DomainError("perturbation block dimension exceeds 16");
    std::vector<cplx> out;
    if (n == 0) return out;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block.matrix, false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("eigensolver did not converge");
    for (Eigen::Index i = 0; i < n; ++i) out.push_back(solver.eigenvalues()[i]);
    sort_values(out);
    return out;
}

std::vector<SpectralShift> diagonalize(const PerturbationBlock& block)
{
    std::vector<SpectralShift> out;
    for (const cplx& v : eigenvalues(block)) {
        if (!out.empty() && std::abs(out.back().delta_K - v) <= kMergeTol)
            ++out.back().multiplicity;
        else
            out.push_back({v, 1});
    }
    return out;
}

std::vector<cplx> e_cont_closed_form(double c2, const FieldConfig& f)
{
    validate(f);
    const double scale = f.e * f.E / (2.0 * f.m);
    const double mean = 6.0 / 15.0 * c2;
    const double root = std::sqrt(std::pow(4.0 / 15.0 * c2, 2) + (0.25 + 4.0 / 9.0 * c2 * c2));
    std::vector<cplx> out;
    for (double outer : {1.0, -1.0})
        for (double inner : {1.0, -1.0}) out.push_back(outer * kI * scale * (mean + inner * root));
    sort_values(out);
    return out;
}

cplx displayed_ground_entry(const QuantumNumbers& bra, const QuantumNumbers& ket, const FieldConfig& f)
{
    if (!(bra.q == ket.q) || bra.n != ket.n || bra.ell != ket.ell || bra.n_a != ket.n_a || bra.c2 != ket.c2) return 0.0;
    const double c2 = ket.c2;
    const double q = ket.q.value();
    auto is = [](HalfInt v, int twice) { return v.twice() == twice ? 1.0 : 0.0; };
    const cplx diag = -q * (4.0 * kI * c2 / 3.0 * is(ket.L, 1) * is(bra.L, 1) +
                            4.0 * kI * c2 / 15.0 * is(ket.L, 3) * is(bra.L, 3));
    const double off = std::sqrt(2.0) / 3.0 * std::sqrt(2.25 + 4.0 * c2 * c2) *
                       (is(ket.L, 3) * is(bra.L, 1) - is(ket.L, 1) * is(bra.L, 3));
    return f.e * f.E / (2.0 * f.m) * (diag + off);
}

GroundStarkReport ground_state_stark(double c2, const FieldConfig& f)
{
    GroundStarkReport r;
    r.block = stark_electric_block(basis_preset("ground", c2), f);
    const auto n = static_cast<Eigen::Index>(r.block.basis.size());
    r.displayed = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            r.displayed(i, j) = displayed_ground_entry(r.block.basis[i], r.block.basis[j], f);
    r.numeric = eigenvalues(r.block);
    r.displayed_values = eigenvalues({r.block.basis, r.displayed});
    r.closed_form = e_cont_closed_form(c2, f);
    for (std::size_t i = 0; i < r.numeric.size(); ++i)
        r.max_discrepancy = std::max(r.max_discrepancy, std::abs(r.numeric[i] - r.closed_form[i]));
    return r;
}

std::vector<SpectralShift> nonrelativistic_reference(const FieldConfig& f)
{
    const double v = std::abs(f.e * f.E * 3.0 * f.a0);
    return {{-v, 1}, {v, 1}};
}

LorentzMatrix field_tensor(const Eigen::Vector3d& E, const Eigen::Vector3d& B)
{
    LorentzMatrix F = LorentzMatrix::Zero();
    for (int i = 1; i <= 3; ++i) {
        F(0, i) = E[i - 1];
        F(i, 0) = -E[i - 1];
    }
    F(1, 2) = B[2];
    F(2, 1) = -B[2];
    F(2, 3) = B[0];
    F(3, 2) = -B[0];
    F(3, 1) = B[1];
    F(1, 3) = -B[1];
    return F;
}

LorentzMatrix coupling_matrix(const LorentzMatrix& F_upper, double e, double m)
{
    const LorentzMatrix F = metric() * F_upper * metric();
    LorentzMatrix out = LorentzMatrix::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b) out += F(a, b) * generator(a, b);
    return e / (4.0 * m) * out;
}

LorentzMatrix magnetic_reduction(const Eigen::Vector3d& B, double e, double m)
{
    LorentzMatrix out = LorentzMatrix::Zero();
    for (int k = 1; k <= 3; ++k) {
        LorentzMatrix h = LorentzMatrix::Zero();
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                const int eps = (i - j) * (j - k) * (k - i) / 2;
                if (eps != 0) h += 0.5 * eps * generator(i, j);
            }
        out += B[k - 1] * h;
    }
    return e / (2.0 * m) * out;
}

LorentzMatrix electric_reduction(const Eigen::Vector3d& E, double e, double m)
{
    LorentzMatrix out = LorentzMatrix::Zero();
    for (int j = 1; j <= 3; ++j) out += E[j - 1] * generator(j, 0);
    return e / (2.0 * m) * out;
}

} // namespace covstark
