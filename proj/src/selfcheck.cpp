#include "covstark/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "covstark/config.hpp"
#include "covstark/errors.hpp"
#include "covstark/kernels.hpp"
#include "covstark/matrix_elements.hpp"

namespace covstark {

namespace {

CheckResult check(std::string name, double value, double tol, std::string detail = {})
{
    return {std::move(name), std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

LorentzMatrix random_lorentz(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LorentzMatrix gen = LorentzMatrix::Zero();
    for (const auto& idx : generator_indices()) gen += u(rng) * generator_action(idx.first, idx.second);
    // exp by scaling and squaring of a truncated series
    LorentzMatrix a = gen / 1024.0, term = LorentzMatrix::Identity(), sum = LorentzMatrix::Identity();
    for (int k = 1; k < 12; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < 10; ++i) sum = sum * sum;
    return sum;
}

FrameParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> a(-2.0, 2.0), w(-1.4, 1.4), g(0.0, 2.0 * std::numbers::pi);
    return {a(rng), w(rng), g(rng)};
}

std::vector<CheckResult> geometry_checks()
{
    std::mt19937_64 rng(20260415);
    double ortho = 0.0, stab = 0.0, anti = 0.0, fd = 0.0;
    const FourVector e = standard_frame_vector();
    for (int i = 0; i < 1000; ++i) {
        const FrameParams p = random_params(rng);
        ortho = std::max(ortho, lorentz_defect(frame_matrix_LT(p)));
        if (i % 10 == 0) {
            const LorentzMatrix lam = random_lorentz(rng);
            try {
                stab = std::max(stab, (little_group_matrix(lam, p) * e - e).cwiseAbs().maxCoeff());
            } catch (const FrameRecoveryError&) {
            }
            const auto s = s_matrices(p);
            const auto sm = s_matrices_mixed(p);
            const LorentzMatrix l = frame_matrix_L(p);
            const FourVector n = frame_vector(p);
            for (int mu = 0; mu < 4; ++mu) {
                anti = std::max(anti, (s[mu] + s[mu].transpose()).cwiseAbs().maxCoeff());
                FourVector d = FourVector::Zero();
                d[mu] = 1e-6;
                const LorentzMatrix num =
                    l * (frame_matrix_LT_extended(n + d) - frame_matrix_LT_extended(n - d)) / 2e-6;
                fd = std::max(fd, (num - sm[mu]).cwiseAbs().maxCoeff());
            }
        }
    }
    double comm = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const LorentzMatrix ga = generator_action(a, b), gc = generator_action(c, d);
                    comm = std::max(comm, (ga * gc - gc * ga - commutator_from_structure_constants(a, b, c, d))
                                              .cwiseAbs()
                                              .maxCoeff());
                }
    return {check("geometry.frame_metric_orthogonality", ortho, 1e-12, "1000 random frames"),
            check("geometry.little_group_stabilizer", stab, 1e-10),
            check("geometry.s_matrix_antisymmetry", anti, 1e-12),
            check("geometry.s_matrix_finite_difference", fd, 1e-6),
            check("geometry.commutator_table", comm, 0.0)};
}

std::vector<CheckResult> zeeman_checks()
{
    FieldConfig f;
    f.B = 2.0;
    const auto block = zeeman_block(basis_preset("ground"), f);
    const auto levels = diagonalize(block);
    double err = 0.0;
    for (const auto& s : block.basis)
        err = std::max(err, std::abs(zeeman_shift(s.q, f).delta_K - cplx(s.q.twice() > 0 ? -0.5 : 0.5, 0.0)));
    const bool two_levels = levels.size() == 2 && levels[0].multiplicity == 2 && levels[1].multiplicity == 2;
    return {check("zeeman.shift_q_pm_half", err, 1e-14),
            {"zeeman.ground_multiplicity", two_levels, static_cast<double>(levels.size()), 2.0, "two levels of multiplicity 2"}};
}

std::vector<CheckResult> scalar_checks()
{
    FieldConfig f;
    f.eps = 1.0;
    const auto basis = basis_preset("2s2p");
    const double rho = rho_element(basis[0].radial(1.0), basis[1].radial(1.0));
    const double rho_ref = 3.0 * std::sqrt(3.0);
    const auto values = eigenvalues(stark_scalar_block(basis, f));
    const std::vector<cplx> expected{-8.0 / 3.0, -4.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0};
    double imag = 0.0;
    for (const auto& v : values) imag = std::max(imag, std::abs(v.imag()));
    return {check("stark_scalar.radial_rho_2s2p", std::abs(rho - rho_ref) / rho_ref, 1e-8),
            check("stark_scalar.eigenvalues_2s2p", max_abs_diff(values, expected), 1e-10),
            check("stark_scalar.eigenvalues_real", imag, 1e-12)};
}

std::vector<CheckResult> electric_checks()
{
    FieldConfig f;
    f.E = 1.0;
    const GroundStarkReport g = ground_state_stark(0.0, f);
    const std::vector<cplx> quarter{cplx(0, -0.25), cplx(0, -0.25), cplx(0, 0.25), cplx(0, 0.25)};
    const auto& cf = g.closed_form;

    const auto block = stark_electric_block(basis_preset("ground", 0.3), f);
    const cplx tr = block.matrix.trace();
    const cplx det = block.matrix.determinant();

    FieldConfig f2 = f;
    f2.E = 2.0;
    const auto v1 = eigenvalues(block);
    const auto v2 = eigenvalues(stark_electric_block(basis_preset("ground", 0.3), f2));
    double lin = 0.0;
    for (std::size_t i = 0; i < v1.size(); ++i) lin = std::max(lin, std::abs(v2[i] - 2.0 * v1[i]) / std::abs(v1[i]));

    double real_part = 0.0;
    for (const auto& v : v1) real_part = std::max(real_part, std::abs(v.real()));

    char detail[160];
    std::snprintf(detail, sizeof detail, "assembled block gives +-%.15gi, closed form +-%.15gi", std::abs(g.numeric[0]),
                  std::abs(cf[0]));
    return {check("stark_electric.closed_form_c2_0", max_abs_diff(cf, quarter), 1e-14, detail),
            check("stark_electric.trace_imaginary", std::abs(tr.real()), 1e-12),
            check("stark_electric.determinant_real", std::abs(det.imag()), 1e-12),
            check("stark_electric.eigenvalues_imaginary", real_part, 1e-12),
            check("stark_electric.linear_in_field", lin, 1e-12)};
}

std::vector<CheckResult> orthonormality_checks(const RunConfig& cfg)
{
    const QuadratureOptions& o = cfg.quadrature;
    std::vector<BoundState> states;
    for (int twice_q : {1, -1}) states.emplace_back(QuantumNumbers{0, 0, 0, half(1), half(twice_q), 0.0}, 1.0, o);
    const Eigen::MatrixXcd g = gram_matrix(states, o);
    return {check("orthonormality.ground_doublet", (g - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-6)};
}

std::vector<CheckResult> dynamics_checks()
{
    LorentzMatrix F = LorentzMatrix::Zero();
    F(1, 2) = 1.0;
    F(2, 1) = -1.0;
    TrajectoryState s0;
    s0.xdot = FourVector(1.2, 0.3, 0.4, 0.1);
    const auto traj = integrate_trajectory(constant_field_preset(F), s0, 10.0, 1e-3, 100);
    double drift = 0.0;
    for (const auto& s : traj) drift = std::max(drift, std::abs(s.xdot_sq() - s0.xdot_sq()));

    const auto traj5 = integrate_trajectory(constant_fifth_field_preset(FourVector(0.1, 0.2, 0.0, 0.0)), s0, 10.0, 1e-3, 100);
    double balance = 0.0;
    for (const auto& s : traj5)
        balance = std::max(balance, std::abs(0.5 * s.M * (s.xdot_sq() - s0.xdot_sq()) - s.work));

    return {check("dynamics.mass_shell_conserved", drift, 1e-9, "F^{12} = 1, 1e4 RK4 steps"),
            check("dynamics.energy_balance", balance, 1e-6, "constant f^{5 mu}")};
}

std::vector<CheckResult> coupling_checks()
{
    const Eigen::Vector3d B(0.3, -1.1, 0.7), E(0.9, 0.2, -0.4), zero = Eigen::Vector3d::Zero();
    const double e = 1.0, m = 1.0;
    const double mag = (coupling_matrix(field_tensor(zero, B), e, m) - magnetic_reduction(B, e, m)).cwiseAbs().maxCoeff();
    const double ele = (coupling_matrix(field_tensor(E, zero), e, m) - electric_reduction(E, e, m)).cwiseAbs().maxCoeff();
    return {check("coupling.magnetic_reduction", mag, 1e-15), check("coupling.electric_reduction", ele, 1e-15)};
}

std::vector<CheckResult> kernel_checks()
{
    std::vector<double> w(101), f(101);
    std::vector<cplx> a(101), b(101);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double x = static_cast<double>(i);
        w[i] = 1.0 / (1.0 + x);
        f[i] = std::sin(x);
        a[i] = {std::cos(x), 0.5 * x};
        b[i] = {x, -std::sin(2.0 * x)};
    }
    double diff = 0.0;
    if (kernels::avx2_available()) {
        diff = std::max(diff, std::abs(kernels::scalar::weighted_sum(w, f) - kernels::avx2::weighted_sum(w, f)));
        diff = std::max(diff, std::abs(kernels::scalar::weighted_cdot(w, a, b) - kernels::avx2::weighted_cdot(w, a, b)));
    }
    return {check("kernels.scalar_vector_agreement", diff, 1e-10,
                  kernels::avx2_available() ? "avx2 compared" : "avx2 unavailable")};
}

} // namespace

std::vector<CheckResult> run_selfcheck(const RunConfig& cfg)
{
    std::vector<CheckResult> out;
    auto append = [&out](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
    append(zeeman_checks());
    append(scalar_checks());
    append(electric_checks());
    append(orthonormality_checks(cfg));
    append(geometry_checks());
    append(dynamics_checks());
    append(coupling_checks());
    append(kernel_checks());
    return out;
}

std::string format_check_table(const std::vector<CheckResult>& checks)
{
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %-6s  %-12s  %-12s\n", static_cast<int>(width), "check", "result", "value",
                  "tolerance");
    out << line;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-*s  %-6s  %-12.4e  %-12.4e\n", static_cast<int>(width), c.name.c_str(),
                      c.passed ? "PASS" : "FAIL", c.value, c.tolerance);
        out << line;
    }
    return out.str();
}

} // namespace covstark
