#include "covstark/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "covstark/errors.hpp"
#include "covstark/matrix_elements.hpp"
#include "covstark/selfcheck.hpp"

namespace covstark {

using nlohmann::ordered_json;

namespace {

struct SpectrumRow {
    std::string label;
    cplx value;
    std::optional<cplx> reference;
};

double unsigned_zero(double v) { return v == 0.0 ? 0.0 : v; }

ordered_json cplx_json(cplx z) { return ordered_json{{"re", unsigned_zero(z.real())}, {"im", unsigned_zero(z.imag())}}; }

ordered_json matrix_json(const Eigen::MatrixXcd& m)
{
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array(), c = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            r.push_back(unsigned_zero(m(i, j).real()));
            c.push_back(unsigned_zero(m(i, j).imag()));
        }
        re.push_back(r);
        im.push_back(c);
    }
    return ordered_json{{"re", re}, {"im", im}};
}

ordered_json basis_json(const std::vector<QuantumNumbers>& basis)
{
    ordered_json out = ordered_json::array();
    for (const auto& s : basis) out.push_back(s.label());
    return out;
}

ordered_json header(const RunConfig& cfg)
{
    ordered_json h;
    h["command"] = command_name(cfg.command);
    h["config_hash"] = config_hash(cfg);
    h["tolerance"] = cfg.tolerance;
    h["inputs"] = to_json(cfg);
    return h;
}

std::vector<QuantumNumbers> selected_basis(const RunConfig& cfg)
{
    std::vector<QuantumNumbers> out;
    for (const auto& s : cfg.basis)
        if (std::find(cfg.q_values.begin(), cfg.q_values.end(), s.q) != cfg.q_values.end()) out.push_back(s);
    if (out.empty()) throw ConfigError("no basis state carries a q value from 'q'");
    return out;
}

std::vector<SpectrumRow> eigen_rows(const PerturbationBlock& block, const std::string& prefix,
                                    const std::vector<cplx>& reference)
{
    const auto values = eigenvalues(block);
    std::vector<SpectrumRow> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SpectrumRow r{prefix + "eig" + std::to_string(i), values[i], std::nullopt};
        if (reference.size() == values.size()) r.reference = reference[i];
        rows.push_back(r);
    }
    return rows;
}

std::vector<cplx> sorted_values(std::vector<cplx> v)
{
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        if (std::abs(a.real() - b.real()) > 1e-10) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return v;
}

bool is_preset(const RunConfig& cfg, const char* name) { return cfg.basis_preset == name; }

std::string csv_cell(double v) { return format_double(v); }

std::string csv_text(const std::string& v)
{
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows)
{
    std::ostringstream out;
    out << "basis_label,reK,imK,paper_value_re,paper_value_im,abs_discrepancy\n";
    for (const auto& r : rows) {
        out << csv_text(r.label) << ',' << csv_cell(r.value.real()) << ',' << csv_cell(r.value.imag()) << ',';
        if (r.reference)
            out << csv_cell(r.reference->real()) << ',' << csv_cell(r.reference->imag()) << ','
                << csv_cell(std::abs(r.value - *r.reference));
        else
            out << ",,";
        out << '\n';
    }
    return out.str();
}

ordered_json spectrum_json(const std::vector<SpectrumRow>& rows, double tol)
{
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["basis_label"] = r.label;
        j["delta_K"] = cplx_json(r.value);
        if (r.reference) {
            j["paper_value"] = cplx_json(*r.reference);
            const double d = std::abs(r.value - *r.reference);
            j["abs_discrepancy"] = d;
            j["within_tolerance"] = d <= tol;
        } else {
            j["paper_value"] = nullptr;
            j["abs_discrepancy"] = nullptr;
        }
        out.push_back(j);
    }
    return out;
}

RunResult emit_spectrum(const RunConfig& cfg, ordered_json doc, const PerturbationBlock& block,
                        const std::vector<SpectrumRow>& rows)
{
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        r.report = spectrum_csv(rows);
        return r;
    }
    doc["basis"] = basis_json(block.basis);
    doc["block"] = matrix_json(block.matrix);
    ordered_json levels = ordered_json::array();
    for (const auto& s : diagonalize(block))
        levels.push_back({{"delta_K", cplx_json(s.delta_K)}, {"multiplicity", s.multiplicity}});
    doc["levels"] = levels;
    doc["rows"] = spectrum_json(rows, cfg.tolerance);
    r.report = doc.dump(2) + "\n";
    return r;
}

RunResult run_zeeman(const RunConfig& cfg)
{
    const auto basis = selected_basis(cfg);
    const PerturbationBlock block = zeeman_block(basis, cfg.physics);
    std::vector<SpectrumRow> rows;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        const cplx reference = -(cfg.physics.e * cfg.physics.B / (2.0 * cfg.physics.m)) * basis[i].q.value();
        rows.push_back({basis[i].label(), block.matrix(k, k), reference});
    }
    return emit_spectrum(cfg, header(cfg), block, rows);
}

RunResult run_stark_electric(const RunConfig& cfg)
{
    const auto basis = selected_basis(cfg);
    const PerturbationBlock block = stark_electric_block(basis, cfg.physics);
    ordered_json doc = header(cfg);
    std::vector<cplx> reference;
    if (is_preset(cfg, "ground") && basis.size() == 4) {
        const GroundStarkReport g = ground_state_stark(cfg.c2, cfg.physics);
        reference = g.closed_form;
        ordered_json d;
        d["displayed_block"] = matrix_json(g.displayed);
        ordered_json dv = ordered_json::array(), cf = ordered_json::array(), nv = ordered_json::array();
        for (const auto& v : g.displayed_values) dv.push_back(cplx_json(v));
        for (const auto& v : g.closed_form) cf.push_back(cplx_json(v));
        for (const auto& v : g.numeric) nv.push_back(cplx_json(v));
        d["assembled_eigenvalues"] = nv;
        d["displayed_block_eigenvalues"] = dv;
        d["closed_form_values"] = cf;
        double displayed_vs_closed = 0.0;
        for (std::size_t i = 0; i < g.closed_form.size(); ++i)
            displayed_vs_closed = std::max(displayed_vs_closed, std::abs(g.displayed_values[i] - g.closed_form[i]));
        d["max_abs_discrepancy_assembled_vs_closed_form"] = g.max_discrepancy;
        d["max_abs_discrepancy_displayed_vs_closed_form"] = displayed_vs_closed;
        doc["discrepancy_report"] = d;
    }
    return emit_spectrum(cfg, doc, block, eigen_rows(block, "", reference));
}

RunResult run_stark_scalar(const RunConfig& cfg)
{
    const auto basis = selected_basis(cfg);
    const PerturbationBlock block = stark_scalar_block(basis, cfg.physics);
    ordered_json doc = header(cfg);
    std::vector<cplx> reference;
    if (is_preset(cfg, "2s2p") && basis.size() == 4) {
        const FieldConfig& f = cfg.physics;
        const double a = 2.0 / 3.0 * f.r0, b = 2.0 * f.a0;
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0}) reference.emplace_back(s1 * f.e * f.eps * (a + s2 * b), 0.0);
        reference = sorted_values(reference);
        const double rho = rho_element(basis[0].radial(f.a0), basis[1].radial(f.a0));
        doc["radial_rho_2s_2p"] = rho;
        doc["radial_rho_reference"] = 3.0 * std::sqrt(3.0) * f.a0;
    }
    ordered_json nr = ordered_json::array();
    FieldConfig as_electric = cfg.physics;
    as_electric.E = cfg.physics.eps;
    for (const auto& s : nonrelativistic_reference(as_electric))
        nr.push_back(s.delta_K.real());
    doc["nonrelativistic_reference"] = nr;
    return emit_spectrum(cfg, doc, block, eigen_rows(block, "", reference));
}

RunResult run_stark_combined(const RunConfig& cfg)
{
    const auto basis = selected_basis(cfg);
    const PerturbationBlock block = stark_combined_block(basis, cfg.physics);
    return emit_spectrum(cfg, header(cfg), block, eigen_rows(block, "", {}));
}

RunResult run_spectrum(const RunConfig& cfg)
{
    const auto basis = selected_basis(cfg);
    PerturbationBlock block = zeeman_block(basis, cfg.physics);
    block.matrix += stark_combined_block(basis, cfg.physics).matrix;
    return emit_spectrum(cfg, header(cfg), block, eigen_rows(block, "", {}));
}

RunResult run_orthonormality(const RunConfig& cfg)
{
    const auto labels = selected_basis(cfg);
    const QuadratureOptions base = cfg.quadrature;
    const QuadratureOptions fine = base.doubled();

    std::vector<BoundState> coarse_states, fine_states;
    for (const auto& qn : labels) {
        coarse_states.emplace_back(qn, cfg.physics.a0, base);
        fine_states.emplace_back(qn, cfg.physics.a0, fine);
    }
    const Eigen::MatrixXcd g1 = gram_matrix(coarse_states, base);
    const Eigen::MatrixXcd g2 = gram_matrix(fine_states, fine);
    const auto n = static_cast<Eigen::Index>(labels.size());
    const double dev = (g1 - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    const double change = (g2 - g1).cwiseAbs().maxCoeff();
    double tail = 0.0;
    for (std::size_t i = 0; i < coarse_states.size(); ++i)
        tail = std::max(tail, inner_product_detail(coarse_states[i], coarse_states[i], base).tail_fraction);

    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "bra,ket,re,im\n";
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                out << csv_text(labels[i].label()) << ',' << csv_text(labels[j].label()) << ',' << csv_cell(g1(i, j).real()) << ','
                    << csv_cell(g1(i, j).imag()) << '\n';
        r.report = out.str();
        return r;
    }
    ordered_json doc = header(cfg);
    doc["basis"] = basis_json(labels);
    ordered_json norms = ordered_json::array();
    for (const auto& s : coarse_states) norms.push_back(s.normalization());
    doc["normalizations"] = norms;
    doc["gram"] = matrix_json(g1);
    doc["max_abs_deviation_from_identity"] = dev;
    doc["max_abs_change_under_doubling"] = change;
    doc["max_tail_fraction"] = tail;
    r.report = doc.dump(2) + "\n";
    return r;
}

FivePotential trajectory_potential(const TrajectoryConfig& t)
{
    if (t.preset == "constant-field") return constant_field_preset(t.F);
    if (t.preset == "fifth-field") return constant_fifth_field_preset(t.eps);
    return gaussian_pulse_preset(t.c, t.F, t.tau0, t.width);
}

RunResult run_trajectory(const RunConfig& cfg)
{
    const TrajectoryConfig& t = cfg.trajectory;
    TrajectoryState s0;
    s0.x = t.x0;
    s0.xdot = t.xdot0;
    s0.M = t.M;
    const auto traj = integrate_trajectory(trajectory_potential(t), s0, t.tau_end, t.dt, t.stride);

    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "tau,x0,x1,x2,x3,xdot0,xdot1,xdot2,xdot3,xdot_sq,work\n";
        for (const auto& s : traj) {
            out << csv_cell(s.tau);
            for (int i = 0; i < 4; ++i) out << ',' << csv_cell(s.x[i]);
            for (int i = 0; i < 4; ++i) out << ',' << csv_cell(s.xdot[i]);
            out << ',' << csv_cell(s.xdot_sq()) << ',' << csv_cell(s.work) << '\n';
        }
        r.report = out.str();
        return r;
    }
    ordered_json doc = header(cfg);
    double drift = 0.0, balance = 0.0;
    for (const auto& s : traj) {
        drift = std::max(drift, std::abs(s.xdot_sq() - traj.front().xdot_sq()));
        // d(M xdot^2 / 2)/dtau = xdot_mu f^mu_5
        balance = std::max(balance, std::abs(0.5 * s.M * (s.xdot_sq() - traj.front().xdot_sq()) - s.work));
    }
    doc["max_mass_shell_drift"] = drift;
    doc["max_energy_balance_residual"] = balance;
    ordered_json samples = ordered_json::array();
    for (const auto& s : traj) {
        ordered_json j;
        j["tau"] = s.tau;
        j["x"] = {s.x[0], s.x[1], s.x[2], s.x[3]};
        j["xdot"] = {s.xdot[0], s.xdot[1], s.xdot[2], s.xdot[3]};
        j["xdot_sq"] = s.xdot_sq();
        j["work"] = s.work;
        samples.push_back(j);
    }
    doc["samples"] = samples;
    r.report = doc.dump(2) + "\n";
    return r;
}

RunResult run_concatenate(const RunConfig& cfg)
{
    const Concatenated c = concatenate(trajectory_potential(cfg.trajectory), cfg.concatenate.x, cfg.concatenate.grid);
    RunResult r;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "component,value\n";
        for (int mu = 0; mu < 4; ++mu) out << "A" << mu << ',' << csv_cell(c.A[mu]) << '\n';
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) out << "F" << mu << nu << ',' << csv_cell(c.F(mu, nu)) << '\n';
        r.report = out.str();
        return r;
    }
    ordered_json doc = header(cfg);
    doc["A"] = {c.A[0], c.A[1], c.A[2], c.A[3]};
    ordered_json f = ordered_json::array();
    for (int mu = 0; mu < 4; ++mu) f.push_back({c.F(mu, 0), c.F(mu, 1), c.F(mu, 2), c.F(mu, 3)});
    doc["F"] = f;
    r.report = doc.dump(2) + "\n";
    return r;
}

RunResult run_selfcheck_command(const RunConfig& cfg)
{
    const auto checks = run_selfcheck(cfg);
    RunResult r;
    r.table = format_check_table(checks);
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.passed;
    r.exit_code = ok ? 0 : 2;
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "check,passed,value,tolerance\n";
        for (const auto& c : checks)
            out << c.name << ',' << (c.passed ? "true" : "false") << ',' << csv_cell(c.value) << ','
                << csv_cell(c.tolerance) << '\n';
        r.report = out.str();
        return r;
    }
    ordered_json doc = header(cfg);
    ordered_json list = ordered_json::array();
    for (const auto& c : checks)
        list.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"value", c.value},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    doc["checks"] = list;
    doc["passed"] = ok;
    r.report = doc.dump(2) + "\n";
    return r;
}

} // namespace

std::string format_double(double v)
{
    if (v == 0.0) return "0";
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

RunResult run(const RunConfig& cfg)
{
    validate(cfg.physics);
    switch (cfg.command) {
    case Command::Spectrum: return run_spectrum(cfg);
    case Command::Zeeman: return run_zeeman(cfg);
    case Command::StarkElectric: return run_stark_electric(cfg);
    case Command::StarkScalar: return run_stark_scalar(cfg);
    case Command::StarkCombined: return run_stark_combined(cfg);
    case Command::Orthonormality: return run_orthonormality(cfg);
    case Command::Trajectory: return run_trajectory(cfg);
    case Command::Concatenate: return run_concatenate(cfg);
    case Command::Selfcheck: return run_selfcheck_command(cfg);
    }
    throw ConfigError("unhandled command");
}

} // namespace covstark
