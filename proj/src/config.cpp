#include "covstark/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "covstark/errors.hpp"

namespace covstark {

using nlohmann::json;

namespace {

const std::vector<std::pair<Command, std::string>>& command_table()
{
    static const std::vector<std::pair<Command, std::string>> t{
        {Command::Spectrum, "spectrum"},
        {Command::Zeeman, "zeeman"},
        {Command::StarkElectric, "stark-electric"},
        {Command::StarkScalar, "stark-scalar"},
        {Command::StarkCombined, "stark-combined"},
        {Command::Orthonormality, "orthonormality"},
        {Command::Trajectory, "trajectory"},
        {Command::Concatenate, "concatenate"},
        {Command::Selfcheck, "selfcheck"},
    };
    return t;
}

// Reads the fields of one JSON object and rejects any it did not consume.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) throw ConfigError("'" + path_ + "' must be an object");
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        const auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError("'" + field(key) + "' must be a number");
            out = v->get<double>();
            if (!std::isfinite(out)) throw ConfigError("'" + field(key) + "' must be finite");
        }
    }

    void integer(const std::string& key, int& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) throw ConfigError("'" + field(key) + "' must be an integer");
            out = v->get<int>();
        }
    }

    void string(const std::string& key, std::string& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_string()) throw ConfigError("'" + field(key) + "' must be a string");
            out = v->get<std::string>();
        }
    }

    void vector4(const std::string& key, FourVector& out)
    {
        if (const json* v = find(key)) {
            if (!v->is_array() || v->size() != 4) throw ConfigError("'" + field(key) + "' must be an array of 4 numbers");
            for (int i = 0; i < 4; ++i) {
                if (!(*v)[i].is_number()) throw ConfigError("'" + field(key) + "' must be an array of 4 numbers");
                out[i] = (*v)[i].get<double>();
            }
        }
    }

    void matrix4(const std::string& key, LorentzMatrix& out)
    {
        if (const json* v = find(key)) {
            const std::string msg = "'" + field(key) + "' must be a 4x4 array of numbers";
            if (!v->is_array() || v->size() != 4) throw ConfigError(msg);
            for (int i = 0; i < 4; ++i) {
                const json& row = (*v)[i];
                if (!row.is_array() || row.size() != 4) throw ConfigError(msg);
                for (int k = 0; k < 4; ++k) {
                    if (!row[k].is_number()) throw ConfigError(msg);
                    out(i, k) = row[k].get<double>();
                }
            }
        }
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError("unknown field '" + field(it.key()) + "'");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string half_str(HalfInt h) { return h.str(); }

json vec_json(const FourVector& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json mat_json(const LorentzMatrix& m)
{
    json out = json::array();
    for (int i = 0; i < 4; ++i) out.push_back(json::array({m(i, 0), m(i, 1), m(i, 2), m(i, 3)}));
    return out;
}

void require_positive(double v, const std::string& field)
{
    if (!(v > 0.0)) throw ConfigError("'" + field + "' must be > 0");
}

void require_positive(int v, const std::string& field)
{
    if (v < 1) throw ConfigError("'" + field + "' must be >= 1");
}

} // namespace

Command parse_command(const std::string& name)
{
    for (const auto& [c, n] : command_table())
        if (n == name) return c;
    throw ConfigError("unknown command '" + name + "'");
}

std::string command_name(Command c)
{
    for (const auto& [cc, n] : command_table())
        if (cc == c) return n;
    return "unknown";
}

HalfInt parse_half_int(const json& v, const std::string& field)
{
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        int num = 0, den = 1;
        char tail = 0;
        if (std::sscanf(s.c_str(), "%d/%d%c", &num, &den, &tail) == 2 && den == 2) return HalfInt::from_twice(num);
        if (std::sscanf(s.c_str(), "%d%c", &num, &tail) == 1) return HalfInt::from_int(num);
        throw ConfigError("'" + field + "' must be an integer or half-integer such as \"-3/2\"");
    }
    if (v.is_number()) {
        const double t = 2.0 * v.get<double>();
        if (std::abs(t - std::round(t)) > 0.0) throw ConfigError("'" + field + "' must be an integer or half-integer");
        return HalfInt::from_twice(static_cast<int>(std::lround(t)));
    }
    throw ConfigError("'" + field + "' must be an integer or half-integer");
}

json parse_config_text(const std::string& text)
{
    std::vector<std::set<std::string>> keys;
    std::vector<std::string> path;
    std::string pending;
    json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
        switch (ev) {
        case json::parse_event_t::object_start:
            keys.emplace_back();
            path.push_back(pending);
            pending.clear();
            break;
        case json::parse_event_t::key: {
            const std::string k = parsed.get<std::string>();
            if (!keys.back().insert(k).second) {
                std::string where;
                for (const auto& p : path)
                    if (!p.empty()) where += p + ".";
                throw ConfigError("duplicate key '" + where + k + "'");
            }
            pending = k;
            break;
        }
        case json::parse_event_t::object_end:
            keys.pop_back();
            path.pop_back();
            pending.clear();
            break;
        case json::parse_event_t::array_start:
            pending.clear();
            break;
        default:
            break;
        }
        return true;
    };
    try {
        return json::parse(text, cb);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

RunConfig build_config(const json& file, const ConfigOverrides& ov)
{
    RunConfig cfg;
    const json root = file.is_null() ? json::object() : file;
    Section top(root, "");

    std::string command;
    top.string("command", command);
    if (ov.command) command = *ov.command;
    if (command.empty()) throw ConfigError("'command' is required");
    cfg.command = parse_command(command);

    if (const json* p = top.find("physics")) {
        Section s(*p, "physics");
        s.number("B", cfg.physics.B);
        s.number("E", cfg.physics.E);
        s.number("eps", cfg.physics.eps);
        s.number("e", cfg.physics.e);
        s.number("m", cfg.physics.m);
        s.number("r0", cfg.physics.r0);
        s.number("a0", cfg.physics.a0);
        s.number("c2", cfg.c2);
        s.finish();
    }
    if (ov.c2) cfg.c2 = *ov.c2;
    if (ov.E) cfg.physics.E = *ov.E;
    if (ov.B) cfg.physics.B = *ov.B;
    if (ov.eps) cfg.physics.eps = *ov.eps;
    if (ov.r0) cfg.physics.r0 = *ov.r0;
    require_positive(cfg.physics.m, "physics.m");
    require_positive(cfg.physics.r0, "physics.r0");
    require_positive(cfg.physics.a0, "physics.a0");

    const json* basis = top.find("basis");
    if (ov.basis) {
        cfg.basis_preset = *ov.basis;
    } else if (basis && basis->is_string()) {
        cfg.basis_preset = basis->get<std::string>();
    } else if (basis && basis->is_array()) {
        for (std::size_t i = 0; i < basis->size(); ++i) {
            const std::string path = "basis[" + std::to_string(i) + "]";
            Section s((*basis)[i], path);
            QuantumNumbers qn;
            s.integer("n_a", qn.n_a);
            s.integer("ell", qn.ell);
            s.integer("n", qn.n);
            if (const json* v = s.find("L")) qn.L = parse_half_int(*v, path + ".L");
            if (const json* v = s.find("q")) qn.q = parse_half_int(*v, path + ".q");
            s.finish();
            qn.c2 = cfg.c2;
            try {
                validate(qn);
            } catch (const DomainError& e) {
                throw ConfigError("'" + path + "': " + e.what());
            }
            cfg.basis.push_back(qn);
        }
        if (cfg.basis.empty()) throw ConfigError("'basis' must not be empty");
    } else if (basis) {
        throw ConfigError("'basis' must be a preset name or an array of labels");
    }
    if (cfg.basis.empty()) {
        if (cfg.basis_preset.empty())
            cfg.basis_preset = cfg.command == Command::StarkScalar      ? "2s2p"
                               : cfg.command == Command::Orthonormality ? "low-lying"
                                                                        : "ground";
        try {
            cfg.basis = basis_preset(cfg.basis_preset, cfg.c2);
        } catch (const DomainError& e) {
            throw ConfigError(std::string("'basis': ") + e.what());
        }
    }

    if (const json* q = top.find("q")) {
        if (!q->is_array() || q->empty()) throw ConfigError("'q' must be a non-empty array");
        cfg.q_values.clear();
        for (std::size_t i = 0; i < q->size(); ++i) {
            const HalfInt h = parse_half_int((*q)[i], "q[" + std::to_string(i) + "]");
            if (!h.is_half_odd()) throw ConfigError("'q[" + std::to_string(i) + "]' must be half-odd");
            cfg.q_values.push_back(h);
        }
    }

    if (const json* n = top.find("numerics")) {
        Section s(*n, "numerics");
        QuadratureOptions& o = cfg.quadrature;
        s.integer("rho_order", o.rho_order);
        s.integer("xi_order", o.xi_order);
        s.integer("z_order", o.z_order);
        s.integer("periodic_points", o.periodic_points);
        s.number("line_cutoff", o.line_cutoff);
        s.integer("line_panels", o.line_panels);
        s.integer("line_order", o.line_order);
        s.number("tolerance", cfg.tolerance);
        s.finish();
    }
    require_positive(cfg.quadrature.rho_order, "numerics.rho_order");
    require_positive(cfg.quadrature.xi_order, "numerics.xi_order");
    require_positive(cfg.quadrature.z_order, "numerics.z_order");
    require_positive(cfg.quadrature.periodic_points, "numerics.periodic_points");
    require_positive(cfg.quadrature.line_cutoff, "numerics.line_cutoff");
    require_positive(cfg.quadrature.line_panels, "numerics.line_panels");
    require_positive(cfg.quadrature.line_order, "numerics.line_order");
    require_positive(cfg.tolerance, "numerics.tolerance");

    if (const json* t = top.find("trajectory")) {
        Section s(*t, "trajectory");
        TrajectoryConfig& tc = cfg.trajectory;
        s.string("preset", tc.preset);
        s.matrix4("F", tc.F);
        s.vector4("eps", tc.eps);
        s.vector4("c", tc.c);
        s.number("tau0", tc.tau0);
        s.number("width", tc.width);
        s.vector4("x0", tc.x0);
        s.vector4("xdot0", tc.xdot0);
        s.number("M", tc.M);
        s.number("tau_end", tc.tau_end);
        s.number("dt", tc.dt);
        s.integer("stride", tc.stride);
        s.finish();
    }
    {
        const TrajectoryConfig& tc = cfg.trajectory;
        if (tc.preset != "constant-field" && tc.preset != "fifth-field" && tc.preset != "pulse")
            throw ConfigError("'trajectory.preset' must be constant-field, fifth-field or pulse");
        if ((tc.F + tc.F.transpose()).cwiseAbs().maxCoeff() > 0.0)
            throw ConfigError("'trajectory.F' must be antisymmetric");
        require_positive(tc.width, "trajectory.width");
        require_positive(tc.M, "trajectory.M");
        require_positive(tc.dt, "trajectory.dt");
        require_positive(tc.stride, "trajectory.stride");
    }

    if (const json* c = top.find("concatenate")) {
        Section s(*c, "concatenate");
        s.vector4("x", cfg.concatenate.x);
        s.number("tau_start", cfg.concatenate.grid.start);
        s.number("tau_end", cfg.concatenate.grid.end);
        s.integer("points", cfg.concatenate.grid.points);
        s.finish();
    }
    if (!(cfg.concatenate.grid.end > cfg.concatenate.grid.start) || cfg.concatenate.grid.points < 2)
        throw ConfigError("'concatenate' needs tau_end > tau_start and points >= 2");

    std::string format = "json";
    if (const json* o = top.find("output")) {
        Section s(*o, "output");
        s.string("path", cfg.out);
        s.string("format", format);
        s.finish();
    }
    if (ov.out) cfg.out = *ov.out;
    if (ov.format) format = *ov.format;
    if (format == "json")
        cfg.format = OutputFormat::Json;
    else if (format == "csv")
        cfg.format = OutputFormat::Csv;
    else
        throw ConfigError("'output.format' must be csv or json");

    top.finish();
    return cfg;
}

RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides)
{
    json file = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        file = parse_config_text(ss.str());
    }
    return build_config(file, overrides);
}

json to_json(const RunConfig& cfg)
{
    json j;
    j["command"] = command_name(cfg.command);
    j["physics"] = {{"B", cfg.physics.B},   {"E", cfg.physics.E}, {"eps", cfg.physics.eps},
                    {"e", cfg.physics.e},   {"m", cfg.physics.m}, {"r0", cfg.physics.r0},
                    {"a0", cfg.physics.a0}, {"c2", cfg.c2}};
    json basis = json::array();
    for (const auto& s : cfg.basis)
        basis.push_back({{"n_a", s.n_a}, {"ell", s.ell}, {"n", s.n}, {"L", half_str(s.L)}, {"q", half_str(s.q)}});
    j["basis"] = basis;
    j["basis_preset"] = cfg.basis_preset;
    json q = json::array();
    for (const auto& h : cfg.q_values) q.push_back(half_str(h));
    j["q"] = q;
    const QuadratureOptions& o = cfg.quadrature;
    j["numerics"] = {{"rho_order", o.rho_order},         {"xi_order", o.xi_order},   {"z_order", o.z_order},
                     {"periodic_points", o.periodic_points}, {"line_cutoff", o.line_cutoff},
                     {"line_panels", o.line_panels},     {"line_order", o.line_order}, {"tolerance", cfg.tolerance}};
    const TrajectoryConfig& t = cfg.trajectory;
    j["trajectory"] = {{"preset", t.preset}, {"F", mat_json(t.F)},     {"eps", vec_json(t.eps)},
                       {"c", vec_json(t.c)}, {"tau0", t.tau0},         {"width", t.width},
                       {"x0", vec_json(t.x0)}, {"xdot0", vec_json(t.xdot0)}, {"M", t.M},
                       {"tau_end", t.tau_end}, {"dt", t.dt},           {"stride", t.stride}};
    j["concatenate"] = {{"x", vec_json(cfg.concatenate.x)},
                        {"tau_start", cfg.concatenate.grid.start},
                        {"tau_end", cfg.concatenate.grid.end},
                        {"points", cfg.concatenate.grid.points}};
    j["output"] = {{"path", cfg.out}, {"format", cfg.format == OutputFormat::Csv ? "csv" : "json"}};
    return j;
}

std::string config_hash(const RunConfig& cfg)
{
    const std::string text = to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace covstark
