#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "covstark/config.hpp"
#include "covstark/errors.hpp"
#include "covstark/runner.hpp"

int main(int argc, char** argv)
{
    using namespace covstark;

    CLI::App app{"Covariant Zeeman and Stark shifts of induced-representation bound states"};
    app.footer(
        "Commands: spectrum, zeeman, stark-electric, stark-scalar, stark-combined, orthonormality,\n"
        "          trajectory, concatenate, selfcheck\n"
        "Defaults: e = m = a0 = r0 = 1, B = E = eps = c2 = 0, q = +-1/2, format json, output stdout.\n"
        "Basis presets: ground (stark-scalar: 2s2p, orthonormality: low-lying).\n"
        "Exit codes: 0 ok, 1 error, 2 selfcheck tolerance failure.");

    std::string command, config_path;
    ConfigOverrides ov;
    std::optional<double> c2, E, B, eps, r0;
    std::optional<std::string> basis, out, format;

    app.add_option("command", command, "Computation to run")->required();
    app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    app.add_option("--c2", c2, "Second Casimir label c2");
    app.add_option("--E", E, "Electric field along axis 1");
    app.add_option("--B", B, "Magnetic field along axis 1");
    app.add_option("--eps", eps, "Fifth-field strength eps^1");
    app.add_option("--r0", r0, "Frame-vector length scale r0");
    app.add_option("--basis", basis, "Basis preset: ground, 2s2p or low-lying");
    app.add_option("--out", out, "Report path (default stdout)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ov.command = command;
        ov.c2 = c2;
        ov.E = E;
        ov.B = B;
        ov.eps = eps;
        ov.r0 = r0;
        ov.basis = basis;
        ov.out = out;
        ov.format = format;
        const RunConfig cfg = parse_config(config_path, ov);
        const RunResult result = run(cfg);

        if (!result.table.empty()) std::cout << result.table;
        if (!cfg.out.empty()) {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f) throw ConfigError("cannot write '" + cfg.out + "'");
            f << result.report;
        } else if (result.table.empty()) {
            std::cout << result.report;
        }
        return result.exit_code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
