#pragma once

// Run configuration: JSON file plus command-line overrides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covstark/bound_states.hpp"
#include "covstark/perturbation_spectra.hpp"
#include "covstark/premaxwell_dynamics.hpp"

#include "json.hpp"

namespace covstark {

enum class Command {
    Spectrum,
    Zeeman,
    StarkElectric,
    StarkScalar,
    StarkCombined,
    Orthonormality,
    Trajectory,
    Concatenate,
    Selfcheck,
};

enum class OutputFormat { Csv, Json };

Command parse_command(const std::string& name);
std::string command_name(Command c);

struct TrajectoryConfig {
    std::string preset = "constant-field"; // constant-field | fifth-field | pulse
    LorentzMatrix F = LorentzMatrix::Zero();
    FourVector eps = FourVector::Zero();
    FourVector c = FourVector::Zero(); // pulse offset c^mu
    double tau0 = 0.0;                 // pulse centre
    double width = 1.0;                // pulse width
    FourVector x0 = FourVector::Zero();
    FourVector xdot0 = FourVector(1.0, 0.0, 0.0, 0.0);
    double M = 1.0;
    double tau_end = 10.0;
    double dt = 1e-3;
    int stride = 100;
};

struct ConcatenateConfig {
    FourVector x = FourVector::Zero();
    TauGrid grid;
};

struct RunConfig {
    Command command = Command::Selfcheck;
    FieldConfig physics;
    double c2 = 0.0;
    std::string basis_preset;               // empty when labels are given explicitly
    std::vector<QuantumNumbers> basis;      // resolved basis (preset or explicit)
    std::vector<HalfInt> q_values{half(1), half(-1)};
    QuadratureOptions quadrature;
    double tolerance = 1e-9;                // selfcheck comparison tolerance
    TrajectoryConfig trajectory;
    ConcatenateConfig concatenate;
    std::string out;                        // empty: stdout
    OutputFormat format = OutputFormat::Json;
};

/// Command-line overrides; unset fields leave the file value in place.
struct ConfigOverrides {
    std::optional<std::string> command;
    std::optional<double> c2, E, B, eps, r0;
    std::optional<std::string> basis;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

/// Parses JSON text. Throws ConfigError naming the offending field for
/// duplicate keys, unknown keys, wrong types and invalid values.
nlohmann::json parse_config_text(const std::string& text);

/// Builds and validates a RunConfig from parsed JSON and overrides.
RunConfig build_config(const nlohmann::json& file, const ConfigOverrides& overrides = {});

/// Reads `path` (when non-empty) and applies the overrides.
RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Canonical JSON form of the effective configuration.
nlohmann::json to_json(const RunConfig& cfg);

/// 64-bit FNV-1a of to_json(cfg).dump(), as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// "1/2" / "-3/2" / "2" or a number with an exact half-integer value.
HalfInt parse_half_int(const nlohmann::json& v, const std::string& field);

} // namespace covstark
