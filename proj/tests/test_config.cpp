#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "covstark/config.hpp"
#include "covstark/errors.hpp"

using namespace covstark;

namespace {

RunConfig from_text(const std::string& text, const ConfigOverrides& ov = {})
{
    return build_config(parse_config_text(text), ov);
}

std::string error_of(const std::string& text)
{
    try {
        from_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("minimal file fills the defaults")
{
    const RunConfig c = from_text(R"({"command": "zeeman", "physics": {"B": 1, "e": 1, "m": 1}})");
    CHECK(c.command == Command::Zeeman);
    CHECK(c.physics.B == 1.0);
    CHECK(c.physics.r0 == 1.0);
    CHECK(c.physics.a0 == 1.0);
    CHECK(c.c2 == 0.0);
    CHECK(c.basis_preset == "ground");
    CHECK(c.basis.size() == 4);
    CHECK(c.q_values.size() == 2);
    CHECK(c.format == OutputFormat::Json);
    CHECK(c.out.empty());
}

TEST_CASE("duplicate keys name the key")
{
    CHECK(error_of(R"({"command": "zeeman", "command": "spectrum"})").find("duplicate key 'command'") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "physics": {"B": 1, "B": 2}})").find("duplicate key 'physics.B'") !=
          std::string::npos);
    // The same key in different objects is not a duplicate.
    CHECK_NOTHROW(from_text(R"({"command": "trajectory", "trajectory": {"eps": [0,0,0,0]}, "physics": {"eps": 1}})"));
}

TEST_CASE("flags override file values")
{
    ConfigOverrides ov;
    ov.c2 = 0.3;
    ov.E = 2.0;
    ov.format = "csv";
    const RunConfig c = from_text(R"({"command": "stark-electric", "physics": {"c2": 0.0, "E": 1}})", ov);
    CHECK(c.c2 == 0.3);
    CHECK(c.physics.E == 2.0);
    CHECK(c.format == OutputFormat::Csv);
    for (const auto& s : c.basis) CHECK(s.c2 == 0.3);
    ov.command = "zeeman";
    CHECK(from_text(R"({"command": "spectrum"})", ov).command == Command::Zeeman);
}

TEST_CASE("field-level errors")
{
    CHECK(error_of(R"({"command": "zeeman", "physics": {"bogus": 1}})").find("physics.bogus") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "extra": 1})").find("'extra'") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "physics": {"m": 0}})").find("physics.m") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "physics": {"B": "big"}})").find("physics.B") != std::string::npos);
    CHECK(error_of(R"({"command": "fly"})").find("unknown command") != std::string::npos);
    CHECK(error_of(R"({})").find("'command' is required") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "numerics": {"tolerance": 0}})").find("numerics.tolerance") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "basis": [{"n_a": 0, "ell": 0, "n": 1}]})").find("basis[0]") !=
          std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "basis": "none"})").find("basis") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "q": ["1"]})").find("q[0]") != std::string::npos);
    CHECK(error_of(R"({"command": "zeeman", "output": {"format": "xml"}})").find("output.format") != std::string::npos);
    CHECK(error_of(R"({"command": "trajectory", "trajectory": {"F": [[0,1,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}})")
              .find("antisymmetric") != std::string::npos);
    CHECK(error_of("{\"command\": ").find("malformed") != std::string::npos);
}

TEST_CASE("explicit basis labels and half-integers")
{
    const RunConfig c = from_text(R"({"command": "stark-electric",
        "basis": [{"n_a": 0, "ell": 0, "n": 0, "L": "1/2", "q": "-1/2"}, {"n_a": 0, "ell": 0, "n": 0, "L": 1.5, "q": -0.5}],
        "q": ["-1/2"]})");
    REQUIRE(c.basis.size() == 2);
    CHECK(c.basis[1].L == half(3));
    CHECK(c.basis[1].q == half(-1));
    CHECK(c.basis_preset.empty());
    CHECK(parse_half_int(nlohmann::json("-3/2"), "x") == half(-3));
    CHECK(parse_half_int(nlohmann::json(2), "x") == half(4));
    CHECK_THROWS_AS(parse_half_int(nlohmann::json(0.25), "x"), ConfigError);
    CHECK_THROWS_AS(parse_half_int(nlohmann::json("1/3"), "x"), ConfigError);
}

TEST_CASE("config hash is stable and sensitive")
{
    const RunConfig a = from_text(R"({"command": "zeeman", "physics": {"B": 1}})");
    const RunConfig b = from_text(R"({"physics": {"B": 1.0}, "command": "zeeman"})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).size() == 16);
    ConfigOverrides ov;
    ov.B = 1.5;
    CHECK(config_hash(from_text(R"({"command": "zeeman", "physics": {"B": 1}})", ov)) != config_hash(a));
    // Round trip through the canonical form.
    nlohmann::json canon = to_json(a);
    canon.erase("basis_preset");
    canon["basis"] = "ground";
    CHECK(config_hash(build_config(canon)) == config_hash(a));
}

TEST_CASE("configuration files")
{
    const std::string path = "covstark_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"command": "stark-scalar", "physics": {"eps": 1}, "output": {"format": "csv"}})";
    }
    const RunConfig c = parse_config(path);
    CHECK(c.command == Command::StarkScalar);
    CHECK(c.basis_preset == "2s2p");
    CHECK(c.format == OutputFormat::Csv);
    std::remove(path.c_str());
    CHECK_THROWS_AS(parse_config("does/not/exist.json"), ConfigError);
    ConfigOverrides ov;
    ov.command = "selfcheck";
    CHECK(parse_config("", ov).command == Command::Selfcheck);
}
