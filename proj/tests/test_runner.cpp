#include "doctest.h"

#include <sstream>

#include "covstark/config.hpp"
#include "covstark/errors.hpp"
#include "covstark/runner.hpp"

using namespace covstark;

namespace {

RunConfig config(const std::string& command, ConfigOverrides ov = {})
{
    ov.command = command;
    return build_config(nlohmann::json::object(), ov);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            else if (c == ',' && !quoted) {
                cells.push_back(cell);
                cell.clear();
            } else
                cell += c;
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_CASE("stark-scalar report rows")
{
    ConfigOverrides ov;
    ov.eps = 1.0;
    ov.format = "csv";
    const auto rows = csv_rows(run(config("stark-scalar", ov)).report);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == std::vector<std::string>{"basis_label", "reK", "imK", "paper_value_re", "paper_value_im", "abs_discrepancy"});
    const double want[] = {-8.0 / 3.0, -4.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0};
    for (int i = 0; i < 4; ++i) {
        REQUIRE(rows[i + 1].size() == 6);
        CHECK(std::stod(rows[i + 1][1]) == doctest::Approx(want[i]).epsilon(1e-10));
        CHECK(std::stod(rows[i + 1][3]) == doctest::Approx(want[i]).epsilon(1e-15));
        CHECK(std::stod(rows[i + 1][5]) < 1e-10);
    }
}

TEST_CASE("zeeman report rows")
{
    ConfigOverrides ov;
    ov.B = 2.0;
    ov.format = "csv";
    const auto rows = csv_rows(run(config("zeeman", ov)).report);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool up = rows[i][0].find("q=1/2") != std::string::npos;
        CHECK(std::stod(rows[i][1]) == (up ? -0.5 : 0.5));
        CHECK(rows[i][5] == "0");
    }
}

TEST_CASE("electric report carries the discrepancy")
{
    ConfigOverrides ov;
    ov.E = 1.0;
    const auto j = nlohmann::json::parse(run(config("stark-electric", ov)).report);
    CHECK(j.contains("config_hash"));
    CHECK(j.contains("tolerance"));
    const auto& d = j["discrepancy_report"];
    CHECK(d["closed_form_values"][3]["im"].get<double>() == doctest::Approx(0.25));
    CHECK(d["displayed_block_eigenvalues"][3]["im"].get<double>() == doctest::Approx(0.5 / std::sqrt(2.0)));
    CHECK(d["max_abs_discrepancy_assembled_vs_closed_form"].get<double>() == doctest::Approx(0.5 / std::sqrt(2.0) - 0.25));
    CHECK(j["rows"][0]["paper_value"]["im"].get<double>() == doctest::Approx(-0.25));
}

TEST_CASE("empty cells when no reference value exists")
{
    ConfigOverrides ov;
    ov.E = 1.0;
    ov.B = 1.0;
    ov.format = "csv";
    const auto rows = csv_rows(run(config("spectrum", ov)).report);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][3].empty());
        CHECK(rows[i][5].empty());
    }
}

TEST_CASE("reports are byte-identical across runs")
{
    for (const char* cmd : {"spectrum", "stark-electric", "stark-scalar", "orthonormality", "trajectory"}) {
        ConfigOverrides ov;
        ov.E = 0.4;
        ov.B = 0.2;
        ov.eps = 0.3;
        const RunConfig c = config(cmd, ov);
        CHECK(run(c).report == run(c).report);
        CHECK(run(c).report.find(config_hash(c)) != std::string::npos);
    }
}

TEST_CASE("orthonormality report")
{
    const auto j = nlohmann::json::parse(run(config("orthonormality")).report);
    CHECK(j["basis"].size() == 6);
    CHECK(j["max_abs_deviation_from_identity"].get<double>() < 1e-6);
    CHECK(j["max_abs_change_under_doubling"].get<double>() < 1e-6);
}

TEST_CASE("trajectory and concatenation reports")
{
    RunConfig c = config("trajectory");
    c.trajectory.F(1, 2) = 1.0;
    c.trajectory.F(2, 1) = -1.0;
    c.trajectory.xdot0 = FourVector(1.2, 0.3, 0.4, 0.0);
    const auto j = nlohmann::json::parse(run(c).report);
    CHECK(j["max_mass_shell_drift"].get<double>() < 1e-9);
    CHECK(j["samples"].size() == 101);

    c.command = Command::Concatenate;
    c.trajectory.preset = "pulse";
    c.trajectory.c = FourVector(1.0, 0.0, 0.0, 0.0);
    const auto k = nlohmann::json::parse(run(c).report);
    CHECK(k["A"][0].get<double>() == doctest::Approx(std::sqrt(2.0 * 3.141592653589793)).epsilon(1e-10));
}

TEST_CASE("selfcheck passes and errors propagate")
{
    const RunResult r = run(config("selfcheck"));
    CHECK(r.exit_code == 0);
    CHECK(r.table.find("FAIL") == std::string::npos);
    ConfigOverrides ov;
    ov.c2 = 0.2;
    CHECK_THROWS_AS(run(config("orthonormality", ov)), BranchError);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-0.0) == "0");
}
