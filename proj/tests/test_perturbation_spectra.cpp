#include "doctest.h"

#include <cmath>
#include <random>

#include "covstark/errors.hpp"
#include "covstark/perturbation_spectra.hpp"
#include "oracle.hpp"

using namespace covstark;

namespace {

double max_dist(const std::vector<cplx>& a, const std::vector<cplx>& b) { return oracle::match_distance(a, b); }

} // namespace

TEST_CASE("Zeeman shifts split the ground manifold into two levels")
{
    FieldConfig f;
    f.B = 2.0;
    CHECK(zeeman_shift(half(1), f).delta_K == cplx(-0.5, 0.0));
    CHECK(zeeman_shift(half(-1), f).delta_K == cplx(0.5, 0.0));
    const auto levels = diagonalize(zeeman_block(basis_preset("ground"), f));
    REQUIRE(levels.size() == 2);
    CHECK(levels[0].multiplicity == 2);
    CHECK(levels[1].multiplicity == 2);
    f.B = 0.0;
    CHECK(diagonalize(zeeman_block(basis_preset("ground"), f)).size() == 1);
}

TEST_CASE("scalar Stark block of the 2s-2p manifold")
{
    FieldConfig f;
    f.eps = 1.0;
    const auto block = stark_scalar_block(basis_preset("2s2p"), f);
    CHECK((block.matrix - block.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const std::vector<cplx> want{-8.0 / 3.0, -4.0 / 3.0, 4.0 / 3.0, 8.0 / 3.0};
    CHECK(max_dist(eigenvalues(block), want) < 1e-10);
    f.r0 = 2.0;
    f.a0 = 0.5;
    const std::vector<cplx> want2{-(4.0 / 3.0 + 1.0), -(4.0 / 3.0 - 1.0), 4.0 / 3.0 - 1.0, 4.0 / 3.0 + 1.0};
    CHECK(max_dist(eigenvalues(stark_scalar_block(basis_preset("2s2p"), f)), want2) < 1e-10);
    const auto nr = nonrelativistic_reference({0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0});
    CHECK(nr[0].delta_K.real() == -3.0);
    CHECK(nr[1].delta_K.real() == 3.0);
}

TEST_CASE("ground electric block against the closed form and the displayed block")
{
    FieldConfig f;
    f.E = 1.0;
    const GroundStarkReport r = ground_state_stark(0.0, f);
    const double s = 0.5 / std::sqrt(2.0);
    CHECK(max_dist(r.numeric, {cplx(0, -s), cplx(0, -s), cplx(0, s), cplx(0, s)}) < 1e-14);
    CHECK(max_dist(r.displayed_values, r.numeric) < 1e-14);
    CHECK(max_dist(r.closed_form, {cplx(0, -0.25), cplx(0, -0.25), cplx(0, 0.25), cplx(0, 0.25)}) < 1e-15);
    CHECK(r.max_discrepancy == doctest::Approx(s - 0.25).epsilon(1e-13));
    // The assembled block is the displayed one up to the sign of the L-mixing entries.
    for (double c2 : {0.0, 0.7}) {
        const GroundStarkReport g = ground_state_stark(c2, f);
        Eigen::MatrixXcd flipped = g.displayed;
        for (Eigen::Index i = 0; i < flipped.rows(); ++i)
            for (Eigen::Index j = 0; j < flipped.cols(); ++j)
                if (g.block.basis[i].L != g.block.basis[j].L) flipped(i, j) = -flipped(i, j);
        CHECK((g.block.matrix - flipped).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        FieldConfig f;
        f.B = u(rng);
        f.E = u(rng);
        f.eps = u(rng);
        f.r0 = 1.0 + std::abs(u(rng));
        for (const char* preset : {"ground", "2s2p"}) {
            const auto basis = basis_preset(preset, preset[0] == 'g' ? u(rng) : 0.0);
            PerturbationBlock block = zeeman_block(basis, f);
            block.matrix += stark_combined_block(basis, f).matrix;
            CHECK(max_dist(eigenvalues(block), oracle::eigenvalues(block.matrix)) < 1e-12);
        }
    }
}

TEST_CASE("electric eigenvalues are imaginary conjugate pairs and scale linearly")
{
    for (double c2 : {0.0, 0.25, 1.3, -0.8}) {
        FieldConfig f;
        f.E = 0.7;
        const auto block = stark_electric_block(basis_preset("ground", c2), f);
        CHECK(std::abs(block.matrix.trace().real()) < 1e-12);
        CHECK(std::abs(block.matrix.determinant().imag()) < 1e-12);
        const auto v = eigenvalues(block);
        for (const auto& x : v) CHECK(std::abs(x.real()) < 1e-12);
        std::vector<cplx> conj;
        for (const auto& x : v) conj.push_back(std::conj(x));
        CHECK(max_dist(v, conj) < 1e-12);

        FieldConfig f2 = f;
        f2.E = 1.4;
        const auto v2 = eigenvalues(stark_electric_block(basis_preset("ground", c2), f2));
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v2[i] - 2.0 * v[i]) <= 1e-12 * std::abs(2.0 * v[i]));

        const auto closed = e_cont_closed_form(c2, f);
        for (const auto& x : closed) CHECK(std::abs(x.real()) < 1e-15);
    }
}

TEST_CASE("scalar eigenvalues are real and scale linearly")
{
    FieldConfig f;
    f.eps = 0.37;
    f.r0 = 1.7;
    const auto v = eigenvalues(stark_scalar_block(basis_preset("2s2p"), f));
    f.eps *= 2.0;
    const auto v2 = eigenvalues(stark_scalar_block(basis_preset("2s2p"), f));
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(std::abs(v[i].imag()) < 1e-14);
        CHECK(std::abs(v2[i] - 2.0 * v[i]) <= 1e-12 * std::abs(2.0 * v[i]));
    }
}

TEST_CASE("basis closure")
{
    FieldConfig f;
    f.E = 1.0;
    f.eps = 1.0;
    // L = 3/2 alone couples to L = 1/2, which lies outside its range: allowed truncation.
    CHECK_NOTHROW(stark_electric_block({{0, 0, 0, half(3), half(1), 0.0}}, f));
    // L = 1/2 and 5/2 without 3/2 leave a gap inside the range.
    CHECK_THROWS_AS(stark_electric_block({{0, 0, 0, half(1), half(1), 0.0}, {0, 0, 0, half(5), half(1), 0.0}}, f),
                    BasisNotClosedError);
    CHECK_THROWS_AS(stark_scalar_block({{1, 0, 0, half(1), half(1), 0.0}, {0, 1, 0, half(1), half(1), 0.0},
                                        {0, 1, 0, half(1), half(-1), 0.0}, {0, 0, 0, half(1), half(-1), 0.0}},
                                       f),
                    BasisNotClosedError);
    CHECK_THROWS_AS(basis_preset("nope"), DomainError);
}

TEST_CASE("coupling reductions on generator matrices")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
    for (int i = 0; i < 50; ++i) {
        const Eigen::Vector3d B(u(rng), u(rng), u(rng)), E(u(rng), u(rng), u(rng));
        const double e = u(rng), m = 0.5 + std::abs(u(rng));
        CHECK((coupling_matrix(field_tensor(zero, B), e, m) - magnetic_reduction(B, e, m)).cwiseAbs().maxCoeff() <
              1e-14);
        CHECK((coupling_matrix(field_tensor(E, zero), e, m) - electric_reduction(E, e, m)).cwiseAbs().maxCoeff() <
              1e-14);
    }
    const LorentzMatrix F = field_tensor(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(4, 5, 6));
    CHECK((F + F.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(F(0, 1) == 1.0);
    CHECK(F(1, 2) == 6.0);
    CHECK(F(3, 1) == 5.0);
}

TEST_CASE("dimension and field validation")
{
    FieldConfig f;
    f.m = 0.0;
    CHECK_THROWS_AS(validate(f), DomainError);
    PerturbationBlock big{{}, Eigen::MatrixXcd::Identity(17, 17)};
    CHECK_THROWS_AS(eigenvalues(big), DomainError);
}
