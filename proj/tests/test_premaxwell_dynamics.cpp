#include "doctest.h"

#include <cmath>
#include <numbers>

#include "covstark/errors.hpp"
#include "covstark/premaxwell_dynamics.hpp"

using namespace covstark;

namespace {

LorentzMatrix magnetic(double b)
{
    LorentzMatrix F = LorentzMatrix::Zero();
    F(1, 2) = b;
    F(2, 1) = -b;
    return F;
}

LorentzMatrix mixed_field()
{
    LorentzMatrix F = LorentzMatrix::Zero();
    F(0, 1) = 0.3;
    F(1, 0) = -0.3;
    F(2, 3) = -0.7;
    F(3, 2) = 0.7;
    F(1, 2) = 0.4;
    F(2, 1) = -0.4;
    return F;
}

} // namespace

TEST_CASE("field strengths of the presets")
{
    const LorentzMatrix F = mixed_field();
    const FourVector x(0.3, -0.2, 1.1, 0.5);
    const FieldStrength5 c = field_strength_numeric(constant_field_preset(F), x, 0.4);
    CHECK((c.f - F).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(c.f5.cwiseAbs().maxCoeff() < 1e-9);

    const FourVector eps(0.2, -0.1, 0.05, 0.3);
    const FieldStrength5 e = field_strength_numeric(constant_fifth_field_preset(eps), x, 0.4);
    CHECK((e.f5 - eps).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(e.f.cwiseAbs().maxCoeff() < 1e-12);

    const FivePotential pulse = gaussian_pulse_preset(FourVector(0.1, 0.2, -0.3, 0.4), F, 0.5, 0.8);
    for (double tau : {-1.0, 0.2, 0.5, 1.7}) {
        const FieldStrength5 a = field_strength(pulse, x, tau);
        const FieldStrength5 n = field_strength_numeric(pulse, x, tau);
        CHECK((a.f - n.f).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((a.f5 - n.f5).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("three-vector fields")
{
    const FieldStrength5 f = field_strength(gaussian_pulse_preset(FourVector(0.1, 0.2, -0.3, 0.4), mixed_field(), 0.0, 1.0),
                                            FourVector(0.2, 0.1, 0.0, -0.4), 0.3);
    const ThreeVectorFields t = three_vector_decompose(f);
    const FieldStrength5 back = three_vector_recompose(t);
    CHECK((back.f - f.f).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((back.f5 - f.f5).cwiseAbs().maxCoeff() < 1e-15);
    const ThreeVectorFields m = three_vector_decompose({magnetic(2.0), FourVector::Zero()});
    CHECK(m.h[2] == 2.0);
    CHECK(m.e.norm() == 0.0);
}

TEST_CASE("homogeneous equations and the sign of the tau terms")
{
    const FivePotential pulse = gaussian_pulse_preset(FourVector(0.1, 0.2, -0.3, 0.4), mixed_field(), 0.0, 1.0);
    const FourVector x(0.2, 0.4, -0.1, 0.3);
    CHECK(homogeneous_residual(pulse, x, 0.6, -1.0) < 1e-6);
    CHECK(homogeneous_residual(pulse, x, 0.6, 1.0) > 1e-2);
    CHECK(homogeneous_residual(constant_field_preset(mixed_field()), x, 0.6, 1.0) < 1e-8);
    CHECK(field_equation_residual(constant_field_preset(mixed_field()), x, 0.0) < 1e-8);
    CHECK(field_equation_residual(constant_fifth_field_preset(FourVector(0.2, 0.1, 0.0, 0.3)), x, 0.0) < 1e-8);
}

TEST_CASE("cyclotron motion in a constant magnetic field")
{
    TrajectoryState s0;
    s0.xdot = FourVector(std::sqrt(1.0 + 0.25), 0.5, 0.0, 0.0);
    s0.M = 2.0;
    const auto traj = integrate_trajectory(constant_field_preset(magnetic(1.0)), s0, 10.0, 1e-3, 1000);
    const TrajectoryState& end = traj.back();
    CHECK(end.tau == doctest::Approx(10.0).epsilon(1e-14));
    const double w = 1.0 / s0.M;
    CHECK(end.xdot[1] == doctest::Approx(0.5 * std::cos(w * 10.0)).epsilon(1e-10).scale(1.0));
    CHECK(end.xdot[2] == doctest::Approx(-0.5 * std::sin(w * 10.0)).epsilon(1e-10).scale(1.0));
    CHECK(end.x[1] == doctest::Approx(0.5 / w * std::sin(w * 10.0)).epsilon(1e-10).scale(1.0));
    CHECK(end.x[0] == doctest::Approx(s0.xdot[0] * 10.0).epsilon(1e-12));
}

TEST_CASE("mass shell is conserved without fifth field and tau dependence")
{
    TrajectoryState s0;
    s0.xdot = FourVector(1.3, 0.2, -0.4, 0.6);
    const auto traj = integrate_trajectory(constant_field_preset(mixed_field()), s0, 20.0, 1e-3, 500);
    for (const auto& s : traj) CHECK(std::abs(s.xdot_sq() - s0.xdot_sq()) < 1e-10);
}

TEST_CASE("energy balance with a constant fifth field")
{
    TrajectoryState s0;
    s0.xdot = FourVector(1.0, 0.1, 0.0, 0.0);
    s0.M = 1.5;
    const auto traj = integrate_trajectory(constant_fifth_field_preset(FourVector(0.3, 0.2, -0.1, 0.0)), s0, 5.0, 1e-3, 50);
    double worst = 0.0;
    for (const auto& s : traj) worst = std::max(worst, std::abs(0.5 * s.M * (s.xdot_sq() - s0.xdot_sq()) - s.work));
    CHECK(worst < 1e-10);
    CHECK(std::abs(traj.back().xdot_sq() - s0.xdot_sq()) > 1e-3);
}

TEST_CASE("integrator argument checks")
{
    TrajectoryState s0;
    const FivePotential p = constant_field_preset(magnetic(1.0));
    CHECK_THROWS_AS(integrate_trajectory(p, s0, 1.0, 0.0), DomainError);
    s0.M = -1.0;
    CHECK_THROWS_AS(integrate_trajectory(p, s0, 1.0, 0.1), DomainError);
    s0.M = 1.0;
    s0.xdot = FourVector(1.0, 0.0, 0.0, 0.0);
    CHECK_THROWS_AS(integrate_trajectory(constant_fifth_field_preset(FourVector(0.0, 1e308, 0.0, 0.0)), s0, 10.0, 1.0),
                    StepOverflowError);
    CHECK(integrate_trajectory(p, s0, 0.0, 0.1).size() == 1);
}

TEST_CASE("concatenation of a Gaussian pulse")
{
    const LorentzMatrix F = mixed_field();
    const FourVector c(0.1, 0.2, -0.3, 0.4), x(0.5, -0.2, 0.3, 1.0);
    const double width = 0.7;
    const Concatenated out = concatenate(gaussian_pulse_preset(c, F, 0.2, width), x, {-10.0, 10.0, 4001});
    const FourVector x_low = metric() * x;
    const FourVector a = c - 0.5 * F * x_low;
    const double area = width * std::sqrt(2.0 * std::numbers::pi);
    CHECK((out.A - area * a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((out.F - area * F).cwiseAbs().maxCoeff() < 1e-9);
    CHECK_THROWS_AS(concatenate(constant_field_preset(F), x, {}), TailError);
    CHECK_THROWS_AS(concatenate(constant_field_preset(F), x, {1.0, 0.0, 10}), DomainError);
}

TEST_CASE("concatenated current of uniform motion")
{
    TrajectoryState s0;
    s0.x = FourVector(0.0, 0.1, 0.0, -0.2);
    s0.xdot = FourVector(1.2, 0.3, 0.0, 0.6);
    const auto traj = integrate_trajectory(constant_field_preset(LorentzMatrix::Zero()), s0, 4.0, 1e-3, 1);
    const auto half_step = integrate_trajectory(constant_field_preset(LorentzMatrix::Zero()), s0, 4.0, 5e-4, 1);
    for (const FourVector& y : {FourVector(1.0, 0.4, 0.1, 0.3), FourVector(2.5, 0.8, -0.2, 1.0)}) {
        const FourVector ref = uniform_motion_current(s0.x, s0.xdot, 0.0, 4.0, y, 0.5);
        const double e1 = (concatenated_current(traj, y, 0.5) - ref).cwiseAbs().maxCoeff();
        const double e2 = (concatenated_current(half_step, y, 0.5) - ref).cwiseAbs().maxCoeff();
        CHECK(e1 < 1e-6 * ref.cwiseAbs().maxCoeff());
        if (e1 > 1e-10) CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("smeared current continuity converges at second order")
{
    TrajectoryState s0;
    s0.xdot = FourVector(1.1, 0.3, 0.2, 0.0);
    const auto traj = integrate_trajectory(constant_field_preset(magnetic(1.0)), s0, 0.01, 1e-3, 1);
    const double s = 0.4;
    const ContinuityCheck coarse = event_current_continuity(traj, 5, s, s / 4, 3 * s);
    const ContinuityCheck fine = event_current_continuity(traj, 5, s, s / 8, 3 * s);
    const double ratio = coarse.max_residual / fine.max_residual;
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
    CHECK(fine.max_residual < 0.05 * fine.peak_j5);
    CHECK_THROWS_AS(event_current_continuity(traj, 5, s, 0.3, 1.0), ResolutionError);
    const double g = smeared_delta(FourVector::Zero(), 1.0);
    CHECK(g == doctest::Approx(1.0 / (4.0 * std::numbers::pi * std::numbers::pi)));
}

TEST_CASE("tabulated fields interpolate and hold their ends")
{
    const LorentzMatrix F = magnetic(1.0);
    const FivePotential p = tabulated_preset({0.0, 1.0}, {LorentzMatrix::Zero(), F}, {FourVector::Zero(), FourVector::Zero()});
    const FourVector x(0.0, 0.3, 0.2, 0.0);
    CHECK((field_strength(p, x, 0.5).f - 0.5 * F).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((field_strength(p, x, 3.0).f - F).cwiseAbs().maxCoeff() < 1e-8);
}
