#include "covstark/premaxwell_dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>

#include "covstark/errors.hpp"
#include "covstark/kernels.hpp"

namespace covstark {

namespace {

constexpr double kPi = std::numbers::pi;

FourVector unit(int mu, double h)
{
    FourVector e = FourVector::Zero();
    e[mu] = h;
    return e;
}

double g_diag(int mu) { return mu == 0 ? -1.0 : 1.0; }

int levi_civita(int i, int j, int k) { return (i - j) * (j - k) * (k - i) / 2; }

// d/dx^mu of the three-vector fields, central differences.
ThreeVectorFields three_vector_derivative(const FivePotential& p, const FourVector& x, double tau, int mu, double h)
{
    const ThreeVectorFields up = three_vector_decompose(field_strength(p, x + unit(mu, h), tau));
    const ThreeVectorFields dn = three_vector_decompose(field_strength(p, x - unit(mu, h), tau));
    ThreeVectorFields d;
    d.e = (up.e - dn.e) / (2.0 * h);
    d.h = (up.h - dn.h) / (2.0 * h);
    d.eps = (up.eps - dn.eps) / (2.0 * h);
    d.eps0 = (up.eps0 - dn.eps0) / (2.0 * h);
    return d;
}

ThreeVectorFields three_vector_tau_derivative(const FivePotential& p, const FourVector& x, double tau, double h)
{
    const ThreeVectorFields up = three_vector_decompose(field_strength(p, x, tau + h));
    const ThreeVectorFields dn = three_vector_decompose(field_strength(p, x, tau - h));
    ThreeVectorFields d;
    d.e = (up.e - dn.e) / (2.0 * h);
    d.h = (up.h - dn.h) / (2.0 * h);
    d.eps = (up.eps - dn.eps) / (2.0 * h);
    d.eps0 = (up.eps0 - dn.eps0) / (2.0 * h);
    return d;
}

struct Derivative {
    FourVector dx;
    FourVector dv;
    double dw;
};

Derivative rhs(const FivePotential& p, double tau, const FourVector& x, const FourVector& v, double M)
{
    const FieldStrength5 fs = field_strength(p, x, tau);
    const FourVector gv = metric() * v;
    return {v, (fs.f * gv + fs.f5) / M, gv.dot(fs.f5)};
}

} // namespace

FivePotential constant_field_preset(const LorentzMatrix& F)
{
    if ((F + F.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("field tensor must be antisymmetric");
    FivePotential p;
    p.a = [F](const FourVector& x, double) -> FourVector { return -0.5 * F * (metric() * x); };
    p.a5 = [](const FourVector&, double) { return 0.0; };
    p.exact = [F](const FourVector&, double) { return FieldStrength5{F, FourVector::Zero()}; };
    return p;
}

FivePotential constant_fifth_field_preset(const FourVector& eps)
{
    FivePotential p;
    p.a = [](const FourVector&, double) -> FourVector { return FourVector::Zero(); };
    p.a5 = [eps](const FourVector& x, double) { return minkowski_dot(eps, x); };
    p.exact = [eps](const FourVector&, double) { return FieldStrength5{LorentzMatrix::Zero(), eps}; };
    return p;
}

FivePotential gaussian_pulse_preset(const FourVector& c, const LorentzMatrix& F, double tau0, double width)
{
    if (!(width > 0.0)) throw DomainError("pulse width must be positive");
    if ((F + F.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("field tensor must be antisymmetric");
    auto g = [tau0, width](double tau) {
        const double t = (tau - tau0) / width;
        return std::exp(-0.5 * t * t);
    };
    FivePotential p;
    p.a = [=](const FourVector& x, double tau) -> FourVector { return g(tau) * (c - 0.5 * F * (metric() * x)); };
    p.a5 = [](const FourVector&, double) { return 0.0; };
    p.exact = [=](const FourVector& x, double tau) {
        const double dg = -(tau - tau0) / (width * width) * g(tau);
        return FieldStrength5{g(tau) * F, -dg * (c - 0.5 * F * (metric() * x))};
    };
    return p;
}

FivePotential tabulated_preset(std::vector<double> tau, std::vector<LorentzMatrix> F, std::vector<FourVector> eps)
{
    if (tau.size() < 2 || F.size() != tau.size() || eps.size() != tau.size())
        throw DomainError("tabulated field needs at least two samples of matching length");
    if (!std::is_sorted(tau.begin(), tau.end()) || std::adjacent_find(tau.begin(), tau.end()) != tau.end())
        throw DomainError("tabulated tau grid must be strictly increasing");
    for (const auto& f : F)
        if ((f + f.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("tabulated F must be antisymmetric");

    struct Table {
        std::vector<double> tau;
        std::vector<LorentzMatrix> F;
        std::vector<FourVector> eps;

        std::pair<std::size_t, double> locate(double t) const
        {
            if (t <= tau.front()) return {0, 0.0};
            if (t >= tau.back()) return {tau.size() - 2, 1.0};
            const auto it = std::upper_bound(tau.begin(), tau.end(), t);
            const std::size_t i = static_cast<std::size_t>(it - tau.begin()) - 1;
            return {i, (t - tau[i]) / (tau[i + 1] - tau[i])};
        }
    };
    const auto table = std::make_shared<Table>(Table{std::move(tau), std::move(F), std::move(eps)});

    FivePotential p;
    p.a = [table](const FourVector& x, double t) -> FourVector {
        const auto [i, w] = table->locate(t);
        const LorentzMatrix f = (1.0 - w) * table->F[i] + w * table->F[i + 1];
        return -0.5 * f * (metric() * x);
    };
    p.a5 = [table](const FourVector& x, double t) {
        const auto [i, w] = table->locate(t);
        return minkowski_dot((1.0 - w) * table->eps[i] + w * table->eps[i + 1], x);
    };
    return p;
}

FieldStrength5 field_strength_numeric(const FivePotential& p, const FourVector& x, double tau, double h)
{
    // jac(nu, mu) = d a^nu / d x^mu
    LorentzMatrix jac;
    FourVector da5;
    for (int mu = 0; mu < 4; ++mu) {
        const FourVector e = unit(mu, h);
        jac.col(mu) = (p.a(x + e, tau) - p.a(x - e, tau)) / (2.0 * h);
        da5[mu] = (p.a5(x + e, tau) - p.a5(x - e, tau)) / (2.0 * h);
    }
    FieldStrength5 out;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) out.f(mu, nu) = g_diag(mu) * jac(nu, mu) - g_diag(nu) * jac(mu, nu);
    const FourVector dtau = (p.a(x, tau + h) - p.a(x, tau - h)) / (2.0 * h);
    for (int mu = 0; mu < 4; ++mu) out.f5[mu] = g_diag(mu) * da5[mu] - dtau[mu];
    return out;
}

FieldStrength5 field_strength(const FivePotential& p, const FourVector& x, double tau, double h)
{
    if (p.exact) return p.exact(x, tau);
    return field_strength_numeric(p, x, tau, h);
}

std::vector<TrajectoryState> integrate_trajectory(const FivePotential& p, const TrajectoryState& s0, double tau_end,
                                                  double dt, int stride)
{
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    if (!(s0.M > 0.0)) throw DomainError("M must be positive");
    if (stride < 1) throw DomainError("stride must be >= 1");

    const auto steps = static_cast<long long>(std::ceil((tau_end - s0.tau) / dt - 1e-9));
    std::vector<TrajectoryState> out{s0};
    if (steps <= 0) return out;
    out.reserve(static_cast<std::size_t>(steps / stride + 2));

    TrajectoryState s = s0;
    const double M = s0.M;
    for (long long n = 1; n <= steps; ++n) {
        const double t = s0.tau + static_cast<double>(n - 1) * dt;
        const double hdt = 0.5 * dt;
        const Derivative k1 = rhs(p, t, s.x, s.xdot, M);
        const Derivative k2 = rhs(p, t + hdt, s.x + hdt * k1.dx, s.xdot + hdt * k1.dv, M);
        const Derivative k3 = rhs(p, t + hdt, s.x + hdt * k2.dx, s.xdot + hdt * k2.dv, M);
        const Derivative k4 = rhs(p, t + dt, s.x + dt * k3.dx, s.xdot + dt * k3.dv, M);
        s.x += dt / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
        s.xdot += dt / 6.0 * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
        s.work += dt / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw);
        s.tau = s0.tau + static_cast<double>(n) * dt;
        if (!s.x.allFinite() || !s.xdot.allFinite() || !std::isfinite(s.work))
            throw StepOverflowError("non-finite state at tau = " + std::to_string(s.tau));
        if (n % stride == 0 || n == steps) out.push_back(s);
    }
    return out;
}

ThreeVectorFields three_vector_decompose(const FieldStrength5& f)
{
    ThreeVectorFields t;
    for (int i = 1; i <= 3; ++i) {
        t.e[i - 1] = f.f(0, i);
        t.eps[i - 1] = f.f5[i];
        double h = 0.0;
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) h += 0.5 * levi_civita(i, j, k) * f.f(j, k);
        t.h[i - 1] = h;
    }
    t.eps0 = f.f5[0];
    return t;
}

FieldStrength5 three_vector_recompose(const ThreeVectorFields& t)
{
    FieldStrength5 f;
    for (int i = 1; i <= 3; ++i) {
        f.f(0, i) = t.e[i - 1];
        f.f(i, 0) = -t.e[i - 1];
        f.f5[i] = t.eps[i - 1];
    }
    f.f(2, 3) = t.h[0];
    f.f(3, 2) = -t.h[0];
    f.f(3, 1) = t.h[1];
    f.f(1, 3) = -t.h[1];
    f.f(1, 2) = t.h[2];
    f.f(2, 1) = -t.h[2];
    f.f5[0] = t.eps0;
    return f;
}

double homogeneous_residual(const FivePotential& p, const FourVector& x, double tau, double sigma, double h)
{
    std::array<ThreeVectorFields, 4> d;
    for (int mu = 0; mu < 4; ++mu) d[mu] = three_vector_derivative(p, x, tau, mu, h);
    const ThreeVectorFields dt = three_vector_tau_derivative(p, x, tau, h);

    double worst = 0.0;
    double div_h = 0.0;
    for (int i = 1; i <= 3; ++i) {
        double curl_e = 0.0, curl_eps = 0.0;
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k) {
                const int s = levi_civita(i, j, k);
                if (s == 0) continue;
                curl_e += s * d[j].e[k - 1];
                curl_eps += s * d[j].eps[k - 1];
            }
        worst = std::max(worst, std::abs(curl_e + d[0].h[i - 1]));
        worst = std::max(worst, std::abs(curl_eps - sigma * dt.h[i - 1]));
        worst = std::max(worst, std::abs(d[i].eps0 + sigma * dt.e[i - 1] + d[0].eps[i - 1]));
        div_h += d[i].h[i - 1];
    }
    return std::max(worst, std::abs(div_h));
}

double field_equation_residual(const FivePotential& p, const FourVector& x, double tau, double h)
{
    FourVector div = FourVector::Zero();
    double div5 = 0.0;
    for (int nu = 0; nu < 4; ++nu) {
        const FieldStrength5 up = field_strength(p, x + unit(nu, h), tau);
        const FieldStrength5 dn = field_strength(p, x - unit(nu, h), tau);
        div += (up.f.col(nu) - dn.f.col(nu)) / (2.0 * h);
        div5 += (up.f5[nu] - dn.f5[nu]) / (2.0 * h);
    }
    const FieldStrength5 up = field_strength(p, x, tau + h);
    const FieldStrength5 dn = field_strength(p, x, tau - h);
    div -= (up.f5 - dn.f5) / (2.0 * h);
    return std::max(div.cwiseAbs().maxCoeff(), std::abs(div5));
}

Concatenated concatenate(const FivePotential& p, const FourVector& x, const TauGrid& grid)
{
    if (grid.points < 2 || !(grid.end > grid.start)) throw DomainError("tau grid needs end > start and >= 2 points");
    const double step = (grid.end - grid.start) / (grid.points - 1);
    Concatenated out;
    double peak = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        const double tau = grid.start + i * step;
        const double w = (i == 0 || i == grid.points - 1) ? 0.5 * step : step;
        const FourVector a = p.a(x, tau);
        peak = std::max(peak, a.norm());
        out.A += w * a;
        out.F += w * field_strength(p, x, tau).f;
    }
    const double ends = std::max(p.a(x, grid.start).norm(), p.a(x, grid.end).norm());
    if (peak > 0.0 && ends > 1e-8 * peak)
        throw TailError("potential has not decayed at the ends of the tau grid (ratio " + std::to_string(ends / peak) +
                        ")");
    return out;
}

double smeared_delta(const FourVector& r, double s)
{
    const double s2 = s * s;
    return std::exp(-r.squaredNorm() / (2.0 * s2)) / (4.0 * kPi * kPi * s2 * s2);
}

EventCurrent event_current(const std::vector<TrajectoryState>& traj, std::size_t k, const FourVector& y, double s)
{
    if (!(s > 0.0)) throw DomainError("smearing must be positive");
    if (k >= traj.size()) throw DomainError("trajectory sample out of range");
    const double g = smeared_delta(y - traj[k].x, s);
    return {traj[k].xdot * g, g};
}

ContinuityCheck event_current_continuity(const std::vector<TrajectoryState>& traj, std::size_t k, double s, double h,
                                         double half_width)
{
    if (!(s > 0.0) || !(h > 0.0)) throw DomainError("smearing and spacing must be positive");
    if (h > 0.5 * s) throw ResolutionError("grid spacing exceeds half the smearing width");
    if (k < 1 || k + 1 >= traj.size()) throw DomainError("continuity needs samples on both sides of k");

    const FourVector c = traj[k].x;
    const FourVector u = traj[k].xdot;
    const double dtau = traj[k + 1].tau - traj[k - 1].tau;
    const int m = static_cast<int>(std::lround(half_width / h));
    const int n = 2 * m + 1;
    const double amp = 1.0 / (4.0 * kPi * kPi * s * s * s * s);
    const double inv = 1.0 / (2.0 * s * s);

    auto row = [&](const FourVector& center, int i1, int i2, int i3, double start, std::vector<double>& out) {
        double base = 0.0;
        const int idx[3] = {i1, i2, i3};
        for (int a = 0; a < 3; ++a) {
            const double d = c[a + 1] + (idx[a] - m) * h - center[a + 1];
            base += d * d;
        }
        kernels::gaussian_row({start, h, center[0], base, inv, amp}, out);
    };

    std::vector<double> mid(n + 2), prev(n), next(n);
    std::array<std::vector<double>, 6> side;
    for (auto& v : side) v.resize(n);

    ContinuityCheck out;
    const double start = c[0] - m * h;
    for (int i1 = 0; i1 < n; ++i1)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i3 = 0; i3 < n; ++i3) {
                row(c, i1, i2, i3, start - h, mid);
                row(c, i1 + 1, i2, i3, start, side[0]);
                row(c, i1 - 1, i2, i3, start, side[1]);
                row(c, i1, i2 + 1, i3, start, side[2]);
                row(c, i1, i2 - 1, i3, start, side[3]);
                row(c, i1, i2, i3 + 1, start, side[4]);
                row(c, i1, i2, i3 - 1, start, side[5]);
                row(traj[k - 1].x, i1, i2, i3, start, prev);
                row(traj[k + 1].x, i1, i2, i3, start, next);
                for (int i0 = 0; i0 < n; ++i0) {
                    const double div = u[0] * (mid[i0 + 2] - mid[i0]) / (2.0 * h) +
                                       u[1] * (side[0][i0] - side[1][i0]) / (2.0 * h) +
                                       u[2] * (side[2][i0] - side[3][i0]) / (2.0 * h) +
                                       u[3] * (side[4][i0] - side[5][i0]) / (2.0 * h);
                    const double dj5 = (next[i0] - prev[i0]) / dtau;
                    out.max_residual = std::max(out.max_residual, std::abs(div + dj5));
                    out.peak_j5 = std::max(out.peak_j5, mid[i0 + 1]);
                }
            }
    out.points = static_cast<std::size_t>(n) * n * n * n;
    return out;
}

FourVector concatenated_current(const std::vector<TrajectoryState>& traj, const FourVector& y, double s)
{
    if (!(s > 0.0)) throw DomainError("smearing must be positive");
    FourVector J = FourVector::Zero();
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double w = 0.5 * (traj[i + 1].tau - traj[i].tau);
        J += w * (traj[i].xdot * smeared_delta(y - traj[i].x, s) + traj[i + 1].xdot * smeared_delta(y - traj[i + 1].x, s));
    }
    return J;
}

FourVector uniform_motion_current(const FourVector& x0, const FourVector& u, double tau_a, double tau_b,
                                  const FourVector& y, double s)
{
    const double U = u.squaredNorm();
    if (U == 0.0) return FourVector::Zero();
    const FourVector d = y - x0;
    const double t_star = d.dot(u) / U;
    const double b = std::max(0.0, d.squaredNorm() - d.dot(u) * d.dot(u) / U);
    const double amp = 1.0 / (4.0 * kPi * kPi * s * s * s * s);
    const double k = std::sqrt(U) / (std::sqrt(2.0) * s);
    const double line = amp * std::exp(-b / (2.0 * s * s)) * s * std::sqrt(0.5 * kPi) / std::sqrt(U) *
                        (std::erf((tau_b - t_star) * k) - std::erf((tau_a - t_star) * k));
    return u * line;
}

} // namespace covstark
