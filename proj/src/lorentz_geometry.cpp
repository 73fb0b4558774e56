#include "covstark/lorentz_geometry.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "covstark/errors.hpp"

namespace covstark {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double g_diag(int mu) { return mu == 0 ? -1.0 : 1.0; }

LorentzMatrix boost03(double alpha)
{
    LorentzMatrix m = LorentzMatrix::Identity();
    m(0, 0) = m(3, 3) = std::cosh(alpha);
    m(0, 3) = m(3, 0) = std::sinh(alpha);
    return m;
}

LorentzMatrix rotation31(double omega)
{
    LorentzMatrix m = LorentzMatrix::Identity();
    m(1, 1) = m(3, 3) = std::cos(omega);
    m(1, 3) = -std::sin(omega);
    m(3, 1) = std::sin(omega);
    return m;
}

LorentzMatrix rotation23(double gamma)
{
    LorentzMatrix m = LorentzMatrix::Identity();
    m(2, 2) = m(3, 3) = std::cos(gamma);
    m(2, 3) = std::sin(gamma);
    m(3, 2) = -std::sin(gamma);
    return m;
}

} // namespace

const LorentzMatrix& metric()
{
    static const LorentzMatrix g = FourVector(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    return g;
}

FourVector standard_frame_vector() { return FourVector(0.0, 0.0, 0.0, 1.0); }

LorentzMatrix frame_matrix_LT(const FrameParams& p)
{
    const double ca = std::cosh(p.alpha), sa = std::sinh(p.alpha);
    const double cw = std::cos(p.omega), sw = std::sin(p.omega);
    const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);

    LorentzMatrix m;
    m << ca, 0.0, 0.0, sa,
         -sw * sa, cw, 0.0, -sw * ca,
         sg * cw * sa, sg * sw, cg, sg * cw * ca,
         cg * cw * sa, cg * sw, -sg, cg * cw * ca;
    return m;
}

LorentzMatrix frame_matrix_LT_from_exponentials(const FrameParams& p)
{
    const LorentzMatrix g23 = p.gamma * generator_action(2, 3);
    const LorentzMatrix g31 = p.omega * generator_action(3, 1);
    const LorentzMatrix g03 = p.alpha * generator_action(0, 3);
    return LorentzMatrix(g23.exp()) * LorentzMatrix(g31.exp()) * LorentzMatrix(g03.exp());
}

LorentzMatrix frame_matrix_L(const FrameParams& p)
{
    const LorentzMatrix& g = metric();
    return g * frame_matrix_LT(p).transpose() * g;
}

FourVector frame_vector(const FrameParams& p)
{
    const double ca = std::cosh(p.alpha);
    const double cw = std::cos(p.omega);
    return FourVector(std::sinh(p.alpha), -std::sin(p.omega) * ca, std::sin(p.gamma) * cw * ca,
                      std::cos(p.gamma) * cw * ca);
}

FrameParams frame_params_from_vector(const FourVector& n, double tol)
{
    if (!n.allFinite()) throw FrameRecoveryError("non-finite frame vector");
    const double norm = minkowski_norm2(n);
    if (std::abs(norm - 1.0) > tol)
        throw FrameRecoveryError("frame vector is not unit spacelike (n.n = " + std::to_string(norm) + ")");

    FrameParams p;
    p.alpha = std::asinh(n[0]);
    const double s = -n[1] / std::cosh(p.alpha);
    if (std::abs(s) >= 1.0 - 1e-14)
        throw FrameRecoveryError("omega at the chart boundary (|sin omega| = 1)");
    p.omega = std::asin(s);
    double gamma = std::atan2(n[2], n[3]);
    if (gamma < 0.0) gamma += kTwoPi;
    p.gamma = gamma;
    return p;
}

double lorentz_defect(const LorentzMatrix& lambda)
{
    const LorentzMatrix& g = metric();
    return (lambda.transpose() * g * lambda - g).cwiseAbs().maxCoeff();
}

LorentzMatrix little_group_matrix(const LorentzMatrix& lambda, const FrameParams& p)
{
    if (lorentz_defect(lambda) > 1e-10) throw DomainError("little_group_matrix: argument is not a Lorentz matrix");
    const FourVector moved = lambda * frame_vector(p);
    const FrameParams q = frame_params_from_vector(moved, 1e-9);
    return frame_matrix_L(q) * lambda * frame_matrix_LT(p);
}

LorentzMatrix generator(int s, int l)
{
    LorentzMatrix m = LorentzMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            double v = 0.0;
            if (s == mu && l == nu) v += g_diag(s) * g_diag(l);
            if (s == nu && l == mu) v -= g_diag(s) * g_diag(l);
            m(mu, nu) = v;
        }
    }
    return m;
}

LorentzMatrix generator_action(int s, int l) { return metric() * generator(s, l); }

const std::array<GeneratorIndex, 6>& generator_indices()
{
    static const std::array<GeneratorIndex, 6> idx{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return idx;
}

std::array<LorentzMatrix, 6> generator_matrices()
{
    std::array<LorentzMatrix, 6> out;
    for (std::size_t i = 0; i < 6; ++i) out[i] = generator(generator_indices()[i].first, generator_indices()[i].second);
    return out;
}

LorentzMatrix commutator_from_structure_constants(int a, int b, int c, int d)
{
    auto gg = [](int i, int j) { return i == j ? g_diag(i) : 0.0; };
    return gg(b, c) * generator_action(a, d) - gg(b, d) * generator_action(a, c) -
           gg(a, c) * generator_action(b, d) + gg(a, d) * generator_action(b, c);
}

std::array<LorentzMatrix, 3> frame_matrix_LT_param_derivatives(const FrameParams& p)
{
    const LorentzMatrix r23 = rotation23(p.gamma);
    const LorentzMatrix r31 = rotation31(p.omega);
    const LorentzMatrix b03 = boost03(p.alpha);
    return {r23 * r31 * b03 * generator_action(0, 3),
            r23 * generator_action(3, 1) * r31 * b03,
            generator_action(2, 3) * r23 * r31 * b03};
}

Eigen::Matrix<double, 4, 3> frame_jacobian(const FrameParams& p)
{
    const auto d = frame_matrix_LT_param_derivatives(p);
    const FourVector e = standard_frame_vector();
    Eigen::Matrix<double, 4, 3> j;
    for (int i = 0; i < 3; ++i) j.col(i) = d[i] * e;
    return j;
}

std::array<LorentzMatrix, 4> frame_matrix_LT_n_derivatives(const FrameParams& p)
{
    if (std::abs(std::cos(p.omega)) < 1e-12)
        throw SingularFrameError("frame chart degenerate at omega = +-pi/2");

    Eigen::Matrix4d aug;
    aug.leftCols<3>() = frame_jacobian(p);
    aug.col(3) = frame_vector(p);
    const Eigen::Matrix4d inv = aug.inverse();
    if (!inv.allFinite()) throw SingularFrameError("frame Jacobian is rank deficient");

    const auto dp = frame_matrix_LT_param_derivatives(p);
    std::array<LorentzMatrix, 4> out;
    for (int mu = 0; mu < 4; ++mu) {
        out[mu] = LorentzMatrix::Zero();
        for (int i = 0; i < 3; ++i) out[mu] += dp[i] * inv(i, mu);
    }
    return out;
}

std::array<LorentzMatrix, 4> s_matrices_mixed(const FrameParams& p)
{
    const LorentzMatrix l = frame_matrix_L(p);
    auto dn = frame_matrix_LT_n_derivatives(p);
    for (auto& m : dn) m = l * m;
    return dn;
}

std::array<LorentzMatrix, 4> s_matrices(const FrameParams& p)
{
    auto s = s_matrices_mixed(p);
    for (auto& m : s) m = metric() * m;
    return s;
}

LorentzMatrix frame_matrix_LT_extended(const FourVector& n)
{
    const double norm = minkowski_norm2(n);
    if (!(norm > 0.0)) throw FrameRecoveryError("extension needs a spacelike vector");
    return frame_matrix_LT(frame_params_from_vector(n / std::sqrt(norm), 1e-9));
}

FourVector rms_map(const RMSPoint& pt)
{
    const double st = std::sin(pt.theta);
    return FourVector(pt.rho * std::sinh(pt.beta) * st, pt.rho * std::cosh(pt.beta) * st * std::cos(pt.phi),
                      pt.rho * std::cosh(pt.beta) * st * std::sin(pt.phi), pt.rho * std::cos(pt.theta));
}

double rms_rule(const FourVector& y) { return y[1] * y[1] + y[2] * y[2] - y[0] * y[0]; }

RMSPoint rms_inverse(const FourVector& y)
{
    const double scale = y.squaredNorm();
    double s2 = rms_rule(y);
    if (s2 < -1e-12 * (scale > 1.0 ? scale : 1.0)) throw OutOfRMSError("point lies outside the restricted Minkowski space");
    if (s2 < 0.0) s2 = 0.0;

    RMSPoint pt;
    const double s = std::sqrt(s2);
    pt.rho = std::hypot(s, y[3]);
    pt.theta = std::atan2(s, y[3]);
    if (s > 0.0) {
        const double transverse = std::hypot(y[1], y[2]);
        pt.beta = std::atanh(y[0] / transverse);
        double phi = std::atan2(y[2], y[1]);
        if (phi < 0.0) phi += kTwoPi;
        pt.phi = phi;
    }
    return pt;
}

GeneratorVariation classical_generator_action(const LorentzMatrix& action, const FrameParams& p,
                                              const FourVector& y)
{
    const FourVector n = frame_vector(p);
    const FourVector dn = action * n;
    const auto s = s_matrices_mixed(p);

    LorentzMatrix m = frame_matrix_L(p) * action * frame_matrix_LT(p);
    for (int mu = 0; mu < 4; ++mu) m -= s[mu] * dn[mu];
    return {dn, m * y};
}

GeneratorVariation classical_generator_action(GeneratorIndex idx, const FrameParams& p, const FourVector& y)
{
    return classical_generator_action(generator_action(idx.first, idx.second), p, y);
}

std::pair<FourVector, FourVector> transform_phase_point(const LorentzMatrix& lambda, const FrameParams& p,
                                                        const FourVector& y)
{
    const FourVector n1 = lambda * frame_vector(p);
    return {n1, little_group_matrix(lambda, p) * y};
}

FourVector covariant_derivative(const FrameFunction& f, const FrameParams& p, const FourVector& y, double h)
{
    const FourVector n = frame_vector(p);
    FourVector grad_y;
    for (int a = 0; a < 4; ++a) {
        FourVector e = FourVector::Zero();
        e[a] = h;
        grad_y[a] = (f(n, y + e) - f(n, y - e)) / (2.0 * h);
    }

    const auto s = s_matrices_mixed(p);
    FourVector out;
    for (int mu = 0; mu < 4; ++mu) {
        FourVector e = FourVector::Zero();
        e[mu] = h;
        const double dn = (f(n + e, y) - f(n - e, y)) / (2.0 * h);
        out[mu] = dn - (s[mu] * y).dot(grad_y);
    }
    return out;
}

} // namespace covstark
