#include "covstark/bound_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "covstark/errors.hpp"
#include "covstark/kernels.hpp"
#include "covstark/quadrature.hpp"

namespace covstark {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double factorial(int n)
{
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

void require_c2_zero(const QuantumNumbers& qn)
{
    if (qn.c2 != 0.0)
        throw BranchError("numeric wavefunctions are restricted to c2 = 0 (got c2 = " + std::to_string(qn.c2) + ")");
}

double radial_factor(const QuantumNumbers& qn, double a0, double rho)
{
    if (rho <= 0.0) return 0.0;
    return coulomb_radial(qn.radial(a0), rho) / std::sqrt(rho);
}

double theta_factor(const QuantumNumbers& qn, double xi)
{
    const double c = std::sqrt((2.0 * qn.ell + 1.0) / 2.0 * factorial(qn.ell - qn.n) / factorial(qn.ell + qn.n));
    return std::pow(1.0 - xi * xi, -0.25) * c * assoc_legendre(qn.ell, qn.n, xi);
}

cplx xi_factor(const QuantumNumbers& qn, int k, double alpha)
{
    const HalfInt nh = qn.n_hat();
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const double c = sign * std::sqrt(factorial(2 * qn.n + k) / (factorial(2 * qn.n) * factorial(k)));
    const double u = std::tanh(alpha);
    const double one_minus = 2.0 / (1.0 + std::exp(2.0 * alpha));
    const double one_plus = 2.0 / (1.0 + std::exp(-2.0 * alpha));
    const cplx a(0.0, -qn.c2 / nh.value());
    const cplx b = (nh + HalfInt::from_int(k)).value();
    return c * std::pow(std::cosh(alpha), nh.value() - 1.0) *
           generalized_PL_second_branch(qn.L, a, b, u, one_minus, one_plus);
}

cplx z_factor(const QuantumNumbers& qn, int k, double z)
{
    const HalfInt mk = qn.n_hat() + HalfInt::from_int(k);
    return generalized_PL(qn.L, qn.q.value(), (-mk).value(), z);
}

double beta_factor(const QuantumNumbers& qn, int k, double beta)
{
    const int n = qn.n;
    const double c = std::sqrt(factorial(2 * n + k) / factorial(k));
    return c / std::sqrt(std::cosh(beta)) * assoc_legendre(n + k, -n, std::tanh(beta));
}

cplx phi_factor(const QuantumNumbers& qn, int k, double phi)
{
    return std::exp(kI * ((qn.n + k + 0.5) * phi)) / std::sqrt(2.0 * kPi);
}

cplx gamma_factor(const QuantumNumbers& qn, double gamma) { return std::exp(-kI * (qn.q.value() * gamma)); }

struct Rules {
    QuadratureRule rho, polar, alpha, zeta_like, beta;
    std::vector<double> periodic_nodes, periodic_weights;
    double line_width;
    double line_cutoff;
};

Rules make_rules(const QuadratureOptions& o, double rho_scale)
{
    const bool alt = o.scheme == QuadratureOptions::Scheme::Alternate;
    Rules r;
    r.rho = alt ? build_quadrature(QuadratureDomain::mapped_half_line(rho_scale), o.rho_order)
                : build_quadrature(QuadratureDomain::half_line(rho_scale), o.rho_order);
    r.polar = alt ? build_quadrature(QuadratureDomain::interval(0.0, kPi), o.xi_order)
                  : build_quadrature(QuadratureDomain::interval(-1.0, 1.0), o.xi_order);
    r.zeta_like = alt ? build_quadrature(QuadratureDomain::interval(-0.5 * kPi, 0.5 * kPi), o.z_order)
                      : build_quadrature(QuadratureDomain::interval(-1.0, 1.0), o.z_order);
    r.alpha = build_quadrature(QuadratureDomain::line(o.line_cutoff, o.line_panels), o.line_order);
    r.beta = r.alpha;
    r.line_width = 2.0 * o.line_cutoff / o.line_panels;
    r.line_cutoff = o.line_cutoff;
    for (int i = 0; i < o.periodic_points; ++i) {
        r.periodic_nodes.push_back(2.0 * kPi * i / o.periodic_points);
        r.periodic_weights.push_back(2.0 * kPi / o.periodic_points);
    }
    return r;
}

// Share of a line integral carried by the outermost panel on each side.
double tail_share(const Rules& r, const std::vector<double>& w, const std::vector<cplx>& f, cplx total)
{
    if (std::abs(total) < 1e-14) return 0.0;
    cplx outer = 0.0;
    const std::vector<double>& x = r.alpha.nodes;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > r.line_cutoff - r.line_width) outer += w[i] * f[i];
    return std::abs(outer) / std::abs(total);
}

} // namespace

double QuantumNumbers::c1() const
{
    const double nh = n_hat().value();
    return nh * nh - 1.0 - c2 * c2 / (nh * nh);
}

std::string QuantumNumbers::label() const
{
    std::ostringstream os;
    os << "na=" << n_a << ",l=" << ell << ",n=" << n << ",L=" << L.str() << ",q=" << q.str() << ",c2=" << c2;
    return os.str();
}

void validate(const QuantumNumbers& qn)
{
    if (qn.n_a < 0 || qn.ell < 0 || qn.n < 0) throw DomainError("negative label in " + qn.label());
    if (qn.n > qn.ell) throw DomainError("n > ell in " + qn.label());
    if (!qn.L.is_half_odd() || qn.L < qn.n_hat()) throw DomainError("L must be n_hat + k, k >= 0, in " + qn.label());
    if (!qn.q.is_half_odd() || qn.q > qn.L || qn.q < -qn.L) throw DomainError("q must be half-odd with |q| <= L in " + qn.label());
    if (!std::isfinite(qn.c2)) throw DomainError("c2 must be finite");
}

QuadratureOptions QuadratureOptions::doubled() const
{
    QuadratureOptions o = *this;
    o.rho_order *= 2;
    o.xi_order *= 2;
    o.z_order *= 2;
    o.periodic_points *= 2;
    o.line_panels *= 2;
    return o;
}

QuadratureOptions QuadratureOptions::alternate()
{
    QuadratureOptions o;
    o.scheme = Scheme::Alternate;
    o.rho_order = 96;
    o.xi_order = 80;
    o.z_order = 80;
    o.periodic_points = 12;
    o.line_panels = 32;
    o.line_order = 6;
    return o;
}

BoundState::BoundState(const QuantumNumbers& qn, double a0, const QuadratureOptions& opts)
    : qn_(qn), a0_(a0), norm_(fix_normalization(qn, a0, opts))
{
}

BoundState BoundState::with_normalization(const QuantumNumbers& qn, double a0, double normalization)
{
    validate(qn);
    if (!(a0 > 0.0)) throw DomainError("a0 must be positive");
    BoundState s;
    s.qn_ = qn;
    s.a0_ = a0;
    s.norm_ = normalization;
    return s;
}

cplx BoundState::operator()(const RMSPoint& pt, const FrameParams& p) const
{
    require_c2_zero(qn_);
    const double xi = std::cos(pt.theta);
    const double z = std::sin(p.omega);
    cplx sum = 0.0;
    for (int k = 0; k <= qn_.k_max(); ++k)
        sum += xi_factor(qn_, k, p.alpha) * z_factor(qn_, k, z) * beta_factor(qn_, k, pt.beta) *
               phi_factor(qn_, k, pt.phi);
    return norm_ * radial_factor(qn_, a0_, pt.rho) * theta_factor(qn_, xi) * gamma_factor(qn_, p.gamma) * sum;
}

cplx evaluate_wavefunction(const BoundState& s, const RMSPoint& pt, const FrameParams& p) { return s(pt, p); }

InnerProduct inner_product_detail(const BoundState& s1, const BoundState& s2, const QuadratureOptions& opts)
{
    const QuantumNumbers& a = s1.labels();
    const QuantumNumbers& b = s2.labels();
    require_c2_zero(a);
    require_c2_zero(b);
    const bool alt = opts.scheme == QuadratureOptions::Scheme::Alternate;

    const double pair_scale = 1.0 / (1.0 / (a.radial(s1.a0()).principal() * s1.a0()) +
                                     1.0 / (b.radial(s2.a0()).principal() * s2.a0()));
    const Rules r = make_rules(opts, pair_scale);

    std::vector<double> f1(r.rho.size()), f2(r.rho.size());
    for (std::size_t i = 0; i < r.rho.size(); ++i) {
        const double rho = r.rho.nodes[i];
        f1[i] = radial_factor(a, s1.a0(), rho) * rho * rho * rho;
        f2[i] = radial_factor(b, s2.a0(), rho);
    }
    const double i_rho = kernels::weighted_dot(r.rho.weights, f1, f2);

    f1.assign(r.polar.size(), 0.0);
    f2.assign(r.polar.size(), 0.0);
    for (std::size_t i = 0; i < r.polar.size(); ++i) {
        const double x = r.polar.nodes[i];
        const double xi = alt ? std::cos(x) : x;
        const double measure = alt ? std::sin(x) * std::sin(x) : std::sqrt(1.0 - xi * xi);
        f1[i] = theta_factor(a, xi) * measure;
        f2[i] = theta_factor(b, xi);
    }
    const double i_polar = kernels::weighted_dot(r.polar.weights, f1, f2);

    const std::size_t np = r.periodic_nodes.size();
    std::vector<cplx> c1(np), c2(np);
    for (std::size_t i = 0; i < np; ++i) {
        c1[i] = gamma_factor(a, r.periodic_nodes[i]);
        c2[i] = gamma_factor(b, r.periodic_nodes[i]);
    }
    const cplx i_gamma = kernels::weighted_cdot(r.periodic_weights, c1, c2);

    const std::size_t nl = r.alpha.size();
    const std::size_t nz = r.zeta_like.size();
    cplx sum = 0.0;
    double tail = 0.0;
    for (int k1 = 0; k1 <= a.k_max(); ++k1) {
        for (int k2 = 0; k2 <= b.k_max(); ++k2) {
            for (std::size_t i = 0; i < np; ++i) {
                c1[i] = phi_factor(a, k1, r.periodic_nodes[i]);
                c2[i] = phi_factor(b, k2, r.periodic_nodes[i]);
            }
            const cplx i_phi = kernels::weighted_cdot(r.periodic_weights, c1, c2);
            if (std::abs(i_phi) < 1e-13) continue;

            std::vector<cplx> x1(nl), x2(nl), prod(nl);
            std::vector<double> w_alpha(nl);
            for (std::size_t i = 0; i < nl; ++i) {
                const double al = r.alpha.nodes[i];
                const double ch = std::cosh(al);
                x1[i] = xi_factor(a, k1, al);
                x2[i] = xi_factor(b, k2, al);
                w_alpha[i] = r.alpha.weights[i] * 0.5 * ch * ch;
                prod[i] = std::conj(x1[i]) * x2[i];
            }
            const cplx i_alpha = kernels::weighted_cdot(w_alpha, x1, x2);
            tail = std::max(tail, tail_share(r, w_alpha, prod, i_alpha));

            std::vector<cplx> z1(nz), z2(nz);
            std::vector<double> w_z(nz);
            for (std::size_t i = 0; i < nz; ++i) {
                const double x = r.zeta_like.nodes[i];
                const double z = alt ? std::sin(x) : x;
                z1[i] = z_factor(a, k1, z);
                z2[i] = z_factor(b, k2, z);
                w_z[i] = r.zeta_like.weights[i] * (alt ? std::cos(x) : 1.0);
            }
            const cplx i_z = kernels::weighted_cdot(w_z, z1, z2);

            std::vector<double> b1(nl), b2(nl), w_beta(nl);
            std::vector<cplx> bprod(nl);
            for (std::size_t i = 0; i < nl; ++i) {
                const double be = r.beta.nodes[i];
                b1[i] = beta_factor(a, k1, be);
                b2[i] = beta_factor(b, k2, be);
                w_beta[i] = r.beta.weights[i] * std::cosh(be);
                bprod[i] = b1[i] * b2[i];
            }
            const double i_beta = kernels::weighted_dot(w_beta, b1, b2);
            tail = std::max(tail, tail_share(r, w_beta, bprod, i_beta));

            sum += i_alpha * i_z * i_beta * i_phi;
        }
    }

    InnerProduct out;
    out.value = s1.normalization() * s2.normalization() * i_rho * i_polar * i_gamma * sum;
    out.tail_fraction = tail;
    return out;
}

cplx inner_product(const BoundState& s1, const BoundState& s2, const QuadratureOptions& opts)
{
    return inner_product_detail(s1, s2, opts).value;
}

double fix_normalization(const QuantumNumbers& qn, double a0, const QuadratureOptions& opts)
{
    require_c2_zero(qn);
    const BoundState raw = BoundState::with_normalization(qn, a0, 1.0);
    const cplx nn = inner_product(raw, raw, opts);
    if (!(nn.real() > 0.0) || !std::isfinite(nn.real()))
        throw ConvergenceError("norm integral is not positive for " + qn.label());
    return 1.0 / std::sqrt(nn.real());
}

cplx apply_L1(const BoundState& s, const RMSPoint& pt, const FrameParams& p, double h)
{
    FrameParams up = p, down = p;
    up.gamma += h;
    down.gamma -= h;
    const cplx d = (s(pt, up) - s(pt, down)) / (2.0 * h);
    return -kI * d / s(pt, p);
}

Eigen::MatrixXcd gram_matrix(const std::vector<BoundState>& states, const QuadratureOptions& opts)
{
    const auto n = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = inner_product(states[i], states[j], opts);
    return g;
}

std::vector<QuantumNumbers> low_lying_states()
{
    std::vector<QuantumNumbers> out;
    for (int twice_L : {1, 3})
        for (int twice_q : {1, -1}) out.push_back({0, 0, 0, half(twice_L), half(twice_q), 0.0});
    out.push_back({1, 0, 0, half(1), half(1), 0.0});
    out.push_back({0, 1, 0, half(1), half(1), 0.0});
    return out;
}

} // namespace covstark
