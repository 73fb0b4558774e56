#include "covstark/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "covstark/errors.hpp"
#include "covstark/kernels.hpp"

namespace covstark {

namespace {

struct NodesWeights {
    std::vector<double> x;
    std::vector<double> w;
};

NodesWeights legendre_nodes(int n)
{
    NodesWeights out{std::vector<double>(n), std::vector<double>(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        out.x[i] = -z;
        out.x[n - 1 - i] = z;
        out.w[i] = out.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return out;
}

// Gauss-Laguerre (weight e^{-x}) nodes; returned weights already include e^{x}.
NodesWeights laguerre_nodes(int n)
{
    NodesWeights out{std::vector<double>(n), std::vector<double>(n)};
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - out.x[i - 2]);
        }
        double pp = 0.0, p2 = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = 1.0;
            p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (p1 - p2) / z;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::abs(z)) break;
        }
        out.x[i] = z;
        // w_i = -1/(pp * n * L_{n-1}); times e^{x_i} so that f is integrated directly.
        out.w[i] = std::exp(z - std::log(std::abs(pp * n * p2)));
    }
    return out;
}

} // namespace

QuadratureRule gauss_legendre(int order) { return build_quadrature(QuadratureDomain::interval(-1.0, 1.0), order); }

QuadratureRule build_quadrature(const QuadratureDomain& domain, int order)
{
    if (order < 1) throw DomainError("quadrature order must be >= 1, got " + std::to_string(order));

    QuadratureRule rule;
    rule.domain = domain;
    switch (domain.kind) {
    case QuadratureDomain::Kind::Interval: {
        const auto nw = legendre_nodes(order);
        const double c = 0.5 * (domain.a + domain.b), h = 0.5 * (domain.b - domain.a);
        for (int i = 0; i < order; ++i) {
            rule.nodes.push_back(c + h * nw.x[i]);
            rule.weights.push_back(h * nw.w[i]);
        }
        break;
    }
    case QuadratureDomain::Kind::HalfLine: {
        if (!(domain.scale > 0.0)) throw DomainError("half-line scale must be positive");
        const auto nw = laguerre_nodes(order);
        for (int i = 0; i < order; ++i) {
            rule.nodes.push_back(domain.scale * nw.x[i]);
            rule.weights.push_back(domain.scale * nw.w[i]);
        }
        break;
    }
    case QuadratureDomain::Kind::MappedHalfLine: {
        if (!(domain.scale > 0.0)) throw DomainError("half-line scale must be positive");
        const auto nw = legendre_nodes(order);
        for (int i = 0; i < order; ++i) {
            const double t = 0.5 * (nw.x[i] + 1.0);
            rule.nodes.push_back(domain.scale * t / (1.0 - t));
            rule.weights.push_back(0.5 * nw.w[i] * domain.scale / ((1.0 - t) * (1.0 - t)));
        }
        break;
    }
    case QuadratureDomain::Kind::Line: {
        if (domain.panels < 1 || !(domain.cutoff > 0.0)) throw DomainError("line rule needs cutoff > 0 and panels >= 1");
        const auto nw = legendre_nodes(order);
        const double width = 2.0 * domain.cutoff / domain.panels;
        for (int p = 0; p < domain.panels; ++p) {
            const double c = -domain.cutoff + (p + 0.5) * width;
            for (int i = 0; i < order; ++i) {
                rule.nodes.push_back(c + 0.5 * width * nw.x[i]);
                rule.weights.push_back(0.5 * width * nw.w[i]);
            }
        }
        break;
    }
    }
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f)
{
    std::vector<double> values(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.nodes[i]);
    return kernels::weighted_sum(rule.weights, values);
}

LineIntegral integrate_line(const std::function<double(double)>& f, double cutoff, int panels, int order)
{
    const QuadratureRule body = build_quadrature(QuadratureDomain::line(cutoff, panels), order);
    const double width = 2.0 * cutoff / panels;
    const QuadratureRule right = build_quadrature(QuadratureDomain::interval(cutoff, cutoff + width), order);
    const QuadratureRule left = build_quadrature(QuadratureDomain::interval(-cutoff - width, -cutoff), order);

    LineIntegral out;
    out.value = integrate(body, f);
    out.tail = integrate(right, f) + integrate(left, f);
    out.cutoff = cutoff;
    return out;
}

LineIntegral integrate_line_converged(const std::function<double(double)>& f, double tol, double start_cutoff,
                                      double max_cutoff, double panel_width, int order)
{
    for (double cutoff = start_cutoff; cutoff <= max_cutoff * (1.0 + 1e-12); cutoff *= 2.0) {
        const int panels = std::max(1, static_cast<int>(std::lround(2.0 * cutoff / panel_width)));
        const LineIntegral li = integrate_line(f, cutoff, panels, order);
        if (!std::isfinite(li.value)) throw ConvergenceError("non-finite line integral");
        if (std::abs(li.tail) <= tol * std::abs(li.value)) return li;
    }
    throw ConvergenceError("line-integral tail exceeds tolerance at maximum cutoff " + std::to_string(max_cutoff));
}

} // namespace covstark
