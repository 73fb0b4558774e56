#pragma once

#include <functional>
#include <vector>

namespace covstark {

struct QuadratureDomain {
    enum class Kind {
        Interval,       // [a, b], Gauss-Legendre
        HalfLine,       // [0, inf), Gauss-Laguerre with length scale `scale`
        MappedHalfLine, // [0, inf), Gauss-Legendre in t with rho = scale * t / (1 - t)
        Line,           // [-cutoff, cutoff], composite Gauss-Legendre with `panels` panels
    };

    Kind kind = Kind::Interval;
    double a = -1.0;
    double b = 1.0;
    double scale = 1.0;
    double cutoff = 12.0;
    int panels = 24;

    static QuadratureDomain interval(double a, double b) { return {Kind::Interval, a, b, 1.0, 0.0, 1}; }
    static QuadratureDomain half_line(double scale) { return {Kind::HalfLine, 0.0, 0.0, scale, 0.0, 1}; }
    static QuadratureDomain mapped_half_line(double scale) { return {Kind::MappedHalfLine, 0.0, 0.0, scale, 0.0, 1}; }
    static QuadratureDomain line(double cutoff, int panels) { return {Kind::Line, 0.0, 0.0, 1.0, cutoff, panels}; }
};

/// Nodes and weights such that sum_i w_i f(x_i) approximates the plain
/// integral of f over the domain (no weight function is left implicit).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    QuadratureDomain domain;

    std::size_t size() const { return nodes.size(); }
};

/// For Kind::Line, `order` is the number of points per panel; for every
/// other kind it is the total number of points. Throws DomainError for
/// order < 1.
QuadratureRule build_quadrature(const QuadratureDomain& domain, int order);

/// Gauss-Legendre nodes/weights on [-1, 1].
QuadratureRule gauss_legendre(int order);

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

struct LineIntegral {
    double value = 0.0;
    double tail = 0.0; // estimated contribution beyond the cutoff (one panel width per side)
    double cutoff = 0.0;
};

/// Integrates f over [-cutoff, cutoff] and estimates the tail from the
/// next panel width on both sides.
LineIntegral integrate_line(const std::function<double(double)>& f, double cutoff, int panels, int order);

/// Doubles the cutoff from `start_cutoff` until |tail| <= tol * |value|.
/// Throws ConvergenceError when `max_cutoff` is reached first.
LineIntegral integrate_line_converged(const std::function<double(double)>& f, double tol, double start_cutoff = 8.0,
                                      double max_cutoff = 64.0, double panel_width = 1.0, int order = 8);

} // namespace covstark
