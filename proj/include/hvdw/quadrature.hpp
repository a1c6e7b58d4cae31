#pragma once

#include <functional>
#include <vector>

namespace hvdw {

// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int order);

struct QuadDiagnostics {
    int panels = 0;
    long evaluations = 0;
    double error_estimate = 0.0;
};

struct QuadResult {
    double value = 0.0;
    QuadDiagnostics diag;
};

// Adaptive panel-bisection quadrature on [a, b]. Each panel is evaluated
// with two nested Gauss-Legendre orders; panels whose disagreement exceeds
// the budget are split until the total estimate meets rel_tol.
QuadResult adaptive_integrate(const std::function<double(double)>& f,
                              double a, double b,
                              double rel_tol = 1e-10,
                              int max_depth = 48,
                              double abs_floor = 0.0);

// Semi-infinite integral of f over u in (0, inf) through the rational map
// u = s*t/(1-t). The scale s should match the integrand's decay scale.
QuadResult integrate_semi_infinite_rational(const std::function<double(double)>& f,
                                            double scale,
                                            double rel_tol = 1e-10,
                                            int max_depth = 48);

// Same integral through u = s*tan(theta); resolves a Lorentzian of width s
// riding on much broader structure.
QuadResult integrate_semi_infinite_tan(const std::function<double(double)>& f,
                                       double scale,
                                       double rel_tol = 1e-10,
                                       int max_depth = 48);

// Fixed composite Gauss-Legendre rule on [a, b] with uniform panels.
double integrate_panels(const std::function<double(double)>& f,
                        double a, double b, int panels, int order);

} // namespace hvdw
