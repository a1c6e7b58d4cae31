#include "hvdw/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "hvdw/errors.hpp"

namespace hvdw {

namespace {

GaussLegendreRule compute_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

} // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

namespace {

double panel_value(const std::function<double(double)>& f, double a, double b,
                   const GaussLegendreRule& rule, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    evals += static_cast<long>(rule.nodes.size());
    return half * sum;
}

struct Panel {
    double a, b, value, error;
    int depth;
};

} // namespace

QuadResult adaptive_integrate(const std::function<double(double)>& f,
                              double a, double b, double rel_tol,
                              int max_depth, double abs_floor) {
    const GaussLegendreRule& lo = gauss_legendre(15);
    const GaussLegendreRule& hi = gauss_legendre(31);
    QuadResult res;

    auto make_panel = [&](double pa, double pb, int depth) {
        Panel p;
        p.a = pa;
        p.b = pb;
        p.depth = depth;
        double vlo = panel_value(f, pa, pb, lo, res.diag.evaluations);
        p.value = panel_value(f, pa, pb, hi, res.diag.evaluations);
        p.error = std::fabs(p.value - vlo);
        return p;
    };

    std::vector<Panel> stack;
    std::vector<Panel> done;
    const int initial = 8;
    for (int i = 0; i < initial; ++i) {
        double pa = a + (b - a) * i / initial;
        double pb = a + (b - a) * (i + 1) / initial;
        stack.push_back(make_panel(pa, pb, 0));
    }

    double rough = 0.0;
    for (const Panel& p : stack) rough += std::fabs(p.value);
    double budget = std::max(rel_tol * std::max(rough, 1e-300), abs_floor);

    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double local = budget * (p.b - p.a) / (b - a);
        if (p.error <= local || p.depth >= max_depth) {
            if (p.depth >= max_depth && p.error > 1e3 * local) {
                std::ostringstream msg;
                msg << "quadrature stalled on [" << p.a << ", " << p.b
                    << "] at depth " << p.depth << ", panel error " << p.error
                    << ", budget " << local << ", evaluations "
                    << res.diag.evaluations;
                throw ConvergenceError(msg.str());
            }
            done.push_back(p);
            continue;
        }
        double mid = 0.5 * (p.a + p.b);
        stack.push_back(make_panel(p.a, mid, p.depth + 1));
        stack.push_back(make_panel(mid, p.b, p.depth + 1));
    }

    for (const Panel& p : done) {
        res.value += p.value;
        res.diag.error_estimate += p.error;
    }
    res.diag.panels = static_cast<int>(done.size());
    return res;
}

QuadResult integrate_semi_infinite_rational(const std::function<double(double)>& f,
                                            double scale, double rel_tol,
                                            int max_depth) {
    auto g = [&](double t) {
        double om = 1.0 - t;
        double u = scale * t / om;
        return f(u) * scale / (om * om);
    };
    return adaptive_integrate(g, 0.0, 1.0, rel_tol, max_depth);
}

QuadResult integrate_semi_infinite_tan(const std::function<double(double)>& f,
                                       double scale, double rel_tol,
                                       int max_depth) {
    auto g = [&](double th) {
        double c = std::cos(th);
        double u = scale * std::tan(th);
        return f(u) * scale / (c * c);
    };
    return adaptive_integrate(g, 0.0, 0.5 * M_PI, rel_tol, max_depth);
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int order) {
    const GaussLegendreRule& rule = gauss_legendre(order);
    double total = 0.0;
    long evals = 0;
    for (int i = 0; i < panels; ++i) {
        double pa = a + (b - a) * i / panels;
        double pb = a + (b - a) * (i + 1) / panels;
        total += panel_value(f, pa, pb, rule, evals);
    }
    return total;
}

} // namespace hvdw
