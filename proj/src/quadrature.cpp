#include "lattice/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace lattice {

namespace {

GaussRule compute_rule(int n) {
    // Newton on Legendre P_n from the Chebyshev-like initial guess.
    GaussRule rule;
    rule.node.resize(n);
    rule.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.node[n - 1 - i] = x;
        rule.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int points) {
    static std::mutex mtx;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(points);
    if (it == cache.end()) it = cache.emplace(points, compute_rule(points)).first;
    return it->second;
}

long oscillatory_panel_count(double a, double b, double phase_rate, int min_panels) {
    const double span = b - a;
    double needed = std::ceil(std::abs(phase_rate) * span / (M_PI / 4.0));
    if (!std::isfinite(needed)) throw QuadratureNonConvergence("non-finite phase rate");
    return std::max<long>(min_panels, static_cast<long>(needed));
}

double oscillatory_integrate(const std::function<double(double)>& f, double a,
                             double b, double phase_rate, int min_panels,
                             long panel_cap, int points) {
    const long panels = oscillatory_panel_count(a, b, phase_rate, min_panels);
    if (panels > panel_cap)
        throw QuadratureNonConvergence("oscillation-resolved panel count exceeds cap");
    const GaussRule& rule = gauss_rule(points);
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (long p = 0; p < panels; ++p) {
        const double left = a + h * static_cast<double>(p);
        const double mid = left + 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < points; ++i)
            acc += rule.weight[i] * f(mid + 0.5 * h * rule.node[i]);
        total += acc * 0.5 * h;
    }
    return total;
}

}  // namespace lattice
