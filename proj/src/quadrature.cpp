#include "octoport/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "octoport/common.hpp"

namespace octoport {

namespace {

// Newton iteration on Legendre polynomials; nodes symmetric about 0.
GaussRule compute_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[order - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw ConfigError("Gauss-Legendre order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int ncells, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const double h = (b - a) / ncells;
    double total = 0.0;
    for (int c = 0; c < ncells; ++c) {
        const double mid = a + (c + 0.5) * h;
        double cell = 0.0;
        for (int k = 0; k < order; ++k)
            cell += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
        total += 0.5 * h * cell;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int initial_cells,
                          int order, int max_doublings) {
    if (!(a < b)) return 0.0;
    int n = initial_cells;
    double prev = integrate_panels(f, a, b, n, order);
    for (int i = 0; i < max_doublings; ++i) {
        n *= 2;
        double cur = integrate_panels(f, a, b, n, order);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-12))
            return cur;
        prev = cur;
    }
    throw ToleranceError("1d quadrature did not reach relative tolerance");
}

namespace {

double tensor_pass(const std::function<double(double, double)>& f,
                   const Rectangle& z, double cell, int order) {
    const GaussRule& rule = gauss_legendre(order);
    const int nq = std::max(1, (int)std::ceil((z.qhi - z.qlo) / cell));
    const int np = std::max(1, (int)std::ceil((z.phi - z.plo) / cell));
    const double hq = (z.qhi - z.qlo) / nq;
    const double hp = (z.phi - z.plo) / np;
    double total = 0.0;
    for (int cq = 0; cq < nq; ++cq) {
        const double qm = z.qlo + (cq + 0.5) * hq;
        for (int cp = 0; cp < np; ++cp) {
            const double pm = z.plo + (cp + 0.5) * hp;
            double cellsum = 0.0;
            for (int i = 0; i < order; ++i) {
                const double q = qm + 0.5 * hq * rule.nodes[i];
                double row = 0.0;
                for (int j = 0; j < order; ++j)
                    row += rule.weights[j] * f(q, pm + 0.5 * hp * rule.nodes[j]);
                cellsum += rule.weights[i] * row;
            }
            total += 0.25 * hq * hp * cellsum;
        }
    }
    return total;
}

}  // namespace

double integrate_rectangle(const std::function<double(double, double)>& f,
                           const Rectangle& z, double rel_tol, double max_cell,
                           int order, int max_halvings) {
    if (!(z.qlo < z.qhi) || !(z.plo < z.phi)) return 0.0;
    double cell = max_cell;
    double prev = tensor_pass(f, z, cell, order);
    for (int i = 0; i < max_halvings; ++i) {
        cell *= 0.5;
        double cur = tensor_pass(f, z, cell, order);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-12))
            return cur;
        prev = cur;
    }
    throw ToleranceError("2d quadrature did not reach relative tolerance");
}

}  // namespace octoport
