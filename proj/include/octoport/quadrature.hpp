#ifndef OCTOPORT_QUADRATURE_HPP
#define OCTOPORT_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "octoport/intervals.hpp"

namespace octoport {

// Gauss-Legendre nodes/weights on [-1, 1]. Cached per order.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b]: ncells panels of fixed order.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int ncells, int order);

// Doubles the panel count until two successive values agree to rel_tol.
// Throws ToleranceError if max_doublings is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol, int initial_cells = 4,
                          int order = 12, int max_doublings = 12);

// Tensor Gauss-Legendre over a rectangle split into square-ish cells of side
// at most max_cell; cells are halved until successive values agree to rel_tol.
double integrate_rectangle(const std::function<double(double, double)>& f,
                           const Rectangle& z, double rel_tol = 1e-6,
                           double max_cell = 0.25, int order = 8,
                           int max_halvings = 5);

}  // namespace octoport

#endif
