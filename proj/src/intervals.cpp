#include "octoport/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octoport {

void IntervalSet::add(Interval iv) {
    if (!(iv.lo < iv.hi))
        throw std::invalid_argument("interval must satisfy lo < hi");
    parts_.push_back(iv);
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // merge touching/overlapping parts
    std::vector<Interval> merged;
    for (const auto& p : parts_) {
        if (!merged.empty() && p.lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, p.hi);
        else
            merged.push_back(p);
    }
    parts_ = std::move(merged);
}

bool IntervalSet::contains(double x) const {
    for (const auto& p : parts_)
        if (p.contains(x)) return true;
    return false;
}

double snap_to_half_lattice(double x, double step) {
    if (!(step > 0)) throw std::invalid_argument("lattice step must be positive");
    if (!std::isfinite(x)) return x;
    double k = std::round(x / step - 0.5);
    return (k + 0.5) * step;
}

Interval lattice_avoiding_interval(Interval iv, double step) {
    return {snap_to_half_lattice(iv.lo, step), snap_to_half_lattice(iv.hi, step)};
}

Rectangle lattice_avoiding_rectangle(const Rectangle& z, double step) {
    return {snap_to_half_lattice(z.qlo, step), snap_to_half_lattice(z.qhi, step),
            snap_to_half_lattice(z.plo, step), snap_to_half_lattice(z.phi, step)};
}

bool endpoint_on_lattice(const IntervalSet& set, double step, double tol) {
    for (const auto& p : set.parts()) {
        for (double e : {p.lo, p.hi}) {
            if (!std::isfinite(e)) continue;
            double k = std::round(e / step);
            if (std::abs(e - k * step) < tol) return true;
        }
    }
    return false;
}

}  // namespace octoport
