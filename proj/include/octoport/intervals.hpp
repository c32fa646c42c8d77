#ifndef OCTOPORT_INTERVALS_HPP
#define OCTOPORT_INTERVALS_HPP

#include <limits>
#include <vector>

namespace octoport {

// Half-open interval [lo, hi). Infinite endpoints are allowed.
struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return x >= lo && x < hi; }
    double length() const { return hi - lo; }

    static Interval whole() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
};

// Finite union of half-open intervals, kept sorted and disjoint.
class IntervalSet {
  public:
    IntervalSet() = default;
    IntervalSet(double lo, double hi) { add({lo, hi}); }
    IntervalSet(Interval iv) { add(iv); }

    void add(Interval iv);
    bool contains(double x) const;
    bool empty() const { return parts_.empty(); }
    const std::vector<Interval>& parts() const { return parts_; }

    static IntervalSet whole() { return IntervalSet(Interval::whole()); }

  private:
    std::vector<Interval> parts_;
};

// Axis-aligned half-open rectangle [qlo,qhi) x [plo,phi).
struct Rectangle {
    double qlo, qhi, plo, phi;

    bool contains(double q, double p) const {
        return q >= qlo && q < qhi && p >= plo && p < phi;
    }
    double area() const { return (qhi - qlo) * (phi - plo); }

    static Rectangle whole() {
        double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf, -inf, inf};
    }
};

// Snaps x to the nearest half-lattice point (k + 1/2) * step, so that the
// resulting endpoint stays at maximal distance from the outcome atoms
// {k * step}. Used to turn a requested interval into a boundary-null one.
double snap_to_half_lattice(double x, double step);

Interval lattice_avoiding_interval(Interval iv, double step);
Rectangle lattice_avoiding_rectangle(const Rectangle& z, double step);

// True if some endpoint of the set lies within tol of an atom k * step.
bool endpoint_on_lattice(const IntervalSet& set, double step, double tol = 1e-9);

}  // namespace octoport

#endif
