#include <doctest.h>

#include "octoport/intervals.hpp"

using namespace octoport;

TEST_CASE("interval sets merge and contain") {
    IntervalSet s(0.0, 1.0);
    s.add({2.0, 3.0});
    s.add({0.5, 2.5});  // bridges the gap
    CHECK(s.parts().size() == 1);
    CHECK(s.contains(0.0));
    CHECK(s.contains(2.9999));
    CHECK(!s.contains(3.0));  // half-open
    CHECK(!s.contains(-0.1));

    CHECK_THROWS(IntervalSet(1.0, 1.0));
}

TEST_CASE("half-lattice snapping") {
    const double step = 0.5;
    // nearest (k + 1/2) * step
    CHECK(snap_to_half_lattice(0.5, step) == doctest::Approx(0.75));
    CHECK(snap_to_half_lattice(0.2, step) == doctest::Approx(0.25));
    CHECK(snap_to_half_lattice(-0.2, step) == doctest::Approx(-0.25));

    Interval snapped = lattice_avoiding_interval({-0.5, 0.5}, step);
    IntervalSet set(snapped);
    CHECK(!endpoint_on_lattice(set, step));
    // original endpoints sat exactly on atoms
    CHECK(endpoint_on_lattice(IntervalSet(-0.5, 0.5), step));
}

TEST_CASE("rectangles") {
    Rectangle z{-1.0, 1.0, 0.0, 2.0};
    CHECK(z.contains(-1.0, 0.0));
    CHECK(!z.contains(1.0, 0.0));
    CHECK(z.area() == doctest::Approx(4.0));
    CHECK(Rectangle::whole().contains(1e9, -1e9));
}
