#ifndef OCTOPORT_CONVERGENCE_HPP
#define OCTOPORT_CONVERGENCE_HPP

#include <string>
#include <vector>

#include "octoport/common.hpp"
#include "octoport/eightport.hpp"
#include "octoport/intervals.hpp"

namespace octoport::convergence {

// Increasing reference amplitudes r_1 < ... < r_m, each simulated with the
// cutoff rule for sqrt2 r.
struct AmplitudeSchedule {
    std::vector<double> radii;
    double phi = kPi / 2.0;

    void validate() const;
};

// Disjoint half-open tiling of [-window, window)^2 with all edges at
// half-lattice offsets, so neither the limit measure nor the finite-amplitude
// measures put mass on any boundary.
std::vector<Rectangle> boundary_null_rectangles(double lattice_step,
                                                double window, int nx, int ny);

// Rectangles whose edges avoid every lattice {k/r} of the schedule at once.
std::vector<Rectangle> schedule_rectangles(const std::vector<double>& radii,
                                           double window, int nx, int ny);

// distance of the closest rectangle edge to any atom {k/r}
double boundary_hygiene_margin(const std::vector<Rectangle>& rects,
                               const std::vector<double>& radii);

struct RadiusRow {
    double radius = 0.0;
    bool skipped = false;
    std::string diagnostic;
    std::vector<double> finite_probs;
    std::vector<double> gaps;
    double sup_gap = 0.0;
};

struct ConvergenceReport {
    std::vector<Rectangle> rectangles;
    std::vector<double> limit_probs;
    std::vector<RadiusRow> rows;
    bool sup_gap_non_increasing = false;
    double final_sup_gap = 0.0;
};

struct SweepOptions {
    bool large_memory = false;
    double max_radius_default = 3.5;
    long max_state_bytes = 8L << 30;
    eightport::GStatistics::Path path = eightport::GStatistics::Path::direct;
};

// Finite-amplitude G statistics against Tr[T E^{CSC^-1}(Z)] per rectangle.
ConvergenceReport convergence_sweep(const eightport::StateSpec& t_state,
                                    const eightport::StateSpec& s_state,
                                    const AmplitudeSchedule& schedule,
                                    const std::vector<Rectangle>& rectangles,
                                    const SweepOptions& options = {});

struct WeakConvergenceResult {
    bool converged;
    std::vector<double> sup_gaps;
};

// True iff every rectangle's final gap is below the threshold and the
// sup-gap did not increase over the last two elements.
WeakConvergenceResult weak_convergence_check(
    const std::vector<std::vector<double>>& tables,
    const std::vector<double>& limit, double threshold = 0.05);

}  // namespace octoport::convergence

#endif
