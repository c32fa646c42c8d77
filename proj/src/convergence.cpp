#include "octoport/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "octoport/phasespace.hpp"

namespace octoport::convergence {

void AmplitudeSchedule::validate() const {
    if (radii.empty()) throw ConfigError("schedule needs at least one radius");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0)) throw ConfigError("radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw ConfigError("radii must be strictly increasing");
    }
}

std::vector<Rectangle> boundary_null_rectangles(double lattice_step,
                                                double window, int nx,
                                                int ny) {
    return eightport::default_rectangles(window, nx, ny, lattice_step);
}

double boundary_hygiene_margin(const std::vector<Rectangle>& rects,
                               const std::vector<double>& radii) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& z : rects)
        for (double e : {z.qlo, z.qhi, z.plo, z.phi})
            for (double r : radii) {
                double k = std::round(e * r);
                margin = std::min(margin, std::abs(e - k / r));
            }
    return margin;
}

std::vector<Rectangle> schedule_rectangles(const std::vector<double>& radii,
                                           double window, int nx, int ny) {
    if (radii.empty()) throw ConfigError("schedule_rectangles needs radii");
    // integer radii: every lattice {k/r} refines {k/L} with L = lcm
    bool integral = true;
    for (double r : radii)
        if (std::abs(r - std::round(r)) > 1e-12) integral = false;
    if (integral) {
        long lcm = 1;
        for (double r : radii) lcm = std::lcm(lcm, (long)std::llround(r));
        auto rects =
            boundary_null_rectangles(1.0 / (double)lcm, window, nx, ny);
        if (boundary_hygiene_margin(rects, radii) <= 1e-9)
            throw ConfigError("rectangle edges collide with an outcome lattice");
        return rects;
    }
    // otherwise search deterministic offsets for a safe shift of the tiling
    const double cell = 2.0 * window / nx;
    const double golden = 0.6180339887498949;
    for (int j = 1; j <= 64; ++j) {
        double shift = cell * std::fmod(j * golden, 0.5);
        std::vector<Rectangle> rects;
        for (int i = 0; i < nx; ++i)
            for (int k = 0; k < ny; ++k)
                rects.push_back({-window + i * cell + shift,
                                 -window + (i + 1) * cell + shift,
                                 -window + k * (2.0 * window / ny) + shift,
                                 -window + (k + 1) * (2.0 * window / ny) +
                                     shift});
        double need = 0.0;
        for (double r : radii) need = std::max(need, 1.0 / r);
        if (boundary_hygiene_margin(rects, radii) > need / 16.0) return rects;
    }
    throw ConfigError("no lattice-avoiding shift found for the schedule");
}

ConvergenceReport convergence_sweep(const eightport::StateSpec& t_state,
                                    const eightport::StateSpec& s_state,
                                    const AmplitudeSchedule& schedule,
                                    const std::vector<Rectangle>& rectangles,
                                    const SweepOptions& options) {
    schedule.validate();
    if (rectangles.empty()) throw ConfigError("rectangle family is empty");

    ConvergenceReport report;
    report.rectangles = rectangles;

    // limit side: E^{CSC^-1} with the conjugated generator
    const int limit_dim = std::max(
        {t_state.required_dim(), s_state.required_dim(), 20});
    fock::DensityOperator t_rho = eightport::make_density(t_state, limit_dim);
    fock::DensityOperator s_rho = eightport::make_density(s_state, limit_dim);
    phasespace::PhaseSpaceMeasure limit(
        phasespace::conjugate_state(s_rho));
    for (const auto& z : rectangles)
        report.limit_probs.push_back(limit.rectangle_probability(t_rho, z));

    for (double r : schedule.radii) {
        RadiusRow row;
        row.radius = r;
        if (!options.large_memory && r > options.max_radius_default) {
            row.skipped = true;
            row.diagnostic = "radius needs the large-memory option";
            report.rows.push_back(std::move(row));
            continue;
        }
        eightport::DetectorConfig cfg;
        cfg.t_state = t_state;
        cfg.s_state = s_state;
        cfg.z = Complex(r, 0.0);
        cfg.phi = schedule.phi;
        cfg.rectangles = rectangles;
        eightport::resolve_defaults(cfg);
        long bytes = 16L * cfg.dim1 * cfg.dim2 * cfg.dim3 * cfg.dim4;
        if (bytes > options.max_state_bytes) {
            row.skipped = true;
            row.diagnostic = "state vector exceeds the memory budget";
            report.rows.push_back(std::move(row));
            continue;
        }
        eightport::GStatistics g =
            options.path == eightport::GStatistics::Path::direct
                ? eightport::run_direct(cfg)
                : eightport::run_factorized(cfg);
        row.finite_probs = g.rectangle_probs;
        for (size_t i = 0; i < rectangles.size(); ++i) {
            row.gaps.push_back(
                std::abs(row.finite_probs[i] - report.limit_probs[i]));
            row.sup_gap = std::max(row.sup_gap, row.gaps.back());
        }
        report.rows.push_back(std::move(row));
    }

    report.sup_gap_non_increasing = true;
    double prev = -1.0;
    for (const auto& row : report.rows) {
        if (row.skipped) continue;
        if (prev >= 0.0 && row.sup_gap > prev)
            report.sup_gap_non_increasing = false;
        prev = row.sup_gap;
        report.final_sup_gap = row.sup_gap;
    }
    return report;
}

WeakConvergenceResult weak_convergence_check(
    const std::vector<std::vector<double>>& tables,
    const std::vector<double>& limit, double threshold) {
    if (tables.empty()) throw ConfigError("need at least one table");
    for (const auto& t : tables)
        if (t.size() != limit.size())
            throw ConfigError("tables and limit cover different families");

    WeakConvergenceResult res;
    for (const auto& t : tables) {
        double sup = 0.0;
        for (size_t i = 0; i < limit.size(); ++i)
            sup = std::max(sup, std::abs(t[i] - limit[i]));
        res.sup_gaps.push_back(sup);
    }
    bool final_ok = true;
    const auto& last = tables.back();
    for (size_t i = 0; i < limit.size(); ++i)
        if (std::abs(last[i] - limit[i]) > threshold) final_ok = false;
    bool non_increasing =
        res.sup_gaps.size() < 2 ||
        res.sup_gaps.back() <= res.sup_gaps[res.sup_gaps.size() - 2];
    res.converged = final_ok && non_increasing;
    return res;
}

}  // namespace octoport::convergence
