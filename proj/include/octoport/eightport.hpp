#ifndef OCTOPORT_EIGHTPORT_HPP
#define OCTOPORT_EIGHTPORT_HPP

#include <string>
#include <vector>

#include "octoport/common.hpp"
#include "octoport/fock.hpp"
#include "octoport/homodyne.hpp"
#include "octoport/intervals.hpp"

namespace octoport::eightport {

// Input state for a single mode: a named family or an explicit matrix.
struct StateSpec {
    enum class Kind { vacuum, fock, coherent, thermal, explicit_matrix };
    Kind kind = Kind::vacuum;
    int fock_n = 0;
    Complex alpha{0.0, 0.0};
    double nbar = 0.0;
    Matrix matrix;

    static StateSpec make_vacuum();
    static StateSpec make_fock(int n);
    static StateSpec make_coherent(Complex alpha);
    static StateSpec make_thermal(double nbar);
    static StateSpec make_explicit(Matrix m);

    bool is_pure_named() const {
        return kind == Kind::vacuum || kind == Kind::fock ||
               kind == Kind::coherent;
    }
    // levels needed to represent the state faithfully
    int required_dim() const;
};

struct SpectralBranch {
    double weight;
    Vector vec;
};

struct BranchDecomposition {
    std::vector<SpectralBranch> branches;
    double discarded_weight = 0.0;   // weight dropped by the branch cap
    double truncation_deficit = 0.0; // mass lost by the cutoff itself
};

fock::DensityOperator make_density(const StateSpec& spec, int dim);
BranchDecomposition decompose(const StateSpec& spec, int dim,
                              int max_branches = 32,
                              double weight_floor = 1e-14);

struct DetectorConfig {
    StateSpec t_state;
    StateSpec s_state;
    Complex z{2.0, 0.0};
    double phi = kPi / 2.0;
    // 0 means: fill from the cutoff rule (modes 3,4 carry sqrt2 z; modes 1,2
    // take max(signal need, 20))
    int dim1 = 0, dim2 = 0, dim3 = 0, dim4 = 0;
    std::vector<Rectangle> rectangles;  // empty -> default 8x8 over [-4,4)^2
    int max_branches = 32;
    double deficit_budget = 1e-4;
};

void resolve_defaults(DetectorConfig& config);

// Default boundary-null partition: nx x ny tiling of [-w, w)^2 with every
// edge snapped to the half-lattice offsets of the outcome lattice {k/|z|}.
std::vector<Rectangle> default_rectangles(double window, int nx, int ny,
                                          double lattice_step);

struct GStatistics {
    enum class Path { direct, factorized };
    Path path;
    double lattice_step;  // outcome atoms at (k, l) * lattice_step = 1/|z|
    int k_min, l_min;
    RealMatrix joint;     // joint(k - k_min, l - l_min)
    std::vector<Rectangle> rectangles;
    std::vector<double> rectangle_probs;
    double total_mass = 0.0;
    double truncation_deficit = 0.0;
    double discarded_branch_weight = 0.0;

    double mass_in(const Rectangle& z) const;
    double marginal_mean_q() const;
    double marginal_mean_p() const;
};

// Four-mode pure-state simulation of the full network; mixed inputs are
// convex combinations over spectral branch pairs.
GStatistics run_direct(const DetectorConfig& config);

// Splitter-then-contract route: B12 (T (x) S) B12^dag against the two
// single-homodyne lattice families.
GStatistics run_factorized(const DetectorConfig& config);

double g_rectangle(const DetectorConfig& config, const Rectangle& z,
                   GStatistics::Path path = GStatistics::Path::direct);

}  // namespace octoport::eightport

#endif
