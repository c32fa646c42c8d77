#ifndef OCTOPORT_HOMODYNE_HPP
#define OCTOPORT_HOMODYNE_HPP

#include <vector>

#include "octoport/common.hpp"
#include "octoport/fock.hpp"
#include "octoport/intervals.hpp"
#include "octoport/multimode.hpp"

namespace octoport::homodyne {

enum class Realization { eigen_decomposition, counting_after_u };

// Probability table over an integer-indexed outcome lattice {k * step}.
struct DiscreteOutcomeDistribution {
    double lattice_step;
    int k_min;
    RealVector weights;

    double value(int i) const { return (k_min + i) * lattice_step; }
    double total_mass() const { return weights.sum(); }
    double mass_in(const IntervalSet& set) const;
};

struct ProbabilityResult {
    double probability;
    double leak;             // aux preparation truncation deficit
    bool boundary_warning;   // an endpoint collided with an outcome atom
};

// Single balanced-homodyne observable: signal mode plus an auxiliary mode
// prepared in |z>, measuring the scaled number difference. Outcome atoms sit
// on {k / (sqrt2 |z|)}.
//
// counting_after_u realizes the observable through the splitter and the
// diagonal count difference (exact at truncation); eigen_decomposition bins
// the eigenvalues of the compressed difference quadrature and is kept as a
// cross-check of the same operator.
class HomodyneObservable {
  public:
    HomodyneObservable(Complex z, int signal_dim, int aux_dim,
                       Realization realization = Realization::counting_after_u);

    Complex z() const { return z_; }
    double lattice_step() const;
    int signal_dim() const { return signal_dim_; }
    Realization realization() const { return realization_; }
    double aux_deficit() const { return aux_deficit_; }

    // E^z(X) as a positive operator on the signal space
    Matrix interval_operator(const IntervalSet& set) const;
    ProbabilityResult probability(const fock::DensityOperator& T,
                                  const IntervalSet& set) const;

    // counting realization only: one operator per outcome atom k
    struct LatticeFamily {
        int k_min;
        double step;
        std::vector<Matrix> ops;
    };
    const LatticeFamily& lattice_family() const;

  private:
    Complex z_;
    int signal_dim_, aux_dim_;
    Realization realization_;
    double aux_deficit_ = 0.0;
    LatticeFamily family_;                // counting realization
    RealVector eigenvalues_;              // eigen realization, already scaled
    std::vector<Matrix> eigen_ops_;       // rank-1 compressed projections
    bool boundary_hit(const IntervalSet& set) const;
};

// Exact distribution of (n_second - n_first) / scale for a two-mode state.
DiscreteOutcomeDistribution scaled_difference_distribution(
    const multimode::MultimodeState& state, double scale);

// Tr[T P^{Q_theta}(X)] through the Hermite coordinate representation.
double quadrature_probability(const fock::DensityOperator& T, double theta,
                              const IntervalSet& set, double rel_tol = 1e-8);

}  // namespace octoport::homodyne

#endif
