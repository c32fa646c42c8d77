#ifndef OCTOPORT_PHASESPACE_HPP
#define OCTOPORT_PHASESPACE_HPP

#include <vector>

#include "octoport/common.hpp"
#include "octoport/fock.hpp"
#include "octoport/intervals.hpp"

namespace octoport::phasespace {

// Antiunitary conjugation in the Fock (Hermite) basis: entrywise conjugate.
fock::DensityOperator conjugate_state(const fock::DensityOperator& s);

// Covariant phase-space observable generated by a trace-one positive S:
// densities (1/2pi) Tr[T W(q,p) S W(q,p)^dag] with W(q,p) = D((q+ip)/sqrt2),
// integrated by per-cell tensor Gauss-Legendre quadrature.
class PhaseSpaceMeasure {
  public:
    explicit PhaseSpaceMeasure(fock::DensityOperator generator,
                               double rel_tol = 1e-6, double max_cell = 0.25,
                               int gl_order = 8);

    const fock::DensityOperator& generator() const { return generator_; }

    double density(const fock::DensityOperator& T, double q, double p) const;
    double rectangle_probability(const fock::DensityOperator& T,
                                 const Rectangle& z) const;

    // |q|,|p| <= bound keeps the evaluation inside the region where the
    // truncated states are faithful; 4 + spread(T) + spread(S).
    double window_bound(const fock::DensityOperator& T) const;
    bool in_safe_window(const fock::DensityOperator& T, double q,
                        double p) const;

  private:
    fock::DensityOperator generator_;
    double rel_tol_, max_cell_;
    int gl_order_;
    std::vector<double> weights_;
    std::vector<Vector> branches_;
};

// Tr[B12 (T (x) S) B12^dag  P^Q(X/sqrt2) (x) P^{P_2}(Y/sqrt2)]: position on
// mode 1, momentum on mode 2 through the diagonal (-i)^n change of basis.
double lemma2_rhs(const fock::DensityOperator& T,
                  const fock::DensityOperator& S, const IntervalSet& x,
                  const IntervalSet& y, double rel_tol = 1e-6);

// 4 * max quadrature standard deviation of the state.
double quadrature_spread(const fock::DensityOperator& rho);

}  // namespace octoport::phasespace

#endif
