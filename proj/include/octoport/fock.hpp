#ifndef OCTOPORT_FOCK_HPP
#define OCTOPORT_FOCK_HPP

#include "octoport/common.hpp"

namespace octoport::fock {

// Number of Fock levels retained; operators act on span{|0>,...,|dim-1>}.
struct Cutoff {
    int dim;

    explicit Cutoff(int d) : dim(d) {
        if (d < 2) throw ConfigError("cutoff dim must be >= 2");
    }
};

// Pure state on a truncated Fock space. norm_deficit records the probability
// mass lost to truncation before renormalization.
struct StateVector {
    Vector coeffs;
    double norm_deficit = 0.0;

    int dim() const { return (int)coeffs.size(); }
};

struct DensityOperator {
    Matrix matrix;
    double norm_deficit = 0.0;

    int dim() const { return (int)matrix.rows(); }
};

// Smallest dim keeping the coherent truncation deficit negligible
// (~1e-10 for |alpha| <= 4): ceil(|alpha|^2 + 6|alpha| + 10).
int coherent_cutoff_rule(double amplitude);
bool satisfies_cutoff_rule(Complex alpha, Cutoff cutoff);

// <n-1| a |n> = sqrt(n)
Matrix annihilation(Cutoff cutoff);
Matrix creation(Cutoff cutoff);
Matrix number_operator(Cutoff cutoff);

// Q = (a^dag + a)/sqrt(2), P = i(a^dag - a)/sqrt(2)
Matrix quadrature_q(Cutoff cutoff);
Matrix quadrature_p(Cutoff cutoff);

// diag(e^{i phi n})
Matrix phase_shifter(double phi, Cutoff cutoff);

StateVector vacuum_state(Cutoff cutoff);
StateVector basis_state(int n, Cutoff cutoff);

// Truncated coherent state, renormalized; the raw tail mass is recorded in
// norm_deficit. If max_deficit is given and exceeded, throws TruncationError.
StateVector coherent_state(Complex alpha, Cutoff cutoff, double max_deficit = 1.0);

// exp(alpha a^dag - conj(alpha) a) via the eigendecomposition of the
// Hermitian generator; unitary to machine precision at any cutoff.
Matrix displacement(Complex alpha, Cutoff cutoff);

// Exactly computes the first `dim` components of the infinite-dimensional
// D(alpha)|v> using the normally ordered triangular factorization; only the
// deficit of the discarded tail (levels >= dim) is lost.
Vector displaced_apply(Complex alpha, const Vector& v);

// L2-normalized Hermite function h_n(x); stable normalized recursion.
double hermite_point(int n, double x);
// h_0(x) .. h_{count-1}(x) in one sweep.
RealVector hermite_values(double x, int count);

DensityOperator density_from_pure(const StateVector& psi);
DensityOperator conjugate_density(const DensityOperator& rho);

// Checks Hermiticity, positivity and unit trace within the stated tolerances.
void validate_density(const DensityOperator& rho, double herm_tol = 1e-12,
                      double eig_tol = 1e-10, double trace_tol = 1e-10);

}  // namespace octoport::fock

#endif
