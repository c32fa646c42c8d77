#include "octoport/fock.hpp"

#include <cmath>

namespace octoport::fock {

int coherent_cutoff_rule(double amplitude) {
    double a = std::abs(amplitude);
    return (int)std::ceil(a * a + 6.0 * a + 10.0);
}

bool satisfies_cutoff_rule(Complex alpha, Cutoff cutoff) {
    return cutoff.dim >= coherent_cutoff_rule(std::abs(alpha));
}

Matrix annihilation(Cutoff cutoff) {
    Matrix a = Matrix::Zero(cutoff.dim, cutoff.dim);
    for (int n = 1; n < cutoff.dim; ++n) a(n - 1, n) = std::sqrt((double)n);
    return a;
}

Matrix creation(Cutoff cutoff) { return annihilation(cutoff).adjoint(); }

Matrix number_operator(Cutoff cutoff) {
    Matrix n = Matrix::Zero(cutoff.dim, cutoff.dim);
    for (int k = 0; k < cutoff.dim; ++k) n(k, k) = (double)k;
    return n;
}

Matrix quadrature_q(Cutoff cutoff) {
    Matrix a = annihilation(cutoff);
    return (a.adjoint() + a) / std::sqrt(2.0);
}

Matrix quadrature_p(Cutoff cutoff) {
    Matrix a = annihilation(cutoff);
    return Complex(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
}

Matrix phase_shifter(double phi, Cutoff cutoff) {
    Matrix u = Matrix::Zero(cutoff.dim, cutoff.dim);
    for (int n = 0; n < cutoff.dim; ++n)
        u(n, n) = std::exp(Complex(0, phi * n));
    return u;
}

StateVector vacuum_state(Cutoff cutoff) { return basis_state(0, cutoff); }

StateVector basis_state(int n, Cutoff cutoff) {
    if (n < 0 || n >= cutoff.dim)
        throw ConfigError("basis level outside cutoff");
    StateVector s;
    s.coeffs = Vector::Zero(cutoff.dim);
    s.coeffs(n) = 1.0;
    return s;
}

StateVector coherent_state(Complex alpha, Cutoff cutoff, double max_deficit) {
    StateVector s;
    s.coeffs = Vector::Zero(cutoff.dim);
    // c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), built by the stable ratio
    // c_n = c_{n-1} * alpha / sqrt(n)
    Complex c = std::exp(-0.5 * std::norm(alpha));
    s.coeffs(0) = c;
    for (int n = 1; n < cutoff.dim; ++n) {
        c *= alpha / std::sqrt((double)n);
        s.coeffs(n) = c;
    }
    double kept = s.coeffs.squaredNorm();
    s.norm_deficit = std::max(0.0, 1.0 - kept);
    if (s.norm_deficit > max_deficit)
        throw TruncationError("coherent state truncation deficit above bound",
                              s.norm_deficit);
    s.coeffs /= std::sqrt(kept);
    return s;
}

Matrix displacement(Complex alpha, Cutoff cutoff) {
    // generator alpha a^dag - conj(alpha) a = iH with H Hermitian
    Matrix a = annihilation(cutoff);
    Matrix k = alpha * a.adjoint() - std::conj(alpha) * a;
    Matrix h = Complex(0, -1) * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(cutoff.dim);
    for (int i = 0; i < cutoff.dim; ++i)
        phases(i) = std::exp(Complex(0, es.eigenvalues()(i)));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

Vector displaced_apply(Complex alpha, const Vector& v) {
    const int dim = (int)v.size();
    // D(alpha) = e^{-|alpha|^2/2} e^{alpha a^dag} e^{-conj(alpha) a}.
    // e^{-conj(alpha) a} v terminates (a is nilpotent here) and the kept
    // components of e^{alpha a^dag} w depend only on w's kept components,
    // so the result equals the projection of the exact infinite-dim vector.
    Vector w = v;
    Vector term = v;
    for (int j = 1; j < dim; ++j) {
        Vector next = Vector::Zero(dim);
        for (int n = 0; n + 1 < dim; ++n)
            next(n) = term(n + 1) * std::sqrt(n + 1.0);
        term = next * (-std::conj(alpha) / (double)j);
        w += term;
        if (term.cwiseAbs().maxCoeff() == 0.0) break;
    }
    Vector y = w;
    term = w;
    for (int j = 1; j < dim; ++j) {
        Vector next = Vector::Zero(dim);
        for (int n = 1; n < dim; ++n) next(n) = term(n - 1) * std::sqrt((double)n);
        term = next * (alpha / (double)j);
        y += term;
        if (term.cwiseAbs().maxCoeff() == 0.0) break;
    }
    return std::exp(-0.5 * std::norm(alpha)) * y;
}

double hermite_point(int n, double x) {
    if (n < 0) throw ConfigError("hermite level must be >= 0");
    return hermite_values(x, n + 1)(n);
}

RealVector hermite_values(double x, int count) {
    if (count < 1) throw ConfigError("need at least one hermite value");
    RealVector h(count);
    // normalized recursion h_{n+1} = x sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}
    h(0) = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (count > 1) h(1) = std::sqrt(2.0) * x * h(0);
    for (int n = 1; n + 1 < count; ++n)
        h(n + 1) = x * std::sqrt(2.0 / (n + 1)) * h(n) -
                   std::sqrt(n / (n + 1.0)) * h(n - 1);
    return h;
}

DensityOperator density_from_pure(const StateVector& psi) {
    DensityOperator rho;
    rho.matrix = psi.coeffs * psi.coeffs.adjoint();
    rho.norm_deficit = psi.norm_deficit;
    return rho;
}

DensityOperator conjugate_density(const DensityOperator& rho) {
    // C acts as entrywise conjugation of Fock coefficients (the Hermite
    // functions are real), so C S C^{-1} conjugates the matrix entries.
    DensityOperator out;
    out.matrix = rho.matrix.conjugate();
    out.norm_deficit = rho.norm_deficit;
    return out;
}

void validate_density(const DensityOperator& rho, double herm_tol,
                      double eig_tol, double trace_tol) {
    if (rho.matrix.rows() != rho.matrix.cols())
        throw ConfigError("density matrix must be square");
    if (!is_hermitian(rho.matrix, herm_tol))
        throw ConfigError("density matrix not Hermitian within tolerance");
    if (std::abs(rho.matrix.trace().real() - 1.0) > trace_tol ||
        std::abs(rho.matrix.trace().imag()) > trace_tol)
        throw ConfigError("density matrix trace not 1 within tolerance");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix,
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -eig_tol)
        throw ConfigError("density matrix has negative eigenvalue");
}

}  // namespace octoport::fock
