#ifndef OCTOPORT_TESTS_ORACLES_HPP
#define OCTOPORT_TESTS_ORACLES_HPP

// Closed-form reference values, independent of the library implementation.

#include <cmath>
#include <complex>

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// <alpha|beta> = exp(-(|a|^2+|b|^2)/2 + conj(a) b)
inline std::complex<double> coherent_overlap(std::complex<double> a,
                                             std::complex<double> b) {
    return std::exp(-0.5 * (std::norm(a) + std::norm(b)) + std::conj(a) * b);
}

// mass of N(mu, sigma^2) on [lo, hi)
inline double gauss_mass(double mu, double sigma, double lo, double hi) {
    auto cdf = [&](double x) {
        return 0.5 * (1.0 + std::erf((x - mu) / (sigma * std::sqrt(2.0))));
    };
    return cdf(hi) - cdf(lo);
}

// vacuum quadrature mass: integral of pi^{-1/2} e^{-x^2} over [lo, hi)
inline double vacuum_quadrature_mass(double lo, double hi) {
    return 0.5 * (std::erf(hi) - std::erf(lo));
}

inline double poisson_pmf(double lambda, int n) {
    if (n < 0) return 0.0;
    double logp = -lambda + n * std::log(lambda) - std::lgamma(n + 1.0);
    return lambda == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::exp(logp);
}

// difference of independent Poisson counts: P(n2 - n1 = k), via the
// modified-Bessel series P(k) = e^{-(l1+l2)} (l1/l2)^{k/2} I_k(2 sqrt(l1 l2))
inline double skellam_pmf(double lambda2, double lambda1, int k) {
    // k is the value of n2 - n1
    double nu = std::abs((double)k);
    double bessel = std::cyl_bessel_i(nu, 2.0 * std::sqrt(lambda1 * lambda2));
    return std::exp(-(lambda1 + lambda2)) *
           std::pow(lambda2 / lambda1, 0.5 * k) * bessel;
}

// vacuum Husimi density (1/2pi) e^{-(q^2+p^2)/2}
inline double vacuum_husimi(double q, double p) {
    return std::exp(-0.5 * (q * q + p * p)) / (2.0 * kPi);
}

}  // namespace oracles

#endif
