#include <doctest.h>

#include "octoport/fock.hpp"
#include "octoport/quadrature.hpp"
#include "oracles.hpp"

using namespace octoport;
using namespace octoport::fock;

TEST_CASE("annihilation matrix elements") {
    Matrix a2 = annihilation(Cutoff(2));
    CHECK(a2(0, 1) == Complex(1.0, 0.0));
    CHECK(a2(0, 0) == Complex(0.0, 0.0));
    CHECK(a2(1, 0) == Complex(0.0, 0.0));
    CHECK(a2(1, 1) == Complex(0.0, 0.0));

    Matrix a4 = annihilation(Cutoff(4));
    CHECK(a4(2, 3) == Complex(std::sqrt(3.0), 0.0));

    // <m|a|n> = sqrt(n) delta_{m,n-1} exactly
    Matrix a = annihilation(Cutoff(17));
    for (int m = 0; m < 17; ++m)
        for (int n = 0; n < 17; ++n)
            CHECK(a(m, n) == (m == n - 1 ? Complex(std::sqrt((double)n), 0.0)
                                         : Complex(0.0, 0.0)));
}

TEST_CASE("truncated ladder commutator") {
    const int dim = 5;
    Matrix a = annihilation(Cutoff(dim));
    Matrix comm = a * a.adjoint() - a.adjoint() * a;
    for (int n = 0; n < dim - 1; ++n)
        CHECK(std::abs(comm(n, n) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(comm(dim - 1, dim - 1) - Complex(-(dim - 1), 0)) < 1e-14);
}

TEST_CASE("quadratures") {
    for (int dim : {2, 6, 40}) {
        Matrix q = quadrature_q(Cutoff(dim));
        Matrix p = quadrature_p(Cutoff(dim));
        CHECK(is_hermitian(q, 1e-15));
        CHECK(is_hermitian(p, 1e-15));
    }

    // vacuum quadrature variance <0|Q^2|0> = 1/2
    Matrix q = quadrature_q(Cutoff(12));
    CHECK(std::abs((q * q)(0, 0).real() - 0.5) < 1e-14);

    // [Q,P] = iI on levels 0..dim-2
    const int dim = 6;
    Matrix qq = quadrature_q(Cutoff(dim));
    Matrix pp = quadrature_p(Cutoff(dim));
    Matrix comm = qq * pp - pp * qq;
    for (int n = 0; n + 1 < dim; ++n)
        for (int m = 0; m + 1 < dim; ++m) {
            Complex want = n == m ? Complex(0, 1) : Complex(0, 0);
            CHECK(std::abs(comm(n, m) - want) < 1e-12);
        }
}

TEST_CASE("coherent states") {
    StateVector vac = coherent_state(0.0, Cutoff(8));
    CHECK(vac.coeffs(0) == Complex(1, 0));
    CHECK(vac.coeffs.tail(7).norm() == 0.0);
    CHECK(vac.norm_deficit == 0.0);

    // eigenvector residual
    StateVector c1 = coherent_state(1.0, Cutoff(40));
    Matrix a = annihilation(Cutoff(40));
    CHECK((a * c1.coeffs - c1.coeffs).norm() <= 1e-6);

    // overlap against the closed form
    StateVector cb = coherent_state(Complex(0.0, 0.5), Cutoff(40));
    Complex got = c1.coeffs.dot(cb.coeffs);  // conjugates the left argument
    double want = std::abs(oracles::coherent_overlap(1.0, Complex(0, 0.5)));
    CHECK(std::abs(std::abs(got) - want) < 1e-8);

    // residual decreases with the cutoff
    double prev = 1.0;
    for (int dim : {20, 30, 40}) {
        StateVector c = coherent_state(1.0, Cutoff(dim));
        Matrix ad = annihilation(Cutoff(dim));
        double res = (ad * c.coeffs - c.coeffs).norm();
        CHECK(res < prev);
        prev = res;
    }

    CHECK_THROWS_AS(coherent_state(4.0, Cutoff(10), 1e-12), TruncationError);
    CHECK(satisfies_cutoff_rule(1.0, Cutoff(17)));
    CHECK(!satisfies_cutoff_rule(1.0, Cutoff(16)));
}

TEST_CASE("displacement operators") {
    Matrix id = displacement(0.0, Cutoff(10));
    CHECK((id - Matrix::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-13);

    Matrix d = displacement(1.0, Cutoff(40));
    CHECK(is_unitary(d, 1e-10));
    Vector vac = Vector::Zero(40);
    vac(0) = 1.0;
    StateVector c1 = coherent_state(1.0, Cutoff(40));
    CHECK((d * vac - c1.coeffs).norm() <= 1e-8);

    // group law on the safe subspace
    Complex a(0.4, 0.2), b(-0.3, 0.5);
    Matrix da = displacement(a, Cutoff(40));
    Matrix db = displacement(b, Cutoff(40));
    Matrix dab = displacement(a + b, Cutoff(40));
    Complex phase = std::exp(Complex(0, std::imag(a * std::conj(b))));
    Matrix diff = da * db - phase * dab;
    for (int n = 0; n < 12; ++n) {
        Vector e = Vector::Zero(40);
        e(n) = 1.0;
        CHECK((diff * e).norm() < 1e-6);
    }
}

TEST_CASE("weyl product form") {
    // W(q,p) = e^{iqp/2} e^{-iqP} e^{ipQ} probed on low-lying states
    const int dim = 40;
    const double q = 0.7, p = -0.3;
    Complex alpha(q / std::sqrt(2.0), p / std::sqrt(2.0));
    Matrix w = displacement(alpha, Cutoff(dim));

    auto expi = [&](const Matrix& h, double scale) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Vector ph(dim);
        for (int i = 0; i < dim; ++i)
            ph(i) = std::exp(Complex(0, scale * es.eigenvalues()(i)));
        return Matrix(es.eigenvectors() * ph.asDiagonal() *
                      es.eigenvectors().adjoint());
    };
    Matrix rhs = std::exp(Complex(0, 0.5 * q * p)) *
                 expi(quadrature_p(Cutoff(dim)), -q) *
                 expi(quadrature_q(Cutoff(dim)), p);

    Matrix diff = w - rhs;
    for (int n = 0; n < 12; ++n) {
        Vector e = Vector::Zero(dim);
        e(n) = 1.0;
        CHECK((diff * e).norm() < 1e-8);
    }
    StateVector probe = coherent_state(1.0, Cutoff(dim));
    CHECK((diff * probe.coeffs).norm() < 1e-8);
}

TEST_CASE("displaced_apply matches the unitary route") {
    const int dim = 40;
    Complex alpha(0.9, -0.4);
    Matrix d = displacement(alpha, Cutoff(dim));
    StateVector probe = coherent_state(Complex(0.3, 0.2), Cutoff(dim));
    Vector via_matrix = d * probe.coeffs;
    Vector via_triangular = displaced_apply(alpha, probe.coeffs);
    CHECK((via_matrix - via_triangular).norm() < 1e-9);
}

TEST_CASE("phase shifter") {
    Matrix id = phase_shifter(0.0, Cutoff(7));
    CHECK((id - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() == 0.0);

    Matrix parity = phase_shifter(kPi, Cutoff(7));
    for (int n = 0; n < 7; ++n)
        CHECK(std::abs(parity(n, n) - Complex(n % 2 ? -1.0 : 1.0, 0.0)) <
              1e-14);

    StateVector c = coherent_state(1.0, Cutoff(40));
    StateVector rotated = coherent_state(Complex(0.0, 1.0), Cutoff(40));
    Vector got = phase_shifter(kPi / 2.0, Cutoff(40)) * c.coeffs;
    CHECK((got - rotated.coeffs).norm() < 1e-8);
}

TEST_CASE("hermite functions") {
    CHECK(hermite_point(0, 0.0) ==
          doctest::Approx(std::pow(oracles::kPi, -0.25)).epsilon(1e-12));
    CHECK(hermite_point(1, 0.0) == 0.0);

    // normalization by quadrature
    auto h2sq = [](double x) {
        double h = fock::hermite_point(2, x);
        return h * h;
    };
    double norm = integrate_adaptive(h2sq, -12.0, 12.0, 1e-10);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));

    // batch evaluation agrees with single points
    RealVector batch = hermite_values(0.83, 25);
    for (int n = 0; n < 25; ++n)
        CHECK(batch(n) == doctest::Approx(hermite_point(n, 0.83)));
}

TEST_CASE("density helpers") {
    StateVector c = coherent_state(Complex(1.0, 0.5), Cutoff(30));
    DensityOperator rho = density_from_pure(c);
    validate_density(rho);

    // conjugation sends |alpha> to |conj(alpha)> and is an involution
    DensityOperator conj_rho = conjugate_density(rho);
    StateVector cc = coherent_state(Complex(1.0, -0.5), Cutoff(30));
    double fidelity =
        (cc.coeffs.adjoint() * conj_rho.matrix * cc.coeffs)(0, 0).real();
    CHECK(fidelity >= 1.0 - 1e-10);
    DensityOperator twice = conjugate_density(conj_rho);
    CHECK((twice.matrix - rho.matrix).cwiseAbs().maxCoeff() == 0.0);

    // fock states are conjugation-invariant
    DensityOperator n1 = density_from_pure(basis_state(1, Cutoff(10)));
    CHECK((conjugate_density(n1).matrix - n1.matrix).cwiseAbs().maxCoeff() ==
          0.0);

    CHECK_THROWS_AS(validate_density(DensityOperator{
                        Matrix::Identity(3, 3) * 0.9, 0.0}),
                    ConfigError);
    CHECK_THROWS_AS(Cutoff(1), ConfigError);
}
