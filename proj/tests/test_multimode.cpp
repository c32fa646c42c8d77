#include <doctest.h>

#include "octoport/multimode.hpp"
#include "oracles.hpp"

using namespace octoport;
using namespace octoport::multimode;

namespace {

MultimodeState coherent_pair(Complex a, Complex b, int d1, int d2,
                             std::vector<int> ids = {1, 2}) {
    return tensor_product({fock::coherent_state(a, fock::Cutoff(d1)),
                           fock::coherent_state(b, fock::Cutoff(d2))},
                          ids);
}

}  // namespace

TEST_CASE("beam splitter coherent law") {
    const int dim = 40;
    BeamSplitter bs(dim, dim);

    // |0>|0> fixed
    MultimodeState vac = coherent_pair(0.0, 0.0, dim, dim);
    Vector before = vac.amplitudes;
    apply_beam_splitter(vac, bs, 1, 2);
    CHECK((vac.amplitudes - before).norm() < 1e-14);

    // |g>|g> -> |0>|sqrt2 g|
    const Complex g(0.8, 0.0);
    MultimodeState in = coherent_pair(g, g, dim, dim);
    apply_beam_splitter(in, bs, 1, 2);
    MultimodeState want = coherent_pair(0.0, std::sqrt(2.0) * g, dim, dim);
    CHECK((in.amplitudes - want.amplitudes).norm() <= 1e-7);

    // general pair against the closed form
    const Complex a(1.0, 0.5), b(-0.3, 0.2);
    MultimodeState in2 = coherent_pair(a, b, dim, dim);
    apply_beam_splitter(in2, bs, 1, 2);
    MultimodeState want2 = coherent_pair((a - b) / std::sqrt(2.0),
                                         (a + b) / std::sqrt(2.0), dim, dim);
    CHECK((in2.amplitudes - want2.amplitudes).norm() <= 1e-7);
}

TEST_CASE("beam splitter conserves total photon number") {
    const int dim = 12;
    BeamSplitter bs(dim, dim);
    Matrix b = bs.dense();
    CHECK(is_unitary(b, 1e-12));
    Matrix n_tot = Matrix::Zero(dim * dim, dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            n_tot(i * dim + j, i * dim + j) = i + j;
    CHECK(((b * n_tot - n_tot * b).cwiseAbs().maxCoeff()) <= 1e-10);

    // no matrix elements between different total-photon sectors
    for (int i = 0; i < dim * dim; ++i)
        for (int j = 0; j < dim * dim; ++j) {
            int ni = i / dim + i % dim;
            int nj = j / dim + j % dim;
            if (ni != nj) CHECK(std::abs(b(i, j)) <= 1e-12);
        }
}

TEST_CASE("apply round trip and three-mode locality") {
    const int dim = 14;
    BeamSplitter bs(dim, dim);

    fock::StateVector g1 = fock::coherent_state(0.7, fock::Cutoff(dim));
    fock::StateVector spectator = fock::coherent_state(0.4, fock::Cutoff(6));
    MultimodeState psi =
        tensor_product({g1, g1, spectator}, {1, 2, 3});
    Vector before = psi.amplitudes;

    apply_beam_splitter(psi, bs, 1, 2);
    // pair transformed per the coherent law, spectator untouched
    fock::StateVector out1 = fock::coherent_state(0.0, fock::Cutoff(dim));
    fock::StateVector out2 =
        fock::coherent_state(0.7 * std::sqrt(2.0), fock::Cutoff(dim));
    MultimodeState want = tensor_product({out1, out2, spectator}, {1, 2, 3});
    CHECK((psi.amplitudes - want.amplitudes).norm() < 2e-6);

    apply_beam_splitter(psi, bs, 1, 2, /*adjoint=*/true);
    CHECK((psi.amplitudes - before).norm() <= 1e-10);

    // identity two-mode operator leaves the state alone
    Matrix id = Matrix::Identity(dim * dim, dim * dim);
    apply_two_mode(psi, id, 1, 2);
    CHECK((psi.amplitudes - before).norm() <= 1e-10);
}

TEST_CASE("mode-4 preparation identity") {
    const int dim = 40;
    double deficit = 0.0;

    // z = 0: vacuum in, vacuum out
    MultimodeState zero = prepare_mode4(0.0, 0.0, dim, dim, &deficit);
    CHECK(std::abs(std::abs(zero.amplitudes(0)) - 1.0) < 1e-14);
    CHECK(deficit == 0.0);

    // z=1, phi=pi/2: |1>_3 (x) |i>_4
    MultimodeState a = prepare_mode4(1.0, kPi / 2.0, dim, dim, &deficit);
    MultimodeState want_a =
        tensor_product({fock::coherent_state(1.0, fock::Cutoff(dim)),
                        fock::coherent_state(Complex(0, 1), fock::Cutoff(dim))},
                       {3, 4});
    double fid_a = std::norm(want_a.amplitudes.dot(a.amplitudes));
    CHECK(fid_a >= 1.0 - 1e-8);

    // z=2, phi=0: |2>_3 (x) |2>_4
    MultimodeState b = prepare_mode4(2.0, 0.0, dim, dim, &deficit);
    MultimodeState want_b =
        tensor_product({fock::coherent_state(2.0, fock::Cutoff(dim)),
                        fock::coherent_state(2.0, fock::Cutoff(dim))},
                       {3, 4});
    double fid_b = std::norm(want_b.amplitudes.dot(b.amplitudes));
    CHECK(fid_b >= 1.0 - 1e-6);
}

TEST_CASE("joint number distribution") {
    // vacuum: point mass at (0,...,0)
    MultimodeState vac = tensor_product(
        {fock::vacuum_state(fock::Cutoff(4)), fock::vacuum_state(fock::Cutoff(4))},
        {1, 2});
    RealVector probs = joint_number_distribution(vac);
    CHECK(probs(0) == doctest::Approx(1.0));
    CHECK(probs.sum() == doctest::Approx(1.0));

    // coherent |alpha|^2 = 1: Poisson(1)
    MultimodeState c = tensor_product(
        {fock::coherent_state(1.0, fock::Cutoff(40))}, {1});
    RealVector pc = joint_number_distribution(c);
    CHECK(pc(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
    for (int n = 0; n < 12; ++n)
        CHECK(pc(n) == doctest::Approx(oracles::poisson_pmf(1.0, n)).epsilon(1e-7));

    // product of independent Poissons for |z> (x) |iz>
    const Complex z(1.2, 0.0);
    MultimodeState two = coherent_pair(z, z * Complex(0, 1), 30, 30);
    RealVector p2 = joint_number_distribution(two);
    for (int n = 0; n < 6; ++n)
        for (int m = 0; m < 6; ++m)
            CHECK(p2(n * 30 + m) ==
                  doctest::Approx(oracles::poisson_pmf(std::norm(z), n) *
                                  oracles::poisson_pmf(std::norm(z), m))
                      .epsilon(1e-7));
}

TEST_CASE("partial trace") {
    // product state reduces to its factor
    MultimodeState prod = coherent_pair(Complex(0.5, 0.1), 0.9, 20, 20);
    MultimodeDensity rho1 = partial_trace(prod, {1});
    fock::StateVector c = fock::coherent_state(Complex(0.5, 0.1), fock::Cutoff(20));
    CHECK((rho1.matrix - c.coeffs * c.coeffs.adjoint()).cwiseAbs().maxCoeff() <
          1e-12);

    // Bell-like state reduces to the maximally mixed qubit block
    Vector bell = Vector::Zero(9);
    bell(0) = 1.0 / std::sqrt(2.0);   // |0,0>
    bell(4) = 1.0 / std::sqrt(2.0);   // |1,1>
    MultimodeState bell_state(ModeSystem({1, 2}, {3, 3}), bell);
    MultimodeDensity red = partial_trace(bell_state, {2});
    CHECK(red.matrix(0, 0).real() == doctest::Approx(0.5));
    CHECK(red.matrix(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(red.matrix(0, 1)) < 1e-14);

    // vacuum through a splitter stays vacuum
    const int dim = 10;
    BeamSplitter bs(dim, dim);
    MultimodeState vac = coherent_pair(0.0, 0.0, dim, dim);
    apply_beam_splitter(vac, bs, 1, 2);
    MultimodeDensity r2 = partial_trace(vac, {2});
    CHECK(r2.matrix(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("mode reordering is involutive") {
    fock::StateVector a = fock::coherent_state(0.3, fock::Cutoff(5));
    fock::StateVector b = fock::coherent_state(Complex(0, 0.4), fock::Cutoff(6));
    fock::StateVector c = fock::basis_state(2, fock::Cutoff(4));
    MultimodeState psi = tensor_product({a, b, c}, {1, 2, 3});
    MultimodeState perm = reorder_modes(psi, {3, 1, 2});
    MultimodeState back = reorder_modes(perm, {1, 2, 3});
    CHECK((back.amplitudes - psi.amplitudes).norm() == 0.0);
    CHECK(perm.system.ids == std::vector<int>{3, 1, 2});
}

TEST_CASE("norm preservation and input validation") {
    const int dim = 8;
    BeamSplitter bs(dim, dim);
    fock::StateVector g = fock::coherent_state(0.5, fock::Cutoff(dim));
    MultimodeState psi = tensor_product({g, g}, {1, 2});
    double n0 = psi.norm();
    apply_beam_splitter(psi, bs, 1, 2);
    CHECK(psi.norm() == doctest::Approx(n0).epsilon(1e-10));

    CHECK_THROWS_AS(ModeSystem({1, 1}, {4, 4}), ConfigError);
    CHECK_THROWS_AS(ModeSystem({5}, {4}), ConfigError);
    CHECK_THROWS_AS(apply_beam_splitter(psi, bs, 1, 3), ConfigError);
    Matrix bad = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(apply_two_mode(psi, bad, 1, 2), ConfigError);
}
