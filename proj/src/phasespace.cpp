#include "octoport/phasespace.hpp"

#include <cmath>

#include "octoport/multimode.hpp"
#include "octoport/quadrature.hpp"

namespace octoport::phasespace {

fock::DensityOperator conjugate_state(const fock::DensityOperator& s) {
    return fock::conjugate_density(s);
}

double quadrature_spread(const fock::DensityOperator& rho) {
    const int dim = rho.dim();
    Matrix q = fock::quadrature_q(fock::Cutoff(dim));
    Matrix p = fock::quadrature_p(fock::Cutoff(dim));
    auto sigma = [&](const Matrix& op) {
        double mean = (rho.matrix * op).trace().real();
        double second = (rho.matrix * op * op).trace().real();
        return std::sqrt(std::max(second - mean * mean, 0.0));
    };
    return 4.0 * std::max(sigma(q), sigma(p));
}

namespace {

std::pair<std::vector<double>, std::vector<Vector>> spectral_branches(
    const fock::DensityOperator& rho, double weight_floor = 1e-14) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
    std::vector<double> weights;
    std::vector<Vector> vecs;
    for (int i = rho.dim() - 1; i >= 0; --i) {
        double w = es.eigenvalues()(i);
        if (w < weight_floor) continue;
        weights.push_back(w);
        vecs.push_back(es.eigenvectors().col(i));
    }
    return {std::move(weights), std::move(vecs)};
}

}  // namespace

PhaseSpaceMeasure::PhaseSpaceMeasure(fock::DensityOperator generator,
                                     double rel_tol, double max_cell,
                                     int gl_order)
    : generator_(std::move(generator)), rel_tol_(rel_tol),
      max_cell_(max_cell), gl_order_(gl_order) {
    fock::validate_density(generator_, 1e-10, 1e-8, 1e-8);
    auto [w, v] = spectral_branches(generator_);
    weights_ = std::move(w);
    branches_ = std::move(v);
}

double PhaseSpaceMeasure::density(const fock::DensityOperator& T, double q,
                                  double p) const {
    if (T.dim() != generator_.dim())
        throw ConfigError("signal and generator cutoffs must match");
    const Complex alpha(q / std::sqrt(2.0), p / std::sqrt(2.0));
    double val = 0.0;
    for (size_t j = 0; j < branches_.size(); ++j) {
        Vector y = fock::displaced_apply(alpha, branches_[j]);
        val += weights_[j] * (y.adjoint() * T.matrix * y)(0, 0).real();
    }
    return std::max(0.0, val) / (2.0 * kPi);
}

double PhaseSpaceMeasure::rectangle_probability(const fock::DensityOperator& T,
                                                const Rectangle& z) const {
    const double bound = window_bound(T);
    Rectangle clipped{std::max(z.qlo, -bound), std::min(z.qhi, bound),
                      std::max(z.plo, -bound), std::min(z.phi, bound)};
    if (!(clipped.qlo < clipped.qhi) || !(clipped.plo < clipped.phi))
        return 0.0;
    auto f = [&](double q, double p) { return density(T, q, p); };
    return integrate_rectangle(f, clipped, rel_tol_, max_cell_, gl_order_);
}

double PhaseSpaceMeasure::window_bound(const fock::DensityOperator& T) const {
    return 4.0 + quadrature_spread(T) + quadrature_spread(generator_);
}

bool PhaseSpaceMeasure::in_safe_window(const fock::DensityOperator& T,
                                       double q, double p) const {
    const double b = window_bound(T);
    return std::abs(q) <= b && std::abs(p) <= b;
}

double lemma2_rhs(const fock::DensityOperator& T,
                  const fock::DensityOperator& S, const IntervalSet& x,
                  const IntervalSet& y, double rel_tol) {
    const int d1 = T.dim();
    const int d2 = S.dim();
    auto [wt, vt] = spectral_branches(T);
    auto [ws, vs] = spectral_branches(S);

    multimode::BeamSplitter b12(d1, d2);
    // branch matrices C with F = diag((-i)^m) applied on mode 2
    std::vector<double> weights;
    std::vector<Matrix> cs;
    for (size_t i = 0; i < wt.size(); ++i)
        for (size_t j = 0; j < ws.size(); ++j) {
            Vector pair(d1 * d2);
            for (int n = 0; n < d1; ++n)
                for (int m = 0; m < d2; ++m)
                    pair((long)n * d2 + m) = vt[i](n) * vs[j](m);
            b12.apply_pair(pair);
            // Fourier diagonal on mode 2: F h_n = (-i)^n h_n, exact 4-cycle
            static const Complex fourier_cycle[4] = {
                {1, 0}, {0, -1}, {-1, 0}, {0, 1}};
            Matrix c(d1, d2);
            for (int n = 0; n < d1; ++n)
                for (int m = 0; m < d2; ++m)
                    c(n, m) = pair((long)n * d2 + m) * fourier_cycle[m % 4];
            weights.push_back(wt[i] * ws[j]);
            cs.push_back(std::move(c));
        }

    // position windows for the two coordinates
    double mean1 = 0, sec1 = 0, mean2 = 0, sec2 = 0;
    Matrix q1 = fock::quadrature_q(fock::Cutoff(d1));
    Matrix q2 = fock::quadrature_q(fock::Cutoff(d2));
    for (size_t b = 0; b < cs.size(); ++b) {
        Matrix rho1 = cs[b] * cs[b].adjoint();
        Matrix rho2 = (cs[b].adjoint() * cs[b]).transpose();
        mean1 += weights[b] * (rho1 * q1).trace().real();
        sec1 += weights[b] * (rho1 * q1 * q1).trace().real();
        mean2 += weights[b] * (rho2 * q2).trace().real();
        sec2 += weights[b] * (rho2 * q2 * q2).trace().real();
    }
    double sig1 = std::sqrt(std::max(sec1 - mean1 * mean1, 1e-12));
    double sig2 = std::sqrt(std::max(sec2 - mean2 * mean2, 1e-12));

    auto joint_density = [&](double xq, double yp) {
        RealVector h1 = fock::hermite_values(xq, d1);
        RealVector h2 = fock::hermite_values(yp, d2);
        Vector h1c = h1.cast<Complex>();
        Vector h2c = h2.cast<Complex>();
        double val = 0.0;
        for (size_t b = 0; b < cs.size(); ++b)
            val += weights[b] * std::norm((h1c.transpose() * cs[b] * h2c)(0, 0));
        return val;
    };

    const double s = std::sqrt(2.0);
    double total = 0.0;
    for (const auto& px : x.parts()) {
        double ax = std::max(px.lo / s, mean1 - 8 * sig1);
        double bx = std::min(px.hi / s, mean1 + 8 * sig1);
        if (!(ax < bx)) continue;
        for (const auto& py : y.parts()) {
            double ay = std::max(py.lo / s, mean2 - 8 * sig2);
            double by = std::min(py.hi / s, mean2 + 8 * sig2);
            if (!(ay < by)) continue;
            total += integrate_rectangle(joint_density, {ax, bx, ay, by},
                                         rel_tol, 0.25, 8);
        }
    }
    return total;
}

}  // namespace octoport::phasespace
