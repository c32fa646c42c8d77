#include "octoport/homodyne.hpp"

#include <cmath>

#include "octoport/quadrature.hpp"

namespace octoport::homodyne {

double DiscreteOutcomeDistribution::mass_in(const IntervalSet& set) const {
    double m = 0.0;
    for (int i = 0; i < weights.size(); ++i)
        if (set.contains(value(i))) m += weights(i);
    return m;
}

HomodyneObservable::HomodyneObservable(Complex z, int signal_dim, int aux_dim,
                                       Realization realization)
    : z_(z), signal_dim_(signal_dim), aux_dim_(aux_dim),
      realization_(realization) {
    if (std::abs(z_) <= 0.0)
        throw ConfigError("homodyne amplitude must be nonzero");
    fock::StateVector aux =
        fock::coherent_state(z_, fock::Cutoff(aux_dim_));
    aux_deficit_ = aux.norm_deficit;

    if (realization_ == Realization::counting_after_u) {
        // W = U V_z columns: U(|n> (x) |z>), signal primary, pair-major
        multimode::BeamSplitter u(signal_dim_, aux_dim_);
        Matrix w(signal_dim_ * aux_dim_, signal_dim_);
        Vector pair(signal_dim_ * aux_dim_);
        for (int n = 0; n < signal_dim_; ++n) {
            pair.setZero();
            for (int m = 0; m < aux_dim_; ++m)
                pair((long)n * aux_dim_ + m) = aux.coeffs(m);
            u.apply_pair(pair);
            w.col(n) = pair;
        }
        family_.k_min = -(signal_dim_ - 1);
        family_.step = lattice_step();
        family_.ops.assign(signal_dim_ + aux_dim_ - 1,
                           Matrix::Zero(signal_dim_, signal_dim_));
        for (int ns = 0; ns < signal_dim_; ++ns)
            for (int na = 0; na < aux_dim_; ++na) {
                const long row = (long)ns * aux_dim_ + na;
                const int k = na - ns;
                family_.ops[k - family_.k_min].noalias() +=
                    w.row(row).adjoint() * w.row(row);
            }
    } else {
        // compressed difference quadrature A = (a (x) a^dag + a^dag (x) a)/sqrt2
        Matrix a_s = fock::annihilation(fock::Cutoff(signal_dim_));
        Matrix a_a = fock::annihilation(fock::Cutoff(aux_dim_));
        const long dim = (long)signal_dim_ * aux_dim_;
        Matrix big = Matrix::Zero(dim, dim);
        for (int i = 0; i < signal_dim_; ++i)
            for (int j = 0; j < signal_dim_; ++j) {
                if (a_s(i, j) == 0.0 && a_s(j, i) == 0.0) continue;
                for (int k = 0; k < aux_dim_; ++k)
                    for (int l = 0; l < aux_dim_; ++l) {
                        Complex v = a_s(i, j) * std::conj(a_a(l, k)) +
                                    std::conj(a_s(j, i)) * a_a(k, l);
                        if (v != 0.0)
                            big((long)i * aux_dim_ + k, (long)j * aux_dim_ + l) +=
                                v / std::sqrt(2.0);
                    }
            }
        Eigen::SelfAdjointEigenSolver<Matrix> es(big);
        eigenvalues_ = es.eigenvalues() / std::abs(z_);
        eigen_ops_.reserve(dim);
        for (long i = 0; i < dim; ++i) {
            // u_i = (I (x) <z|) v_i
            Vector u = Vector::Zero(signal_dim_);
            for (int n = 0; n < signal_dim_; ++n)
                for (int m = 0; m < aux_dim_; ++m)
                    u(n) += std::conj(aux.coeffs(m)) *
                            es.eigenvectors()((long)n * aux_dim_ + m, i);
            eigen_ops_.push_back(u * u.adjoint());
        }
    }
}

double HomodyneObservable::lattice_step() const {
    return 1.0 / (std::sqrt(2.0) * std::abs(z_));
}

const HomodyneObservable::LatticeFamily& HomodyneObservable::lattice_family()
    const {
    if (realization_ != Realization::counting_after_u)
        throw ConfigError("lattice family defined for the counting realization");
    return family_;
}

bool HomodyneObservable::boundary_hit(const IntervalSet& set) const {
    if (realization_ == Realization::counting_after_u)
        return endpoint_on_lattice(set, lattice_step());
    for (const auto& part : set.parts())
        for (double e : {part.lo, part.hi}) {
            if (!std::isfinite(e)) continue;
            for (long i = 0; i < eigenvalues_.size(); ++i)
                if (std::abs(eigenvalues_(i) - e) < 1e-10) return true;
        }
    return false;
}

Matrix HomodyneObservable::interval_operator(const IntervalSet& set) const {
    Matrix e = Matrix::Zero(signal_dim_, signal_dim_);
    if (realization_ == Realization::counting_after_u) {
        for (size_t i = 0; i < family_.ops.size(); ++i) {
            double x = (family_.k_min + (int)i) * family_.step;
            if (set.contains(x)) e += family_.ops[i];
        }
    } else {
        // eigenvalues within the binning tolerance of an endpoint are treated
        // as sitting exactly on it, so the half-open convention decides
        const double tol = 1e-10;
        for (long i = 0; i < eigenvalues_.size(); ++i) {
            const double lam = eigenvalues_(i);
            for (const auto& part : set.parts())
                if (lam >= part.lo - tol && lam < part.hi - tol) {
                    e += eigen_ops_[i];
                    break;
                }
        }
    }
    return e;
}

ProbabilityResult HomodyneObservable::probability(
    const fock::DensityOperator& T, const IntervalSet& set) const {
    if (T.dim() != signal_dim_)
        throw ConfigError("signal density dim does not match observable");
    Matrix e = interval_operator(set);
    double p = (T.matrix * e).trace().real();
    return ProbabilityResult{p, aux_deficit_ + T.norm_deficit,
                             boundary_hit(set)};
}

DiscreteOutcomeDistribution scaled_difference_distribution(
    const multimode::MultimodeState& state, double scale) {
    if (state.system.n_modes() != 2)
        throw ConfigError("difference distribution needs a two-mode state");
    if (!(scale > 0)) throw ConfigError("scale must be positive");
    const int d0 = state.system.dims[0];
    const int d1 = state.system.dims[1];
    DiscreteOutcomeDistribution dist;
    dist.lattice_step = 1.0 / scale;
    dist.k_min = -(d0 - 1);
    dist.weights = RealVector::Zero(d0 + d1 - 1);
    for (int n0 = 0; n0 < d0; ++n0)
        for (int n1 = 0; n1 < d1; ++n1)
            dist.weights(n1 - n0 - dist.k_min) +=
                std::norm(state.amplitudes((long)n0 * d1 + n1));
    return dist;
}

double quadrature_probability(const fock::DensityOperator& T, double theta,
                              const IntervalSet& set, double rel_tol) {
    const int dim = T.dim();
    // rotate: T' = e^{-i theta N} T e^{i theta N}
    Matrix rot(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m)
            rot(n, m) = T.matrix(n, m) * std::exp(Complex(0, -theta * (n - m)));

    Matrix q = fock::quadrature_q(fock::Cutoff(dim));
    double mean = (rot * q).trace().real();
    double second = (rot * q * q).trace().real();
    double sigma = std::sqrt(std::max(second - mean * mean, 1e-12));
    const double lo = mean - 8.0 * sigma;
    const double hi = mean + 8.0 * sigma;

    auto density = [&](double x) {
        RealVector h = fock::hermite_values(x, dim);
        Vector hv = h.cast<Complex>();
        return std::max(0.0, (hv.adjoint() * rot * hv)(0, 0).real());
    };

    double total = 0.0;
    for (const auto& part : set.parts()) {
        double a = std::max(part.lo, lo);
        double b = std::min(part.hi, hi);
        if (a < b) total += integrate_adaptive(density, a, b, rel_tol);
    }
    return total;
}

}  // namespace octoport::homodyne
