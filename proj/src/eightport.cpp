#include "octoport/eightport.hpp"

#include <cmath>

#include "octoport/multimode.hpp"

namespace octoport::eightport {

StateSpec StateSpec::make_vacuum() { return StateSpec{}; }

StateSpec StateSpec::make_fock(int n) {
    if (n < 0) throw ConfigError("fock level must be >= 0");
    StateSpec s;
    s.kind = Kind::fock;
    s.fock_n = n;
    return s;
}

StateSpec StateSpec::make_coherent(Complex alpha) {
    StateSpec s;
    s.kind = Kind::coherent;
    s.alpha = alpha;
    return s;
}

StateSpec StateSpec::make_thermal(double nbar) {
    if (nbar < 0) throw ConfigError("thermal occupation must be >= 0");
    StateSpec s;
    s.kind = Kind::thermal;
    s.nbar = nbar;
    return s;
}

StateSpec StateSpec::make_explicit(Matrix m) {
    StateSpec s;
    s.kind = Kind::explicit_matrix;
    s.matrix = std::move(m);
    fock::DensityOperator rho{s.matrix, 0.0};
    fock::validate_density(rho, 1e-10, 1e-10, 1e-10);
    return s;
}

int StateSpec::required_dim() const {
    switch (kind) {
        case Kind::vacuum:
            return 2;
        case Kind::fock:
            return fock_n + 2;
        case Kind::coherent:
            return fock::coherent_cutoff_rule(std::abs(alpha));
        case Kind::thermal: {
            if (nbar == 0.0) return 2;
            // (nbar/(1+nbar))^d <= 1e-12
            double x = nbar / (1.0 + nbar);
            return std::max(2, (int)std::ceil(-12.0 / std::log10(x)));
        }
        case Kind::explicit_matrix:
            return (int)matrix.rows();
    }
    return 2;
}

fock::DensityOperator make_density(const StateSpec& spec, int dim) {
    switch (spec.kind) {
        case StateSpec::Kind::vacuum:
            return fock::density_from_pure(
                fock::vacuum_state(fock::Cutoff(dim)));
        case StateSpec::Kind::fock:
            if (spec.fock_n >= dim)
                throw ConfigError("fock level does not fit the cutoff");
            return fock::density_from_pure(
                fock::basis_state(spec.fock_n, fock::Cutoff(dim)));
        case StateSpec::Kind::coherent:
            return fock::density_from_pure(
                fock::coherent_state(spec.alpha, fock::Cutoff(dim)));
        case StateSpec::Kind::thermal: {
            const double x = spec.nbar / (1.0 + spec.nbar);
            Matrix m = Matrix::Zero(dim, dim);
            double sum = 0.0;
            for (int n = 0; n < dim; ++n) {
                m(n, n) = (1.0 - x) * std::pow(x, n);
                sum += m(n, n).real();
            }
            m /= sum;
            return fock::DensityOperator{m, 1.0 - sum};
        }
        case StateSpec::Kind::explicit_matrix: {
            if ((int)spec.matrix.rows() > dim)
                throw ConfigError("explicit matrix larger than the cutoff");
            Matrix m = Matrix::Zero(dim, dim);
            m.topLeftCorner(spec.matrix.rows(), spec.matrix.cols()) =
                spec.matrix;
            return fock::DensityOperator{m, 0.0};
        }
    }
    throw ConfigError("unknown state spec");
}

BranchDecomposition decompose(const StateSpec& spec, int dim, int max_branches,
                              double weight_floor) {
    BranchDecomposition out;
    // pure named families avoid the eigensolver entirely
    if (spec.is_pure_named()) {
        fock::StateVector psi;
        switch (spec.kind) {
            case StateSpec::Kind::vacuum:
                psi = fock::vacuum_state(fock::Cutoff(dim));
                break;
            case StateSpec::Kind::fock:
                if (spec.fock_n >= dim)
                    throw ConfigError("fock level does not fit the cutoff");
                psi = fock::basis_state(spec.fock_n, fock::Cutoff(dim));
                break;
            default:
                psi = fock::coherent_state(spec.alpha, fock::Cutoff(dim));
                break;
        }
        out.branches.push_back({1.0, psi.coeffs});
        out.truncation_deficit = psi.norm_deficit;
        return out;
    }
    fock::DensityOperator rho = make_density(spec, dim);
    out.truncation_deficit = rho.norm_deficit;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
    std::vector<SpectralBranch> all;
    for (int i = dim - 1; i >= 0; --i) {
        double w = es.eigenvalues()(i);
        if (w >= weight_floor)
            all.push_back({w, es.eigenvectors().col(i)});
    }
    double kept = 0.0;
    for (size_t i = 0; i < all.size() && (int)i < max_branches; ++i) {
        out.branches.push_back(all[i]);
        kept += all[i].weight;
    }
    out.discarded_weight = std::max(0.0, 1.0 - kept);
    for (auto& b : out.branches) b.weight /= kept;
    return out;
}

std::vector<Rectangle> default_rectangles(double window, int nx, int ny,
                                          double lattice_step) {
    if (!(window > 0) || nx < 1 || ny < 1)
        throw ConfigError("invalid rectangle grid");
    std::vector<double> qe(nx + 1), pe(ny + 1);
    for (int i = 0; i <= nx; ++i)
        qe[i] = snap_to_half_lattice(-window + 2.0 * window * i / nx,
                                     lattice_step);
    for (int j = 0; j <= ny; ++j)
        pe[j] = snap_to_half_lattice(-window + 2.0 * window * j / ny,
                                     lattice_step);
    for (int i = 0; i < nx; ++i)
        if (!(qe[i] < qe[i + 1]))
            throw ConfigError("rectangle grid finer than the outcome lattice");
    std::vector<Rectangle> out;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            out.push_back({qe[i], qe[i + 1], pe[j], pe[j + 1]});
    return out;
}

void resolve_defaults(DetectorConfig& config) {
    if (std::abs(config.z) <= 0.0)
        throw ConfigError("reference amplitude z must be nonzero");
    const int ref_dim =
        fock::coherent_cutoff_rule(std::sqrt(2.0) * std::abs(config.z));
    if (config.dim1 == 0)
        config.dim1 = std::max(config.t_state.required_dim(), 20);
    if (config.dim2 == 0)
        config.dim2 = std::max(config.s_state.required_dim(), 20);
    if (config.dim3 == 0) config.dim3 = ref_dim;
    if (config.dim4 == 0) config.dim4 = ref_dim;
    for (int d : {config.dim1, config.dim2, config.dim3, config.dim4})
        if (d < 2) throw ConfigError("per-mode cutoff must be >= 2");
    if (config.rectangles.empty())
        config.rectangles =
            default_rectangles(4.0, 8, 8, 1.0 / std::abs(config.z));
}

double GStatistics::mass_in(const Rectangle& z) const {
    double m = 0.0;
    for (int i = 0; i < joint.rows(); ++i)
        for (int j = 0; j < joint.cols(); ++j)
            if (z.contains((k_min + i) * lattice_step,
                           (l_min + j) * lattice_step))
                m += joint(i, j);
    return m;
}

double GStatistics::marginal_mean_q() const {
    double m = 0.0;
    for (int i = 0; i < joint.rows(); ++i)
        m += (k_min + i) * lattice_step * joint.row(i).sum();
    return m;
}

double GStatistics::marginal_mean_p() const {
    double m = 0.0;
    for (int j = 0; j < joint.cols(); ++j)
        m += (l_min + j) * lattice_step * joint.col(j).sum();
    return m;
}

namespace {

struct Branches {
    BranchDecomposition t, s;
    double deficit;  // total preparation deficit, without branch discards
};

Branches prepare_branches(const DetectorConfig& config, double ref_deficit) {
    Branches b;
    b.t = decompose(config.t_state, config.dim1, config.max_branches);
    b.s = decompose(config.s_state, config.dim2, config.max_branches);
    b.deficit =
        b.t.truncation_deficit + b.s.truncation_deficit + ref_deficit;
    double discarded = b.t.discarded_weight + b.s.discarded_weight;
    if (discarded > config.deficit_budget)
        throw InfeasibleError(
            "spectral branch cap discards more weight than the budget");
    if (b.deficit > config.deficit_budget)
        throw TruncationError("preparation deficits exceed the budget",
                              b.deficit);
    return b;
}

void fill_rectangles(GStatistics& g) {
    g.rectangle_probs.clear();
    for (const auto& z : g.rectangles) g.rectangle_probs.push_back(g.mass_in(z));
}

}  // namespace

GStatistics run_direct(const DetectorConfig& cfg) {
    DetectorConfig config = cfg;
    resolve_defaults(config);
    const double az = std::abs(config.z);
    const int d1 = config.dim1, d2 = config.dim2, d3 = config.dim3,
              d4 = config.dim4;

    fock::StateVector ref = fock::coherent_state(
        std::sqrt(2.0) * config.z, fock::Cutoff(d4));
    Branches br = prepare_branches(config, ref.norm_deficit);

    GStatistics g;
    g.path = GStatistics::Path::direct;
    g.lattice_step = 1.0 / az;
    g.k_min = -(d1 - 1);
    g.l_min = -(d2 - 1);
    g.joint = RealMatrix::Zero(d1 + d3 - 1, d2 + d4 - 1);
    g.rectangles = config.rectangles;
    g.truncation_deficit = br.deficit;
    g.discarded_branch_weight =
        br.t.discarded_weight + br.s.discarded_weight;

    multimode::BeamSplitter b12(d1, d2);
    multimode::BeamSplitter b43(d4, d3);
    multimode::BeamSplitter u13(d1, d3);
    multimode::BeamSplitter u24(d2, d4);

    fock::StateVector vac3 = fock::vacuum_state(fock::Cutoff(d3));
    for (const auto& tb : br.t.branches) {
        for (const auto& sb : br.s.branches) {
            const double weight = tb.weight * sb.weight;
            fock::StateVector t{tb.vec, 0.0};
            fock::StateVector s{sb.vec, 0.0};
            multimode::MultimodeState psi = multimode::tensor_product(
                {t, s, vac3, ref}, {1, 2, 3, 4});
            multimode::apply_beam_splitter(psi, b12, 1, 2);
            multimode::apply_beam_splitter(psi, b43, 4, 3);
            multimode::apply_phase_shifter(psi, 4, config.phi);
            multimode::apply_beam_splitter(psi, u13, 1, 3);
            multimode::apply_beam_splitter(psi, u24, 2, 4);

            // stream |c|^2 onto the (n3-n1, n4-n2) lattice
            long idx = 0;
            for (int n1 = 0; n1 < d1; ++n1)
                for (int n2 = 0; n2 < d2; ++n2)
                    for (int n3 = 0; n3 < d3; ++n3) {
                        const int row = n3 - n1 - g.k_min;
                        for (int n4 = 0; n4 < d4; ++n4, ++idx)
                            g.joint(row, n4 - n2 - g.l_min) +=
                                weight * std::norm(psi.amplitudes(idx));
                    }
        }
    }
    g.total_mass = g.joint.sum();
    fill_rectangles(g);
    return g;
}

GStatistics run_factorized(const DetectorConfig& cfg) {
    DetectorConfig config = cfg;
    resolve_defaults(config);
    const double az = std::abs(config.z);
    const int d1 = config.dim1, d2 = config.dim2, d3 = config.dim3,
              d4 = config.dim4;

    homodyne::HomodyneObservable e1(config.z, d1, d3,
                                    homodyne::Realization::counting_after_u);
    homodyne::HomodyneObservable e2(
        config.z * std::exp(Complex(0, config.phi)), d2, d4,
        homodyne::Realization::counting_after_u);
    const auto& f1 = e1.lattice_family();
    const auto& f2 = e2.lattice_family();

    Branches br =
        prepare_branches(config, e1.aux_deficit() + e2.aux_deficit());

    GStatistics g;
    g.path = GStatistics::Path::factorized;
    g.lattice_step = 1.0 / az;
    g.k_min = f1.k_min;
    g.l_min = f2.k_min;
    g.joint = RealMatrix::Zero((long)f1.ops.size(), (long)f2.ops.size());
    g.rectangles = config.rectangles;
    g.truncation_deficit = br.deficit;
    g.discarded_branch_weight =
        br.t.discarded_weight + br.s.discarded_weight;

    multimode::BeamSplitter b12(d1, d2);
    for (const auto& tb : br.t.branches) {
        for (const auto& sb : br.s.branches) {
            const double weight = tb.weight * sb.weight;
            Vector pair(d1 * d2);
            for (int n = 0; n < d1; ++n)
                for (int m = 0; m < d2; ++m)
                    pair((long)n * d2 + m) = tb.vec(n) * sb.vec(m);
            b12.apply_pair(pair);
            Matrix c = Eigen::Map<Matrix>(pair.data(), d2, d1).transpose();

            // p_kl = sum_{m,m'} [C^H E1_k C]_{m m'} [E2_l]_{m m'}
            for (size_t k = 0; k < f1.ops.size(); ++k) {
                Matrix gk = c.adjoint() * f1.ops[k] * c;
                for (size_t l = 0; l < f2.ops.size(); ++l)
                    g.joint(k, l) +=
                        weight *
                        (gk.cwiseProduct(f2.ops[l])).sum().real();
            }
        }
    }
    g.total_mass = g.joint.sum();
    fill_rectangles(g);
    return g;
}

double g_rectangle(const DetectorConfig& config, const Rectangle& z,
                   GStatistics::Path path) {
    GStatistics g = path == GStatistics::Path::direct ? run_direct(config)
                                                      : run_factorized(config);
    return g.mass_in(z);
}

}  // namespace octoport::eightport
