#include "octoport/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace octoport::multimode {

ModeSystem::ModeSystem(std::vector<int> mode_ids, std::vector<int> mode_dims)
    : ids(std::move(mode_ids)), dims(std::move(mode_dims)) {
    if (ids.empty() || ids.size() != dims.size())
        throw ConfigError("mode ids and dims must be non-empty and matched");
    std::set<int> seen;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 1 || ids[i] > 4)
            throw ConfigError("mode ids must come from {1,2,3,4}");
        if (!seen.insert(ids[i]).second)
            throw ConfigError("mode ids must be distinct");
        if (dims[i] < 2) throw ConfigError("per-mode dim must be >= 2");
    }
}

long ModeSystem::size() const {
    long s = 1;
    for (int d : dims) s *= d;
    return s;
}

long ModeSystem::stride(int slot) const {
    long s = 1;
    for (size_t i = slot + 1; i < dims.size(); ++i) s *= dims[i];
    return s;
}

int ModeSystem::slot_of(int mode_id) const {
    for (size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == mode_id) return (int)i;
    throw ConfigError("mode id not present in system");
}

void ModeSystem::decode(long index, std::vector<int>& levels) const {
    levels.resize(ids.size());
    for (int i = (int)ids.size() - 1; i >= 0; --i) {
        levels[i] = (int)(index % dims[i]);
        index /= dims[i];
    }
}

MultimodeState::MultimodeState(ModeSystem sys, Vector amps)
    : system(std::move(sys)), amplitudes(std::move(amps)) {
    if (amplitudes.size() != system.size())
        throw ConfigError("amplitude vector size does not match mode system");
}

namespace {

// offsets of all configurations of the modes not in {skip_a, skip_b}
std::vector<long> spectator_offsets(const ModeSystem& sys, int slot_a,
                                    int slot_b) {
    std::vector<long> offsets{0};
    for (int s = 0; s < sys.n_modes(); ++s) {
        if (s == slot_a || s == slot_b) continue;
        std::vector<long> next;
        next.reserve(offsets.size() * sys.dims[s]);
        for (long base : offsets)
            for (int n = 0; n < sys.dims[s]; ++n)
                next.push_back(base + n * sys.stride(s));
        offsets = std::move(next);
    }
    return offsets;
}

}  // namespace

BeamSplitter::BeamSplitter(int primary_dim, int secondary_dim)
    : dp_(primary_dim), ds_(secondary_dim) {
    if (dp_ < 2 || ds_ < 2) throw ConfigError("beam splitter dims must be >= 2");
    const double theta = -kPi / 4.0;
    for (int total = 0; total <= dp_ + ds_ - 2; ++total) {
        Sector sec;
        sec.total = total;
        sec.np_lo = std::max(0, total - (ds_ - 1));
        const int np_hi = std::min(total, dp_ - 1);
        const int n = np_hi - sec.np_lo + 1;
        // K antisymmetric tridiagonal: <np+1, ns-1| K |np, ns> = sqrt((np+1) ns)
        RealMatrix k = RealMatrix::Zero(n, n);
        for (int i = 0; i + 1 < n; ++i) {
            const int np = sec.np_lo + i;
            const int ns = total - np;
            const double c = std::sqrt((np + 1.0) * ns);
            k(i + 1, i) = c;
            k(i, i + 1) = -c;
        }
        // exp(theta K) through the Hermitian form iK
        Matrix h = Complex(0, 1) * k.cast<Complex>();
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        Vector phases(n);
        for (int i = 0; i < n; ++i)
            phases(i) = std::exp(Complex(0, -theta * es.eigenvalues()(i)));
        Matrix b = es.eigenvectors() * phases.asDiagonal() *
                   es.eigenvectors().adjoint();
        sec.block = b.real();
        sectors_.push_back(std::move(sec));
    }

    // convention probe: the coherent law must hold on construction
    if (std::min(dp_, ds_) >= 20) {
        const Complex gamma(0.8, 0.0);
        fock::StateVector in_p = fock::coherent_state(gamma, fock::Cutoff(dp_));
        fock::StateVector in_s = fock::coherent_state(gamma, fock::Cutoff(ds_));
        Vector pair(dp_ * ds_);
        for (int np = 0; np < dp_; ++np)
            for (int ns = 0; ns < ds_; ++ns)
                pair(np * ds_ + ns) = in_p.coeffs(np) * in_s.coeffs(ns);
        apply_pair(pair);
        fock::StateVector out_p = fock::coherent_state(0.0, fock::Cutoff(dp_));
        fock::StateVector out_s =
            fock::coherent_state(std::sqrt(2.0) * gamma, fock::Cutoff(ds_));
        Vector expect(dp_ * ds_);
        for (int np = 0; np < dp_; ++np)
            for (int ns = 0; ns < ds_; ++ns)
                expect(np * ds_ + ns) = out_p.coeffs(np) * out_s.coeffs(ns);
        if ((pair - expect).norm() > 1e-6)
            throw ConfigError("beam splitter failed the coherent-law probe");
    } else {
        // cutoffs too small for a coherent probe; pin the sign convention on
        // the one-photon sector: |1,0> -> (|1,0> + |0,1>)/sqrt2
        const Sector& s1 = sectors_[1];
        const double r = 1.0 / std::sqrt(2.0);
        if (std::abs(s1.block(0, 1) - r) > 1e-12 ||
            std::abs(s1.block(1, 1) - r) > 1e-12)
            throw ConfigError("beam splitter failed the one-photon probe");
    }
}

void BeamSplitter::apply_pair(Vector& v, bool adjoint) const {
    if (v.size() != (long)dp_ * ds_)
        throw ConfigError("pair vector size mismatch");
    for (const Sector& sec : sectors_) {
        const int n = (int)sec.block.rows();
        RealVector re(n), im(n);
        for (int i = 0; i < n; ++i) {
            const int np = sec.np_lo + i;
            const long idx = (long)np * ds_ + (sec.total - np);
            re(i) = v(idx).real();
            im(i) = v(idx).imag();
        }
        RealVector re2, im2;
        if (adjoint) {
            re2 = sec.block.transpose() * re;
            im2 = sec.block.transpose() * im;
        } else {
            re2 = sec.block * re;
            im2 = sec.block * im;
        }
        for (int i = 0; i < n; ++i) {
            const int np = sec.np_lo + i;
            const long idx = (long)np * ds_ + (sec.total - np);
            v(idx) = Complex(re2(i), im2(i));
        }
    }
}

Matrix BeamSplitter::dense() const {
    Matrix b = Matrix::Zero((long)dp_ * ds_, (long)dp_ * ds_);
    for (const Sector& sec : sectors_) {
        const int n = (int)sec.block.rows();
        for (int i = 0; i < n; ++i) {
            const int npi = sec.np_lo + i;
            const long row = (long)npi * ds_ + (sec.total - npi);
            for (int j = 0; j < n; ++j) {
                const int npj = sec.np_lo + j;
                const long col = (long)npj * ds_ + (sec.total - npj);
                b(row, col) = sec.block(i, j);
            }
        }
    }
    return b;
}

MultimodeState tensor_product(const std::vector<fock::StateVector>& factors,
                              const std::vector<int>& mode_ids) {
    if (factors.empty() || factors.size() != mode_ids.size())
        throw ConfigError("tensor_product needs matched factors and ids");
    std::vector<int> dims;
    for (const auto& f : factors) dims.push_back(f.dim());
    ModeSystem sys(mode_ids, dims);
    Vector amps = factors[0].coeffs;
    for (size_t i = 1; i < factors.size(); ++i) {
        Vector next(amps.size() * factors[i].coeffs.size());
        long k = 0;
        for (long a = 0; a < amps.size(); ++a)
            for (long b = 0; b < factors[i].coeffs.size(); ++b)
                next(k++) = amps(a) * factors[i].coeffs(b);
        amps = std::move(next);
    }
    return MultimodeState(std::move(sys), std::move(amps));
}

void apply_beam_splitter(MultimodeState& state, const BeamSplitter& bs,
                         int primary_mode, int secondary_mode, bool adjoint) {
    const ModeSystem& sys = state.system;
    const int sp = sys.slot_of(primary_mode);
    const int ss = sys.slot_of(secondary_mode);
    if (sys.dims[sp] != bs.primary_dim() || sys.dims[ss] != bs.secondary_dim())
        throw ConfigError("beam splitter dims do not match target modes");
    const long stp = sys.stride(sp), sts = sys.stride(ss);
    const int dp = bs.primary_dim(), ds = bs.secondary_dim();
    Vector pair((long)dp * ds);
    for (long base : spectator_offsets(sys, sp, ss)) {
        for (int np = 0; np < dp; ++np)
            for (int ns = 0; ns < ds; ++ns)
                pair((long)np * ds + ns) =
                    state.amplitudes(base + np * stp + ns * sts);
        bs.apply_pair(pair, adjoint);
        for (int np = 0; np < dp; ++np)
            for (int ns = 0; ns < ds; ++ns)
                state.amplitudes(base + np * stp + ns * sts) =
                    pair((long)np * ds + ns);
    }
}

void apply_two_mode(MultimodeState& state, const Matrix& op, int first_mode,
                    int second_mode) {
    const ModeSystem& sys = state.system;
    const int sa = sys.slot_of(first_mode);
    const int sb = sys.slot_of(second_mode);
    const int da = sys.dims[sa], db = sys.dims[sb];
    if (op.rows() != (long)da * db || op.cols() != (long)da * db)
        throw ConfigError("two-mode operator shape mismatch");
    const long sta = sys.stride(sa), stb = sys.stride(sb);
    Vector pair((long)da * db);
    for (long base : spectator_offsets(sys, sa, sb)) {
        for (int na = 0; na < da; ++na)
            for (int nb = 0; nb < db; ++nb)
                pair((long)na * db + nb) =
                    state.amplitudes(base + na * sta + nb * stb);
        Vector out = op * pair;
        for (int na = 0; na < da; ++na)
            for (int nb = 0; nb < db; ++nb)
                state.amplitudes(base + na * sta + nb * stb) =
                    out((long)na * db + nb);
    }
}

void apply_phase_shifter(MultimodeState& state, int mode, double phi) {
    const ModeSystem& sys = state.system;
    const int slot = sys.slot_of(mode);
    const int d = sys.dims[slot];
    const long st = sys.stride(slot);
    Vector phases(d);
    for (int n = 0; n < d; ++n) phases(n) = std::exp(Complex(0, phi * n));
    for (long base : spectator_offsets(sys, slot, slot))
        for (int n = 0; n < d; ++n)
            state.amplitudes(base + n * st) *= phases(n);
}

RealVector joint_number_distribution(const MultimodeState& state) {
    return state.amplitudes.cwiseAbs2();
}

MultimodeDensity partial_trace(const MultimodeState& state,
                               const std::vector<int>& keep_modes) {
    const ModeSystem& sys = state.system;
    std::vector<int> keep_slots;
    std::vector<int> keep_dims;
    for (int id : keep_modes) {
        keep_slots.push_back(sys.slot_of(id));
        keep_dims.push_back(sys.dims[sys.slot_of(id)]);
    }
    ModeSystem out_sys(keep_modes, keep_dims);
    const long ksize = out_sys.size();

    // offsets of the traced-out configurations
    std::vector<long> rest{0};
    for (int s = 0; s < sys.n_modes(); ++s) {
        if (std::find(keep_slots.begin(), keep_slots.end(), s) !=
            keep_slots.end())
            continue;
        std::vector<long> next;
        next.reserve(rest.size() * sys.dims[s]);
        for (long base : rest)
            for (int n = 0; n < sys.dims[s]; ++n)
                next.push_back(base + n * sys.stride(s));
        rest = std::move(next);
    }

    Matrix rho = Matrix::Zero(ksize, ksize);
    Vector kept(ksize);
    std::vector<int> levels;
    for (long base : rest) {
        for (long k = 0; k < ksize; ++k) {
            out_sys.decode(k, levels);
            long idx = base;
            for (size_t m = 0; m < keep_slots.size(); ++m)
                idx += (long)levels[m] * sys.stride(keep_slots[m]);
            kept(k) = state.amplitudes(idx);
        }
        rho.noalias() += kept * kept.adjoint();
    }
    return MultimodeDensity{std::move(out_sys), std::move(rho)};
}

MultimodeState reorder_modes(const MultimodeState& state,
                             const std::vector<int>& new_order) {
    const ModeSystem& sys = state.system;
    std::vector<int> new_dims;
    for (int id : new_order) new_dims.push_back(sys.dims[sys.slot_of(id)]);
    ModeSystem out_sys(new_order, new_dims);
    Vector out(out_sys.size());
    std::vector<int> levels;
    for (long idx = 0; idx < out_sys.size(); ++idx) {
        out_sys.decode(idx, levels);
        long src = 0;
        for (size_t m = 0; m < new_order.size(); ++m)
            src += (long)levels[m] * sys.stride(sys.slot_of(new_order[m]));
        out(idx) = state.amplitudes(src);
    }
    return MultimodeState(std::move(out_sys), std::move(out));
}

MultimodeState prepare_mode4(Complex z, double phi, int dim3, int dim4,
                             double* input_deficit) {
    fock::StateVector vac = fock::vacuum_state(fock::Cutoff(dim3));
    fock::StateVector ref =
        fock::coherent_state(std::sqrt(2.0) * z, fock::Cutoff(dim4));
    if (input_deficit) *input_deficit = ref.norm_deficit;
    MultimodeState state = tensor_product({vac, ref}, {3, 4});
    // mode 4 is the primary mode of B_43
    BeamSplitter b43(dim4, dim3);
    apply_beam_splitter(state, b43, 4, 3);
    apply_phase_shifter(state, 4, phi);
    return state;
}

}  // namespace octoport::multimode
