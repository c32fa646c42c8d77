#ifndef OCTOPORT_MULTIMODE_HPP
#define OCTOPORT_MULTIMODE_HPP

#include <vector>

#include "octoport/common.hpp"
#include "octoport/fock.hpp"

namespace octoport::multimode {

// Ordered list of modes; the tensor slots follow the listed order and the
// last listed mode is contiguous in memory.
struct ModeSystem {
    std::vector<int> ids;
    std::vector<int> dims;

    ModeSystem(std::vector<int> mode_ids, std::vector<int> mode_dims);

    int n_modes() const { return (int)ids.size(); }
    long size() const;
    long stride(int slot) const;
    int slot_of(int mode_id) const;

    // basis index -> per-slot occupation numbers
    void decode(long index, std::vector<int>& levels) const;
};

// Pure state over the joint basis of a ModeSystem.
struct MultimodeState {
    ModeSystem system;
    Vector amplitudes;

    MultimodeState(ModeSystem sys, Vector amps);
    double norm() const { return amplitudes.norm(); }
};

// Reduced density matrix over the kept modes (listed order preserved).
struct MultimodeDensity {
    ModeSystem system;
    Matrix matrix;
};

// 50-50 beam splitter exp(theta (a_p^dag a_s - a_p a_s^dag)), theta = -pi/4,
// fixed so that coherent pairs transform as
//   |alpha> (x) |beta>  ->  |(alpha-beta)/sqrt2> (x) |(alpha+beta)/sqrt2>
// with the primary mode in the first slot. The generator conserves total
// photon number, so the unitary is built blockwise per sector; every block
// is real orthogonal.
class BeamSplitter {
  public:
    BeamSplitter(int primary_dim, int secondary_dim);

    int primary_dim() const { return dp_; }
    int secondary_dim() const { return ds_; }

    // acts on a pair-major vector: index = n_primary * secondary_dim + n_sec
    void apply_pair(Vector& pair_vector, bool adjoint = false) const;
    Matrix dense() const;

  private:
    int dp_, ds_;
    struct Sector {
        int total;
        int np_lo;
        RealMatrix block;
    };
    std::vector<Sector> sectors_;
};

MultimodeState tensor_product(const std::vector<fock::StateVector>& factors,
                              const std::vector<int>& mode_ids);

// Applies the splitter on the designated modes, identity elsewhere. The
// primary mode need not precede the secondary one in storage order.
void apply_beam_splitter(MultimodeState& state, const BeamSplitter& bs,
                         int primary_mode, int secondary_mode,
                         bool adjoint = false);

// Generic dense two-mode operator in (first, second) pair-major form.
void apply_two_mode(MultimodeState& state, const Matrix& op, int first_mode,
                    int second_mode);

void apply_phase_shifter(MultimodeState& state, int mode, double phi);

// probabilities |c|^2 over the joint basis, in storage order
RealVector joint_number_distribution(const MultimodeState& state);

MultimodeDensity partial_trace(const MultimodeState& state,
                               const std::vector<int>& keep_modes);

// Permutes tensor slots to the requested mode order.
MultimodeState reorder_modes(const MultimodeState& state,
                             const std::vector<int>& new_order);

// (I_3 (x) e^{i phi N_4}) B_43 (|0>_3 (x) |sqrt2 z>_4) over modes (3,4);
// equals |z>_3 (x) |e^{i phi} z>_4 up to the input truncation deficit.
MultimodeState prepare_mode4(Complex z, double phi, int dim3, int dim4,
                             double* input_deficit = nullptr);

}  // namespace octoport::multimode

#endif
