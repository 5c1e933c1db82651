#pragma once

#include <array>
#include <utility>
#include <vector>

#include "polariton/fock.hpp"
#include "polariton/kernels.hpp"

namespace polariton {

// The eight memory blocks of the Born dissipator, in the order
//   DL, DR, CL, CR, BL, BR, AL, AR.
// Each block j is an operator that multiplies rho from the left (L) or the
// right (R); it is built from p_k (DL, CR, AL, AR) or p_k' (DR, CL, BL, BR).
enum Block { DL = 0, DR, CL, CR, BL, BR, AL, AR };
inline constexpr int kBlocks = 8;
inline constexpr bool block_uses_creator(int blk) { return blk == DR || blk == CL || blk == BL || blk == BR; }

// Block operators A[blk][j] in the eigenbasis; a block that is absent holds zeros.
struct DissipatorBlocks {
    std::array<std::array<BlockOp, 2>, kBlocks> op;
    std::array<bool, kBlocks> active{};
};

// Linear generator L = L0 + Ldiss written as
//   Ldiss[rho] = left rho + rho right + sum_k X_k rho Y_k.
struct Generator {
    std::array<int, 2> dim{};
    std::array<Eigen::VectorXd, 2> energy;
    BlockOp left, right;
    std::vector<std::pair<BlockOp, BlockOp>> sandwich;

    BlockOp hamiltonian(const BlockOp& r) const;  // -i[H0, r]
    BlockOp dissipator(const BlockOp& r) const;
    BlockOp operator()(const BlockOp& r) const { return hamiltonian(r) + dissipator(r); }
    // Adjoint map: Tr(x L[r]) = Tr(dual(x) r).
    BlockOp dual(const BlockOp& x) const;
    BlockOp dual_dissipator(const BlockOp& x) const;
};

Generator assemble_generator(const FockModel& model, const DissipatorBlocks& blocks);

// Born dissipator with rho(t') replaced by its free evolution back from rho(t)
// and t0 -> -infinity: every matrix element of p_k (or p_k') in the H0
// eigenbasis is weighted by the half-line transform of the memory correlation
// at the corresponding Bohr frequency. Vacuum correlations keep all eight
// blocks; squeezed-ground correlations keep DL, DR, BR, AL.
DissipatorBlocks filtered_blocks(const FockModel& model, const ReservoirCorrelations& corr);
Generator build_filtered_dissipator(const FockModel& model, const ReservoirCorrelations& corr);

enum class MarkovForm { nonlindblad, rwa_lindblad };

// Markov coefficients: A[blk][j] = sum_k coef[blk](j, k) O_k with O_k = p_k or p_k'.
struct MarkovCoefficients {
    std::array<Eigen::Matrix2cd, kBlocks> coef;
    std::array<bool, kBlocks> active{};

    // Gamma_{j,k} and K_{j,k} of the non-Lindblad Markov form
    //   sum Gamma_jk/2 (2 p_j rho p_k' - p_k'p_j rho - rho p_k'p_j)
    //   + sum {K_jk/2 (p_j rho p_k - p_k p_j rho) + h.c.}
    Eigen::Matrix2cd rates() const;
    Eigen::Matrix2cd pair_rates() const;
};

MarkovCoefficients markov_coefficients(const PolaritonBasis& basis, const ReservoirCorrelations& corr,
                                       MarkovForm form);
DissipatorBlocks markov_blocks(const FockModel& model, const MarkovCoefficients& c);
Generator markov_generator(const FockModel& model, const ReservoirCorrelations& corr, MarkovForm form);

// Time in units of 2 pi / omega_c throughout.
struct PropagationOptions {
    double t_end = 10;
    double dt = 0.05;
    int output_stride = 1;
    bool keep_states = false;
};

struct Observables {
    double n_lower = 0, n_upper = 0, n_photon = 0, n_excitation = 0;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Observables> obs;
    std::vector<BlockOp> states;
    BlockOp final_state;
};

Observables observe(const FockModel& model, const BlockOp& rho);

// Fixed-step fourth-order Runge-Kutta in the interaction frame of H0
// (integrating-factor form; the free evolution is exact).
Trajectory propagate(const FockModel& model, const Generator& gen, const BlockOp& rho0,
                     const PropagationOptions& opt);

// Null vector of the generator on even operators, Hermitized and trace-normalized.
BlockOp steady_state(const Generator& gen);

// Second moments <s_mu s_nu'> of s = (a, b, a', b') under a Markov generator,
// evolved exactly in the 16-dimensional space of quadratic observables.
struct MomentTrajectory {
    std::vector<double> t;  // units of 2 pi / omega_c
    std::vector<MomentMatrix> moments;
};

Eigen::Matrix<std::complex<double>, 16, 16> moment_generator(const SystemParams& params,
                                                             const PolaritonBasis& basis,
                                                             const MarkovCoefficients& c);
MomentTrajectory gaussian_moment_propagate(const MomentMatrix& m0, const SystemParams& params,
                                           const PolaritonBasis& basis, const MarkovCoefficients& c,
                                           const std::vector<double>& times);
MomentMatrix moments_of(const FockModel& model, const BlockOp& rho);

} // namespace polariton
