#pragma once

#include <array>
#include <vector>

#include "polariton/kernels.hpp"
#include "polariton/spectrum.hpp"

namespace polariton {

using Matrix4cd = Matrix4c<double>;
using Vector4cd = Vector4c<double>;

// [M(w) - w] (a(w), b(w), a(-w)', b(-w)') = i (F_c(w), F_x(w), F_c(-w)', F_x(-w)')
// with the four kernel insertions given explicitly; at Gamma = 0 this is the
// matrix of [s, H0] = M s.
Matrix4cd coefficient_matrix(const SystemParams& p, cdouble gc_plus, cdouble gx_plus, cdouble gc_mirror,
                             cdouble gx_mirror);
// Insertions -i G_c(w)+, -i G_x(w)+, -i G_c(-w)+*, -i G_x(-w)+*.
Matrix4cd build_M(const SystemParams& p, const KernelPair& k, double omega);

struct FrequencyResponse {
    double omega = 0;
    Matrix4cd M, V;       // M V = V diag(eigvals)
    Vector4cd eigvals;    // (wL(w), wU(w), -wL(-w)*, -wU(-w)*)
    Matrix4cd L;          // i [M - w]^-1 V, so s(w) = L Ftilde(w)
    std::array<cdouble, 2> T, S;  // F_out = sum T_j Ftilde_j(w) + S_j Ftilde_j(-w)'
};

// Eigenvalues are labelled by nearest match to `reference` (the closed-system
// frequencies when null); throws BranchTrackingLost when the best labelling is
// not at least twice as good as the runner-up. Columns of V carry
// |v' eta v| = 1 with eta = diag(1, 1, -1, -1). Negative frequencies are the
// mirror image of positive ones.
FrequencyResponse frequency_response(const SystemParams& p, const KernelPair& k, double omega,
                                     const Vector4cd* reference = nullptr);
// The response at -w built from the response at w.
FrequencyResponse mirrored(const FrequencyResponse& r, const KernelPair& k);
// Continuation over a grid of positive frequencies, seeded at the largest one.
std::vector<FrequencyResponse> track_branches(const SystemParams& p, const KernelPair& k,
                                              const std::vector<double>& omega);

// <Phi(w)_+ Phi'> and <Phi(w)_- Phi'> with Phi = (F_c, F_x, F_c', F_x') and
// Phi' its elementwise adjoint.
struct InputCorrelationMatrix {
    Matrix4cd plus, minus;
    Matrix4cd total() const { return plus + minus; }
};

// Moment matrix used for the input fields: the reservoir moments, or for
// squeezed-ground reservoirs with `replace` the dressed form V diag(1,1,0,0) V'.
Matrix4cd input_moments(const ReservoirCorrelations& corr, const FrequencyResponse& r, bool replace);
InputCorrelationMatrix build_input_correlations(const ReservoirCorrelations& corr, const FrequencyResponse& r,
                                                bool replace = true);

// Normal- and time-ordered output spectra in the dressed polariton basis.
SpectralResult ordered_output_spectrum(const SystemParams& p, const ReservoirCorrelations& corr,
                                       const std::vector<double>& omega, bool replace = true);
// <F_out(w)' F_out> without polariton ordering.
std::vector<double> unordered_output_spectrum(const SystemParams& p, const ReservoirCorrelations& corr,
                                              const std::vector<double>& omega, bool replace = true);

// Stationary second moments from spectral integration.
struct IntracavityOccupations {
    MomentMatrix moments;           // <s s'> of (a, b, a', b')
    Eigen::Matrix2cd number, pair;  // <p_j' p_k>, <p_j p_k> in the closed-system basis
    // Same with p(w) = V(w)^-1 s(w); the pair keeps only the time-ordered input part.
    Eigen::Matrix2cd dressed_number, dressed_pair;
};

// Trapezoid integration over a grid spanning both signs of w; throws
// GridTooCoarse when dropping every other point moves any moment by > 1e-3.
IntracavityOccupations intracavity_occupations(const SystemParams& p, const ReservoirCorrelations& corr,
                                               const std::vector<double>& omega, bool replace = true);

// Grid over (-cutoff, cutoff): sinh clusters on +-wL, +-wU, geometric near 0 and the cutoff.
std::vector<double> occupation_grid(const SystemParams& p, const KernelPair& k, int points_per_segment = 800);
// Grid over (lo, hi): half uniform, half clustered within 5 Gamma of wL and wU.
std::vector<double> spectrum_grid(const SystemParams& p, const KernelPair& k, double lo, double hi, int points);

} // namespace polariton
