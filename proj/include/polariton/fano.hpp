#pragma once

#include <vector>

#include "polariton/kernels.hpp"

namespace polariton {

// zeta(w) = 1 - (1/wc) int dw' |kappa(w')|^2 / (w' - w + i0), closed form:
// principal-value log plus i pi |kappa(w)|^2 / wc on the band.
// Throws SingularFrequency at a band edge.
cdouble compute_zeta(const KernelSpec& k, double omega_c, double omega);

// Weight of the bare mode in the continuum eigenoperator of frequency w.
struct FanoCoefficients {
    std::vector<double> omega;
    std::vector<cdouble> u, zeta;
    std::vector<double> weight;  // |u|^2
    double normalization = 0;    // int |u|^2 dw
    double first_moment = 0;     // int w |u|^2 dw
};

// u(w) = kappa(w) / (w - wc zeta(w)) with kappa = sqrt(Gamma / 2pi) on the band.
// Throws InvalidParams for Gamma = 0, GridTooCoarse when fewer than 20 points
// fall within the half-width of the peak or the normalization misses 1 by > 1e-2.
FanoCoefficients spectral_weight(const KernelSpec& k, double omega_c, const std::vector<double>& omega);

// Ascending grid over the band, sinh-clustered on the peak with geometric
// spacing toward both edges.
std::vector<double> fano_grid(const KernelSpec& k, double omega_c, int points = 4000);

// Weak-dissipation reservoir correlations in the ground state of the whole
// system: <F_c' F_c(tau)>, <F_c F_c(tau)> and the cross term <F_x' F_c(tau)>.
struct GroundReservoirCorrelation {
    std::vector<double> tau;
    std::vector<cdouble> number, anomalous, cross;
};

GroundReservoirCorrelation ground_state_reservoir_correlation(const PolaritonBasis& basis, const KernelPair& k,
                                                              const std::vector<double>& tau);

} // namespace polariton
