#pragma once

#include <complex>
#include <vector>

#include "polariton/hopfield.hpp"

namespace polariton {

using cdouble = std::complex<double>;

enum class Channel { photonic = 0, excitonic = 1 };
// flat: density gamma/2pi on (0, cutoff). two_sided: the same density on
// (-cutoff, cutoff), which tends to a delta-correlated kernel as cutoff grows.
enum class KernelShape { flat, two_sided };

// Flat spectral density Gamma/2pi on (0, cutoff).
struct KernelSpec {
    Channel channel = Channel::photonic;
    KernelShape shape = KernelShape::flat;
    double gamma = 0;
    double cutoff = 1e3;
};

struct KernelPair {
    KernelSpec photonic{Channel::photonic};
    KernelSpec excitonic{Channel::excitonic};

    const KernelSpec& operator[](Channel c) const { return c == Channel::photonic ? photonic : excitonic; }
    static KernelPair flat(double gamma_c, double gamma_x, double cutoff)
    {
        return {{Channel::photonic, KernelShape::flat, gamma_c, cutoff},
                {Channel::excitonic, KernelShape::flat, gamma_x, cutoff}};
    }
};

void validate(const KernelSpec& k);

// Flat band of density gamma/2pi on (lo, hi).
struct Band {
    double gamma, lo, hi;
};
inline Band band_of(const KernelSpec& k)
{
    return {k.gamma, k.shape == KernelShape::flat ? 0.0 : -k.cutoff, k.cutoff};
}

// G(tau) = int dnu gamma/2pi exp(-i nu tau)
cdouble band_time(const Band& b, double tau);
// int_0^inf dtau exp(i w tau) G(tau); principal value at the band edges.
cdouble band_halfline(const Band& b, double w);
// int_0^inf ds exp(lambda s) G(s), continued to complex lambda off the band.
cdouble band_laplace(const Band& b, cdouble lambda);
// int_0^inf dtau exp(i w tau) int_0^inf ds G(tau + s) exp(lambda s)
cdouble band_double_transform(const Band& b, double w, cdouble lambda);

cdouble kernel_time(const KernelSpec& k, double tau);
// Throws SingularFrequency within 1e-9*cutoff of a band edge.
cdouble kernel_halfline_fourier(const KernelSpec& k, double w);
// Two-sided transform: gamma on the band, zero elsewhere.
double kernel_fullline_fourier(const KernelSpec& k, double w);
cdouble kernel_laplace(const KernelSpec& k, cdouble lambda);
cdouble kernel_double_transform(const KernelSpec& k, double w, cdouble lambda);

// coef * G_channel(s), or coef * conj(G_channel(s)).
struct KernelTerm {
    cdouble coef;
    Channel channel;
    bool conjugate;
};

// Sum of kernel terms on s > 0.
struct KernelSeries {
    std::vector<KernelTerm> terms;

    cdouble operator()(const KernelPair& k, double s) const;
    // int_0^inf ds exp(i w s) f(s)
    cdouble transform(const KernelPair& k, double w) const;
    KernelSeries conjugated() const;
    void add(const KernelSeries& o, cdouble scale = 1.0);
};

enum class ReservoirMode { vacuum, squeezed_ground };

// Free-field two-point functions of Phi = (F_c, F_x, F_c', F_x').
struct ReservoirCorrelations {
    ReservoirMode mode = ReservoirMode::vacuum;
    MomentMatrix moments;  // <s s'>; diag(1,1,0,0) for vacuum
    KernelPair kernels;

    // <Phi_alpha(sign*s) Phi_beta(0)> as a function of s > 0.
    KernelSeries elementary(int alpha, int beta, int sign) const;
    // <(u.Phi)(sign*s) (v.Phi)(0)>
    KernelSeries correlation(const Vector4c<double>& u, const Vector4c<double>& v, int sign) const;
    cdouble value(const Vector4c<double>& u, const Vector4c<double>& v, double tau) const;
};

ReservoirCorrelations vacuum_correlations(const KernelPair& k);
ReservoirCorrelations squeezed_ground_correlations(const PolaritonBasis& basis, const KernelPair& k);

// Coefficient vector of a single field component.
Vector4c<double> field_unit(int alpha);

// Correlations of F_j = w_j F_c + x_j F_x + y_j F_c' + z_j F_x'.
struct PolaritonCorrelations {
    ReservoirCorrelations corr;
    PolaritonBasis basis;

    Vector4c<double> field(int j, bool dagger) const
    {
        return dagger ? basis.creator(j) : basis.annihilator(j);
    }
    // <F_j^(dag)(sign*s) F_k^(dag)(0)>, s > 0
    KernelSeries correlation(int j, bool dag_j, int k, bool dag_k, int sign) const
    {
        return corr.correlation(field(j, dag_j), field(k, dag_k), sign);
    }
};

PolaritonCorrelations polariton_basis_correlations(const ReservoirCorrelations& corr,
                                                   const PolaritonBasis& basis);

} // namespace polariton
