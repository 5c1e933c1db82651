#pragma once

#include <map>
#include <memory>
#include <vector>

#include "polariton/regression.hpp"
#include "polariton/spectrum.hpp"

namespace polariton {

// One term of a function on s > 0, kept in a form whose one-sided Fourier
// transform is closed:
//   exponential: exp(rate s)
//   kernel:      G(s)
//   memory:      int_0^inf dsigma G(s + sigma) exp(rate sigma)
// optionally complex-conjugated, times amp.
struct HalfLineTerm {
    enum Kind { exponential, kernel, memory };
    std::complex<double> amp;
    Kind kind;
    std::complex<double> rate;
    Channel channel = Channel::photonic;
    bool conj = false;
};

struct HalfLineSeries {
    std::vector<HalfLineTerm> terms;

    // int_0^inf ds exp(i w s) f(s)
    std::complex<double> transform(const KernelPair& k, double w) const;
    HalfLineSeries conjugated() const;
    void add(const HalfLineSeries& o, std::complex<double> scale = 1.0);
    void add_exponentials(const ExponentialSeries& e, std::complex<double> scale = 1.0);
    void add_kernels(const KernelSeries& k, std::complex<double> scale = 1.0);
};

struct DetectionOptions {
    int krylov_dim = 160;
    // Drop the memory cross terms between system and free field (the
    // time-local approximation); used for limit comparisons.
    bool cross_terms = true;
    double stationarity_tol = 1e-6;
};

// Stationary ordered correlations of the ring-cavity output field
// F_out = F_c + (G_c * a), with every operator split into lowering and
// raising parts in the polariton basis before normal and time ordering.
// The parts F_cl, F_cr of the photonic free field are the noise terms of the
// Langevin equations of a_l, a_r with kernel G_c; their self-correlations
// carry the reservoir moments of a_l, a_r.
class OutputDetection {
public:
    OutputDetection(const FockModel& model, const Generator& gen, const BlockOp& rho_ss,
                    const ReservoirCorrelations& corr, DetectionOptions opt = {});

    // Half-line pieces f(s) = <:X(t + s) Y(t):> and g(s) = <:X(t - s) Y(t):>.
    struct Pair {
        HalfLineSeries later, earlier;
        std::complex<double> spectrum(const KernelPair& k, double w) const
        {
            return later.transform(k, w) + earlier.transform(k, -w);
        }
    };
    enum Operand { field, field_dag, cavity, cavity_dag };
    // Ordered correlation of two operands out of {F_c, F_c', a, a'}.
    Pair ordered(Operand x, Operand y) const;

    SpectralResult spectrum(const std::vector<double>& omega) const;

private:
    // A system operator, or a photonic free-field part F[s] (daggered or not)
    // that enters the Langevin equation of its system operator s.
    struct Part {
        bool system;
        bool lowering;
        bool dag = false;
        BlockOp op;              // the system operator, or s for F[s]
        Vector4c<double> coef;   // s on (a, b, a', b'), field parts only
    };
    std::vector<Part> parts(Operand o) const;
    static Part dagger(const Part& p);
    KernelSeries field_field(const Part& x, const Part& y, int sign) const;

    const AdjointKrylov& krylov(const BlockOp& s) const;
    HalfLineSeries later_left(const Part& a, const Part& b) const;   // <A(t+s) B(t)>
    HalfLineSeries later_right(const Part& a, const Part& b) const;  // <B(t) A(t+s)>
    HalfLineSeries sys_field(const BlockOp& s, const BlockOp& source, bool later_left) const;
    HalfLineSeries field_sys(const BlockOp& s, const BlockOp& source, bool later_left) const;

    const FockModel& model_;
    const Generator& gen_;
    BlockOp rho_;
    ReservoirCorrelations corr_;
    DetectionOptions opt_;
    BlockOp drho_;  // Ldiss[rho]
    mutable std::vector<std::pair<BlockOp, std::unique_ptr<AdjointKrylov>>> cache_;
};

// Throws NotStationary when |L[rho_ss]| exceeds the tolerance.
SpectralResult output_detection_spectrum(const FockModel& model, const Generator& gen, const BlockOp& rho_ss,
                                         const ReservoirCorrelations& corr, const std::vector<double>& omega,
                                         DetectionOptions opt = {});

} // namespace polariton
