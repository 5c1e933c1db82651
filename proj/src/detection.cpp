#include "polariton/detection.hpp"

#include <algorithm>
#include <cmath>

namespace polariton {

namespace {

using cd = std::complex<double>;

double hs_norm(const BlockOp& x) { return std::sqrt(inner(x, x).real()); }

} // namespace

cd HalfLineSeries::transform(const KernelPair& k, double w) const
{
    cd acc = 0;
    for (const auto& t : terms) {
        if (t.amp == 0.0) continue;
        const double nu = t.conj ? -w : w;
        cd base;
        switch (t.kind) {
        case HalfLineTerm::exponential: base = -1.0 / (cd(0, nu) + t.rate); break;
        case HalfLineTerm::kernel: base = kernel_halfline_fourier(k[t.channel], nu); break;
        case HalfLineTerm::memory: base = kernel_double_transform(k[t.channel], nu, t.rate); break;
        }
        acc += t.amp * (t.conj ? std::conj(base) : base);
    }
    return acc;
}

HalfLineSeries HalfLineSeries::conjugated() const
{
    HalfLineSeries out = *this;
    for (auto& t : out.terms) {
        t.amp = std::conj(t.amp);
        t.conj = !t.conj;
    }
    return out;
}

void HalfLineSeries::add(const HalfLineSeries& o, cd scale)
{
    if (scale == 0.0) return;
    for (auto t : o.terms) {
        t.amp *= scale;
        terms.push_back(t);
    }
}

void HalfLineSeries::add_exponentials(const ExponentialSeries& e, cd scale)
{
    if (scale == 0.0) return;
    for (size_t k = 0; k < e.coef.size(); ++k)
        terms.push_back({scale * e.coef[k], HalfLineTerm::exponential, e.rate[k]});
}

void HalfLineSeries::add_kernels(const KernelSeries& k, cd scale)
{
    if (scale == 0.0) return;
    for (const auto& t : k.terms)
        terms.push_back({scale * t.coef, HalfLineTerm::kernel, 0.0, t.channel, t.conjugate});
}

OutputDetection::OutputDetection(const FockModel& model, const Generator& gen, const BlockOp& rho_ss,
                                 const ReservoirCorrelations& corr, DetectionOptions opt)
    : model_(model), gen_(gen), rho_(rho_ss), corr_(corr), opt_(opt)
{
    const double residual = hs_norm(gen(rho_ss));
    if (!(residual <= opt.stationarity_tol))
        throw NotStationary("generator applied to the state has norm " + std::to_string(residual));
    drho_ = gen.dissipator(rho_);
}

OutputDetection::Part OutputDetection::dagger(const Part& p)
{
    Part d = p;
    d.lowering = !p.lowering;
    if (p.system) d.op = adjoint(p.op);
    else d.dag = !p.dag;
    return d;
}

std::vector<OutputDetection::Part> OutputDetection::parts(Operand o) const
{
    const auto& basis = model_.basis;
    const BlockOp lo = std::conj(basis[0].w) * model_.p[0] + std::conj(basis[1].w) * model_.p[1];
    const BlockOp hi = (-basis[0].y) * adjoint(model_.p[0]) + (-basis[1].y) * adjoint(model_.p[1]);
    const Vector4c<double> lo_coef =
        std::conj(basis[0].w) * basis.annihilator(0) + std::conj(basis[1].w) * basis.annihilator(1);
    const Vector4c<double> hi_coef = -basis[0].y * basis.creator(0) - basis[1].y * basis.creator(1);
    const bool sys = o == cavity || o == cavity_dag;
    std::vector<Part> out{{sys, true, false, lo, lo_coef}, {sys, false, false, hi, hi_coef}};
    if (o == cavity_dag || o == field_dag)
        for (auto& p : out) p = dagger(p);
    return out;
}

const AdjointKrylov& OutputDetection::krylov(const BlockOp& s) const
{
    for (const auto& [key, k] : cache_)
        if (key.parity == s.parity && (key - s).max_abs() == 0.0) return *k;
    cache_.emplace_back(s, std::make_unique<AdjointKrylov>(gen_, s, opt_.krylov_dim));
    return *cache_.back().second;
}

// <X(sign s) Y(0)> for free-field parts, s > 0.
KernelSeries OutputDetection::field_field(const Part& x, const Part& y, int sign) const
{
    auto coef = [](const Part& p) {
        Vector4c<double> c = p.coef;
        if (p.dag)
            for (int a = 0; a < 4; ++a) c(a) = std::conj(p.coef(a ^ 2));
        return c;
    };
    const Vector4c<double> cx = coef(x), cy = coef(y);
    cdouble m = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m += cx(a) * cy(b) * corr_.moments.product(a, b);
    const bool conj = x.dag == y.dag ? x.dag : (x.dag != (sign < 0));
    return KernelSeries{{{m, Channel::photonic, conj}}};
}

// <S(t+s) F[source](t)> (later_left) or <F[source](t) S(t+s)>.
HalfLineSeries OutputDetection::sys_field(const BlockOp& s, const BlockOp& source, bool later_left) const
{
    const auto& kr = krylov(s);
    const KernelSpec& k = corr_.kernels.photonic;
    const ExponentialSeries past = kr.correlation(later_left ? source * rho_ : rho_ * source);
    HalfLineSeries out;
    for (size_t i = 0; i < past.coef.size(); ++i)
        out.terms.push_back({-past.coef[i] * kernel_laplace(k, past.rate[i]), HalfLineTerm::exponential, past.rate[i]});
    const BlockOp defect = later_left ? source * drho_ - gen_.dissipator(source * rho_)
                                      : drho_ * source - gen_.dissipator(rho_ * source);
    out.add_exponentials(kr.correlation(defect), -1.0);
    return out;
}

// <F[source](t+s) S(t)> (later_left) or <S(t) F[source](t+s)>.
HalfLineSeries OutputDetection::field_sys(const BlockOp& s, const BlockOp& source, bool later_left) const
{
    HalfLineSeries out;
    if (!opt_.cross_terms) return out;
    const ExponentialSeries past = krylov(s).correlation(later_left ? rho_ * source : source * rho_);
    for (size_t i = 0; i < past.coef.size(); ++i)
        out.terms.push_back({-past.coef[i], HalfLineTerm::memory, past.rate[i], Channel::photonic, false});
    return out;
}

HalfLineSeries OutputDetection::later_left(const Part& a, const Part& b) const
{
    HalfLineSeries out;
    if (a.system && b.system) {
        out.add_exponentials(krylov(a.op).correlation(b.op * rho_));
    } else if (!a.system && !b.system) {
        out.add_kernels(field_field(a, b, +1));
    } else if (a.system) {
        out = b.dag ? sys_field(adjoint(a.op), b.op, false).conjugated() : sys_field(a.op, b.op, true);
    } else {
        out = a.dag ? field_sys(adjoint(b.op), a.op, false).conjugated() : field_sys(b.op, a.op, true);
    }
    return out;
}

HalfLineSeries OutputDetection::later_right(const Part& a, const Part& b) const
{
    HalfLineSeries out;
    if (a.system && b.system) {
        out.add_exponentials(krylov(a.op).correlation(rho_ * b.op));
    } else if (!a.system && !b.system) {
        out.add_kernels(field_field(b, a, -1));
    } else if (a.system) {
        out = b.dag ? sys_field(adjoint(a.op), b.op, true).conjugated() : sys_field(a.op, b.op, false);
    } else {
        out = a.dag ? field_sys(adjoint(b.op), a.op, true).conjugated() : field_sys(b.op, a.op, false);
    }
    return out;
}

OutputDetection::Pair OutputDetection::ordered(Operand x, Operand y) const
{
    Pair out;
    const auto px = parts(x), py = parts(y);
    for (const auto& a : px)
        for (const auto& b : py) {
            out.later.add(b.lowering ? later_left(a, b) : later_right(a, b));
            out.earlier.add(a.lowering ? later_left(b, a) : later_right(b, a));
        }
    return out;
}

SpectralResult OutputDetection::spectrum(const std::vector<double>& omega) const
{
    const Pair ff = ordered(field, field_dag), af = ordered(cavity, field_dag), fa = ordered(field, cavity_dag),
               aa = ordered(cavity, cavity_dag);
    const Pair gg = ordered(field, field), ag = ordered(cavity, field), ga = ordered(field, cavity),
               a2 = ordered(cavity, cavity);
    const KernelPair& k = corr_.kernels;
    SpectralResult out;
    out.omega = omega;
    for (double w : omega) {
        const double gp = kernel_fullline_fourier(k.photonic, w);
        const double gm = kernel_fullline_fourier(k.photonic, -w);
        out.normal.push_back(ff.spectrum(k, w) + gp * af.spectrum(k, w) + gp * fa.spectrum(k, w) +
                             gp * gp * aa.spectrum(k, w));
        out.anomalous.push_back(gg.spectrum(k, w) + gp * ag.spectrum(k, w) + gm * ga.spectrum(k, w) +
                                gp * gm * a2.spectrum(k, w));
    }
    return out;
}

SpectralResult output_detection_spectrum(const FockModel& model, const Generator& gen, const BlockOp& rho_ss,
                                         const ReservoirCorrelations& corr, const std::vector<double>& omega,
                                         DetectionOptions opt)
{
    return OutputDetection(model, gen, rho_ss, corr, opt).spectrum(omega);
}

} // namespace polariton
