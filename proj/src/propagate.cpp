#include "polariton/master.hpp"

#include <cmath>
#include <numbers>

namespace polariton {

namespace {

// Elementwise exp(-i (E_m - E_n) h) for even operators.
BlockOp free_phase(const Generator& g, double h)
{
    BlockOp f = BlockOp::zero(g.dim, 0);
    for (int i = 0; i < 2; ++i)
        for (Eigen::Index c = 0; c < f.blk[i].cols(); ++c)
            for (Eigen::Index m = 0; m < f.blk[i].rows(); ++m)
                f.blk[i](m, c) = std::exp(std::complex<double>(0, -(g.energy[i](m) - g.energy[i](c)) * h));
    return f;
}

BlockOp hadamard(const BlockOp& f, const BlockOp& x)
{
    BlockOp out;
    out.parity = x.parity;
    for (int i = 0; i < 2; ++i) out.blk[i] = f.blk[i].cwiseProduct(x.blk[i]);
    return out;
}

} // namespace

Observables observe(const FockModel& m, const BlockOp& rho)
{
    return {m.expectation(rho, m.n_lower), m.expectation(rho, m.n_upper), m.expectation(rho, m.n_photon),
            m.expectation(rho, m.n_excitation)};
}

Trajectory propagate(const FockModel& model, const Generator& gen, const BlockOp& rho0, const PropagationOptions& opt)
{
    if (!(opt.dt > 0) || !(opt.t_end >= 0) || opt.output_stride < 1)
        throw InvalidParams("propagation needs dt > 0, t_end >= 0 and output_stride >= 1");
    const long steps = std::lround(opt.t_end / opt.dt);
    if (std::abs(steps * opt.dt - opt.t_end) > 1e-9 * std::max(1.0, opt.t_end))
        throw InvalidParams("t_end must be a whole number of steps");
    if (rho0.parity != 0) throw InvalidParams("density operator must be even");

    const double unit = 2 * std::numbers::pi / model.params.omega_c;
    const double h = opt.dt * unit;
    const BlockOp e1 = free_phase(gen, h);
    const BlockOp eh = free_phase(gen, h / 2);

    Trajectory tr;
    BlockOp y = rho0;
    auto record = [&](long n) {
        tr.t.push_back(n * opt.dt);
        tr.obs.push_back(observe(model, y));
        if (opt.keep_states) tr.states.push_back(y);
    };
    record(0);
    std::complex<double> tr_prev = trace(y);
    for (long n = 1; n <= steps; ++n) {
        const BlockOp k1 = gen.dissipator(y);
        const BlockOp k2 = gen.dissipator(hadamard(eh, y + (h / 2) * k1));
        const BlockOp ey = hadamard(eh, y);
        const BlockOp k3 = gen.dissipator(ey + (h / 2) * k2);
        const BlockOp k4 = gen.dissipator(hadamard(e1, y) + h * hadamard(eh, k3));
        y = hadamard(e1, y + (h / 6) * k1) + (h / 6) * (2.0 * hadamard(eh, k2 + k3) + k4);
        const std::complex<double> tr_now = trace(y);
        if (!std::isfinite(tr_now.real()) || std::abs(tr_now - tr_prev) > 1e-6)
            throw StepUnstable("trace moved by " + std::to_string(std::abs(tr_now - tr_prev)) + " at step " +
                               std::to_string(n));
        tr_prev = tr_now;
        if (n % opt.output_stride == 0 || n == steps) record(n);
    }
    tr.final_state = y;
    return tr;
}

} // namespace polariton
