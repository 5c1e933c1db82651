#include "polariton/master.hpp"

#include <cmath>

namespace polariton {

namespace {

using Eigen::MatrixXcd;

// Weights of one kernel channel over every odd matrix element, evaluated at
// nu = -(E_m - E_n): plain[m,n] = G(nu), conj[m,n] = conj G(-nu).
struct BohrTables {
    std::array<std::array<BlockOp, 2>, 2> table;  // [channel][conjugate]
    BlockOp mask;                                 // 1 where some operator is non-negligible
};

BohrTables bohr_tables(const FockModel& m, const KernelPair& kernels)
{
    BohrTables t;
    t.mask = BlockOp::zero(m.dim, 1);
    const std::array<BlockOp, 4> ops{m.p[0], m.p[1], adjoint(m.p[0]), adjoint(m.p[1])};
    double scale = 0;
    for (const auto& o : ops) scale = std::max(scale, o.max_abs());
    for (int c = 0; c < 2; ++c)
        for (int s = 0; s < 2; ++s) t.table[c][s] = BlockOp::zero(m.dim, 1);

    for (int i = 0; i < 2; ++i) {
        const int j = i ^ 1;
        for (int r = 0; r < m.dim[i]; ++r)
            for (int col = 0; col < m.dim[j]; ++col) {
                double mag = 0;
                for (const auto& o : ops) mag = std::max(mag, std::abs(o.blk[i](r, col)));
                if (mag <= 1e-13 * scale) continue;
                t.mask.blk[i](r, col) = 1.0;
                const double nu = -(m.energy[i](r) - m.energy[j](col));
                for (int c = 0; c < 2; ++c) {
                    const KernelSpec& k = kernels[Channel(c)];
                    if (k.gamma == 0) continue;
                    if (std::abs(nu) > k.cutoff)
                        throw TruncationWarning("Bohr frequency " + std::to_string(nu) +
                                                " exceeds the kernel cutoff");
                    t.table[c][0].blk[i](r, col) = kernel_halfline_fourier(k, nu);
                    t.table[c][1].blk[i](r, col) = std::conj(kernel_halfline_fourier(k, -nu));
                }
            }
    }
    return t;
}

BlockOp filter(const BlockOp& op, const KernelSeries& series, const BohrTables& t)
{
    BlockOp weight = BlockOp::zero({int(op.blk[0].rows()), int(op.blk[1].rows())}, 1);
    for (const auto& term : series.terms) {
        if (term.coef == 0.0) continue;
        weight += term.coef * t.table[int(term.channel)][term.conjugate ? 1 : 0];
    }
    BlockOp out = op;
    for (int i = 0; i < 2; ++i) out.blk[i] = op.blk[i].cwiseProduct(weight.blk[i]).cwiseProduct(t.mask.blk[i]);
    return out;
}

// Correlation feeding block blk for output index j and operator index k.
KernelSeries block_series(const PolaritonCorrelations& pc, int blk, int j, int k)
{
    switch (blk) {
    case DL: return pc.correlation(j, false, k, true, +1);
    case DR: return pc.correlation(k, false, j, true, -1);
    case CL: return pc.correlation(j, true, k, false, +1);
    case CR: return pc.correlation(k, true, j, false, -1);
    case BL: return pc.correlation(j, false, k, false, +1);
    case BR: return pc.correlation(k, false, j, false, -1);
    case AL: return pc.correlation(j, true, k, true, +1);
    default: return pc.correlation(k, true, j, true, -1);
    }
}

std::array<bool, kBlocks> active_blocks(ReservoirMode mode)
{
    if (mode == ReservoirMode::vacuum) return {true, true, true, true, true, true, true, true};
    std::array<bool, kBlocks> a{};
    a[DL] = a[DR] = a[BR] = a[AL] = true;
    return a;
}

void scale_phase(BlockOp& r, const std::array<Eigen::VectorXd, 2>& e, std::complex<double> f)
{
    for (int i = 0; i < 2; ++i) {
        const int j = i ^ r.parity;
        for (Eigen::Index c = 0; c < r.blk[i].cols(); ++c)
            for (Eigen::Index m = 0; m < r.blk[i].rows(); ++m) r.blk[i](m, c) *= f * (e[i](m) - e[j](c));
    }
}

} // namespace

BlockOp Generator::hamiltonian(const BlockOp& r) const
{
    BlockOp out = r;
    scale_phase(out, energy, {0, -1});
    return out;
}

BlockOp Generator::dissipator(const BlockOp& r) const
{
    BlockOp out = left * r;
    out += r * right;
    for (const auto& [x, y] : sandwich) out += x * (r * y);
    return out;
}

BlockOp Generator::dual_dissipator(const BlockOp& x) const
{
    BlockOp out = x * left;
    out += right * x;
    for (const auto& [l, r] : sandwich) out += r * (x * l);
    return out;
}

BlockOp Generator::dual(const BlockOp& x) const
{
    BlockOp out = x;
    scale_phase(out, energy, {0, 1});
    return out + dual_dissipator(x);
}

Generator assemble_generator(const FockModel& m, const DissipatorBlocks& b)
{
    Generator g;
    g.dim = m.dim;
    g.energy = m.energy;
    g.left = BlockOp::zero(m.dim, 0);
    g.right = BlockOp::zero(m.dim, 0);
    const auto& A = b.op;
    for (int j = 0; j < 2; ++j) {
        const BlockOp& p = m.p[j];
        const BlockOp pd = adjoint(p);
        auto on = [&](int blk) { return b.active[blk]; };
        if (on(DL)) g.left -= pd * A[DL][j];
        if (on(CL)) g.left -= p * A[CL][j];
        if (on(BL)) g.left += pd * A[BL][j];
        if (on(AL)) g.left += p * A[AL][j];
        if (on(DR)) g.right -= A[DR][j] * p;
        if (on(CR)) g.right -= A[CR][j] * pd;
        if (on(BR)) g.right += A[BR][j] * pd;
        if (on(AR)) g.right += A[AR][j] * p;

        auto diff = [&](int x, int y) {
            BlockOp d = BlockOp::zero(m.dim, 1);
            if (on(x)) d += A[x][j];
            if (on(y)) d -= A[y][j];
            return d;
        };
        if (on(DL) || on(BL)) g.sandwich.emplace_back(diff(DL, BL), pd);
        if (on(CL) || on(AL)) g.sandwich.emplace_back(diff(CL, AL), p);
        if (on(DR) || on(AR)) g.sandwich.emplace_back(p, diff(DR, AR));
        if (on(CR) || on(BR)) g.sandwich.emplace_back(pd, diff(CR, BR));
    }
    return g;
}

DissipatorBlocks filtered_blocks(const FockModel& m, const ReservoirCorrelations& corr)
{
    const PolaritonCorrelations pc = polariton_basis_correlations(corr, m.basis);
    const BohrTables tables = bohr_tables(m, corr.kernels);
    const std::array<BlockOp, 2> pd{adjoint(m.p[0]), adjoint(m.p[1])};
    DissipatorBlocks out;
    out.active = active_blocks(corr.mode);
    for (int blk = 0; blk < kBlocks; ++blk)
        for (int j = 0; j < 2; ++j) {
            BlockOp acc = BlockOp::zero(m.dim, 1);
            if (out.active[blk])
                for (int k = 0; k < 2; ++k)
                    acc += filter(block_uses_creator(blk) ? pd[k] : m.p[k], block_series(pc, blk, j, k), tables);
            out.op[blk][j] = std::move(acc);
        }
    return out;
}

Generator build_filtered_dissipator(const FockModel& m, const ReservoirCorrelations& corr)
{
    return assemble_generator(m, filtered_blocks(m, corr));
}

Eigen::Matrix2cd MarkovCoefficients::rates() const
{
    const Eigen::Matrix2cd& d = coef[DL];
    Eigen::Matrix2cd g;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) g(x, y) = d(y, x) + std::conj(d(x, y));
    return g;
}

Eigen::Matrix2cd MarkovCoefficients::pair_rates() const
{
    return -2.0 * coef[AL].transpose();
}

MarkovCoefficients markov_coefficients(const PolaritonBasis& basis, const ReservoirCorrelations& corr,
                                       MarkovForm form)
{
    MarkovCoefficients c;
    for (auto& m : c.coef) m.setZero();
    if (form == MarkovForm::rwa_lindblad) {
        c.active[DL] = c.active[DR] = true;
        for (int j = 0; j < 2; ++j) {
            const double rate = corr.kernels.photonic.gamma * std::norm(basis[j].w) +
                                corr.kernels.excitonic.gamma * std::norm(basis[j].x);
            c.coef[DL](j, j) = c.coef[DR](j, j) = rate / 2;
        }
        return c;
    }
    const PolaritonCorrelations pc = polariton_basis_correlations(corr, basis);
    c.active = active_blocks(corr.mode);
    for (int blk = 0; blk < kBlocks; ++blk) {
        if (!c.active[blk]) continue;
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const double nu = block_uses_creator(blk) ? -basis[k].omega : basis[k].omega;
                c.coef[blk](j, k) = block_series(pc, blk, j, k).transform(corr.kernels, nu);
            }
    }
    return c;
}

DissipatorBlocks markov_blocks(const FockModel& m, const MarkovCoefficients& c)
{
    const std::array<BlockOp, 2> pd{adjoint(m.p[0]), adjoint(m.p[1])};
    DissipatorBlocks out;
    out.active = c.active;
    for (int blk = 0; blk < kBlocks; ++blk)
        for (int j = 0; j < 2; ++j) {
            BlockOp acc = BlockOp::zero(m.dim, 1);
            for (int k = 0; k < 2; ++k)
                if (c.coef[blk](j, k) != 0.0) acc += c.coef[blk](j, k) * (block_uses_creator(blk) ? pd[k] : m.p[k]);
            out.op[blk][j] = std::move(acc);
        }
    return out;
}

Generator markov_generator(const FockModel& m, const ReservoirCorrelations& corr, MarkovForm form)
{
    return assemble_generator(m, markov_blocks(m, markov_coefficients(m.basis, corr, form)));
}

} // namespace polariton
