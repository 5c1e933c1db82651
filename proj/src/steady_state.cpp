#include "polariton/master.hpp"

#include <cmath>

namespace polariton {

namespace {

using Eigen::MatrixXcd;

// Column-major vec(X r Y) = (Y^T kron X) vec(r), accumulated into a sub-block.
void add_kron(MatrixXcd& out, Eigen::Index row0, Eigen::Index col0, const MatrixXcd& yt, const MatrixXcd& x)
{
    for (Eigen::Index i = 0; i < yt.rows(); ++i)
        for (Eigen::Index j = 0; j < yt.cols(); ++j) {
            const std::complex<double> s = yt(i, j);
            if (s == 0.0) continue;
            out.block(row0 + i * x.rows(), col0 + j * x.cols(), x.rows(), x.cols()) += s * x;
        }
}

} // namespace

BlockOp steady_state(const Generator& g)
{
    const std::array<Eigen::Index, 2> off{0, Eigen::Index(g.dim[0]) * g.dim[0]};
    const Eigen::Index n = off[1] + Eigen::Index(g.dim[1]) * g.dim[1];
    MatrixXcd lmat = MatrixXcd::Zero(n, n);
    for (int s = 0; s < 2; ++s) {
        const int d = g.dim[s];
        const MatrixXcd id = MatrixXcd::Identity(d, d);
        add_kron(lmat, off[s], off[s], id, g.left.blk[s]);
        add_kron(lmat, off[s], off[s], g.right.blk[s].transpose(), id);
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r)
                lmat(off[s] + c * d + r, off[s] + c * d + r) +=
                    std::complex<double>(0, -(g.energy[s](r) - g.energy[s](c)));
    }
    for (const auto& [x, y] : g.sandwich) {
        // (x r y).blk[i] = x.blk[i] r.blk[i^1] y.blk[i^1] for odd x, y
        for (int i = 0; i < 2; ++i) {
            const int k = i ^ 1;
            add_kron(lmat, off[i], off[k], y.blk[k].transpose(), x.blk[i]);
        }
    }

    // Replace the first equation by the trace condition.
    lmat.row(0).setZero();
    for (int s = 0; s < 2; ++s)
        for (int r = 0; r < g.dim[s]; ++r) lmat(0, off[s] + r * g.dim[s] + r) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(0) = 1.0;

    const Eigen::PartialPivLU<MatrixXcd> lu(lmat);
    // Smallest singular value of the bordered system by inverse iteration on (A'A)^-1.
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(n).normalized();
    double inv_sq = 0;
    for (int it = 0; it < 30; ++it) {
        const Eigen::VectorXcd w = lu.adjoint().solve(lu.solve(v));
        const double nrm = w.norm();
        if (!std::isfinite(nrm)) {
            inv_sq = INFINITY;
            break;
        }
        const double change = std::abs(nrm - inv_sq) / nrm;
        inv_sq = nrm;
        v = w / nrm;
        if (change < 1e-6) break;
    }
    const double sigma_min = 1 / std::sqrt(inv_sq);
    if (!(sigma_min >= 1e-10))
        throw DegenerateSteadyState("bordered generator is singular (sigma_min = " + std::to_string(sigma_min) + ")");

    const Eigen::VectorXcd x = lu.solve(rhs);
    BlockOp rho = BlockOp::zero(g.dim, 0);
    for (int s = 0; s < 2; ++s)
        rho.blk[s] = Eigen::Map<const MatrixXcd>(x.data() + off[s], g.dim[s], g.dim[s]);
    rho = 0.5 * (rho + adjoint(rho));
    rho *= 1.0 / trace(rho).real();
    return rho;
}

} // namespace polariton
