#include "polariton/regression.hpp"

#include <cmath>
#include <numbers>

namespace polariton {

namespace {

using cd = std::complex<double>;

BlockOp phase(const Generator& g, int parity, double h)
{
    BlockOp f = BlockOp::zero(g.dim, parity);
    for (int i = 0; i < 2; ++i) {
        const int j = i ^ parity;
        for (Eigen::Index c = 0; c < f.blk[i].cols(); ++c)
            for (Eigen::Index m = 0; m < f.blk[i].rows(); ++m)
                f.blk[i](m, c) = std::exp(cd(0, -(g.energy[i](m) - g.energy[j](c)) * h));
    }
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

cd ExponentialSeries::operator()(double s) const
{
    cd acc = 0;
    for (size_t k = 0; k < coef.size(); ++k) acc += coef[k] * std::exp(rate[k] * s);
    return acc;
}

cd ExponentialSeries::transform(double w) const
{
    cd acc = 0;
    for (size_t k = 0; k < coef.size(); ++k) acc -= coef[k] / (cd(0, w) + rate[k]);
    return acc;
}

AdjointKrylov::AdjointKrylov(const Generator& gen, const BlockOp& observable, int max_dim, double tol)
{
    const double norm0 = std::sqrt(inner(observable, observable).real());
    if (norm0 == 0) return;
    basis_.push_back((1.0 / norm0) * observable);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(max_dim + 1, max_dim);
    int m = 0;
    double hmax = 0;
    for (; m < max_dim; ++m) {
        BlockOp w = gen.dual(basis_[m]);
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= m; ++i) {
                const cd c = inner(basis_[i], w);
                h(i, m) += c;
                w -= c * basis_[i];
            }
        const double beta = std::sqrt(inner(w, w).real());
        h(m + 1, m) = beta;
        for (int i = 0; i <= m + 1; ++i) hmax = std::max(hmax, std::abs(h(i, m)));
        residual_ = beta;
        if (beta <= tol * hmax || m + 1 == max_dim) {
            ++m;
            break;
        }
        basis_.push_back((1.0 / beta) * w);
    }
    basis_.resize(m);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.topLeftCorner(m, m));
    rates_ = es.eigenvalues();
    right_ = es.eigenvectors();
    Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(m);
    e1(0) = norm0;
    weight_ = right_.partialPivLu().solve(e1);
}

ExponentialSeries AdjointKrylov::correlation(const BlockOp& x) const
{
    ExponentialSeries out;
    if (basis_.empty()) return out;
    const int m = dimension();
    Eigen::VectorXcd t(m);
    for (int i = 0; i < m; ++i) t(i) = trace_product(basis_[i], x);
    const Eigen::VectorXcd proj = right_.transpose() * t;
    for (int k = 0; k < m; ++k) {
        out.coef.push_back(proj(k) * weight_(k));
        out.rate.push_back(rates_(k));
    }
    return out;
}

ExponentialSeries regression_series(const Generator& gen, const BlockOp& rho, const BlockOp& o1, const BlockOp& o2,
                                    Order order, int max_dim)
{
    if (order == Order::later_left) return AdjointKrylov(gen, o1, max_dim).correlation(o2 * rho);
    return AdjointKrylov(gen, o2, max_dim).correlation(rho * o1);
}

std::vector<cd> regression_correlation(const FockModel& model, const Generator& gen, const BlockOp& rho,
                                       const BlockOp& o1, const BlockOp& o2, const std::vector<double>& tau,
                                       Order order, double max_dt)
{
    std::vector<cd> out;
    if (tau.empty()) return out;
    if (tau.front() != 0.0) throw InvalidParams("tau grid must start at 0");
    const double spacing = tau.size() > 1 ? tau[1] - tau[0] : 0.0;
    for (size_t k = 1; k < tau.size(); ++k)
        if (std::abs(tau[k] - k * spacing) > 1e-9 * std::max(1.0, tau.back()))
            throw InvalidParams("tau grid must be uniform");

    const BlockOp& obs = order == Order::later_left ? o1 : o2;
    BlockOp x = order == Order::later_left ? o2 * rho : rho * o1;
    out.push_back(trace_product(obs, x));
    if (tau.size() == 1) return out;

    const int sub = std::max(1, int(std::ceil(spacing / max_dt - 1e-12)));
    const double h = spacing / sub * 2 * std::numbers::pi / model.params.omega_c;
    const BlockOp e1 = phase(gen, x.parity, h);
    const BlockOp eh = phase(gen, x.parity, h / 2);
    for (size_t k = 1; k < tau.size(); ++k) {
        for (int s = 0; s < sub; ++s) {
            const BlockOp k1 = gen.dissipator(x);
            const BlockOp k2 = gen.dissipator(hadamard(eh, x + (h / 2) * k1));
            const BlockOp k3 = gen.dissipator(hadamard(eh, x) + (h / 2) * k2);
            const BlockOp k4 = gen.dissipator(hadamard(e1, x) + h * hadamard(eh, k3));
            x = hadamard(e1, x + (h / 6) * k1) + (h / 6) * (2.0 * hadamard(eh, k2 + k3) + k4);
        }
        out.push_back(trace_product(obs, x));
    }
    return out;
}

} // namespace polariton
