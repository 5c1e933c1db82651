#include "polariton/fock.hpp"

#include <string>

namespace polariton {

namespace {

using Eigen::MatrixXcd;

MatrixXcd lowering(int n)
{
    MatrixXcd m = MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(double(k));
    return m;
}

MatrixXcd kron(const MatrixXcd& x, const MatrixXcd& y)
{
    MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

} // namespace

void validate(const FockConfig& c)
{
    if (c.n_a < 2 || c.n_b < 2) throw InvalidParams("Fock cutoffs must be >= 2");
    if (c.n_a * c.n_b > kMaxFockStates)
        throw InvalidParams("n_a * n_b = " + std::to_string(c.n_a * c.n_b) + " exceeds the budget of " +
                            std::to_string(kMaxFockStates));
}

ModeOperators build_mode_operators(const SystemParams& params, const PolaritonBasis& basis, const FockConfig& config)
{
    validate(config);
    validate(params);
    ModeOperators m;
    m.config = config;
    const MatrixXcd ia = MatrixXcd::Identity(config.n_a, config.n_a);
    const MatrixXcd ib = MatrixXcd::Identity(config.n_b, config.n_b);
    const MatrixXcd first = kron(lowering(config.n_a), ib);
    const MatrixXcd second = kron(ia, lowering(config.n_b));
    const std::complex<double> i(0, 1);

    if (config.basis == FockBasis::bare) {
        m.a = first;
        m.b = second;
        m.ad = m.a.adjoint();
        m.bd = m.b.adjoint();
        const MatrixXcd qa = m.a + m.ad;
        m.h0 = params.omega_c * m.ad * m.a + params.omega_x * m.bd * m.b + i * params.rabi * qa * (m.b - m.bd) +
               params.diamag * qa * qa;
        for (int j = 0; j < 2; ++j)
            m.p[j] = basis[j].w * m.a + basis[j].x * m.b + basis[j].y * m.ad + basis[j].z * m.bd;
    } else {
        m.p[0] = first;
        m.p[1] = second;
        m.h0 = basis[kLower].omega * m.p[0].adjoint() * m.p[0] + basis[kUpper].omega * m.p[1].adjoint() * m.p[1];
        const Matrix4c<double> t = basis.inverse();
        const std::array<MatrixXcd, 4> pv{m.p[0], m.p[1], MatrixXcd(m.p[0].adjoint()), MatrixXcd(m.p[1].adjoint())};
        m.a = MatrixXcd::Zero(first.rows(), first.cols());
        m.b = m.a;
        for (int k = 0; k < 4; ++k) {
            m.a += t(0, k) * pv[k];
            m.b += t(1, k) * pv[k];
        }
        m.ad = m.a.adjoint();
        m.bd = m.b.adjoint();
    }
    return m;
}

BlockOp BlockOp::zero(const std::array<int, 2>& dim, int parity)
{
    BlockOp z;
    z.parity = parity;
    for (int i = 0; i < 2; ++i) z.blk[i] = MatrixXcd::Zero(dim[i], dim[i ^ parity]);
    return z;
}

double BlockOp::max_abs() const
{
    double m = 0;
    for (const auto& b : blk)
        if (b.size()) m = std::max(m, b.cwiseAbs().maxCoeff());
    return m;
}

BlockOp& BlockOp::operator+=(const BlockOp& o)
{
    for (int i = 0; i < 2; ++i) blk[i] += o.blk[i];
    return *this;
}

BlockOp& BlockOp::operator-=(const BlockOp& o)
{
    for (int i = 0; i < 2; ++i) blk[i] -= o.blk[i];
    return *this;
}

BlockOp& BlockOp::operator*=(std::complex<double> s)
{
    for (auto& b : blk) b *= s;
    return *this;
}

BlockOp operator*(const BlockOp& x, const BlockOp& y)
{
    BlockOp out;
    out.parity = x.parity ^ y.parity;
    for (int i = 0; i < 2; ++i) out.blk[i].noalias() = x.blk[i] * y.blk[i ^ x.parity];
    return out;
}

BlockOp operator+(BlockOp x, const BlockOp& y) { return x += y; }
BlockOp operator-(BlockOp x, const BlockOp& y) { return x -= y; }
BlockOp operator*(std::complex<double> s, BlockOp x) { return x *= s; }

BlockOp adjoint(const BlockOp& x)
{
    BlockOp out;
    out.parity = x.parity;
    for (int i = 0; i < 2; ++i) out.blk[i] = x.blk[i ^ x.parity].adjoint();
    return out;
}

std::complex<double> trace(const BlockOp& x)
{
    if (x.parity) return 0.0;
    return x.blk[0].trace() + x.blk[1].trace();
}

std::complex<double> trace_product(const BlockOp& x, const BlockOp& y)
{
    if (x.parity != y.parity) return 0.0;
    std::complex<double> s = 0;
    for (int i = 0; i < 2; ++i) s += x.blk[i].cwiseProduct(y.blk[i ^ x.parity].transpose()).sum();
    return s;
}

std::complex<double> inner(const BlockOp& x, const BlockOp& y)
{
    if (x.parity != y.parity) return 0.0;
    std::complex<double> s = 0;
    for (int i = 0; i < 2; ++i) s += x.blk[i].conjugate().cwiseProduct(y.blk[i]).sum();
    return s;
}

int FockModel::parity_of(int product_index) const
{
    return (product_index / config.n_b + product_index % config.n_b) & 1;
}

BlockOp FockModel::to_eigen(const MatrixXcd& op, int parity) const
{
    BlockOp out;
    out.parity = parity;
    for (int i = 0; i < 2; ++i) {
        const int j = i ^ parity;
        out.blk[i] = vectors[i].adjoint() * op(members[i], members[j]) * vectors[j];
    }
    return out;
}

MatrixXcd FockModel::to_product(const BlockOp& op) const
{
    const int n = dim[0] + dim[1];
    MatrixXcd out = MatrixXcd::Zero(n, n);
    for (int i = 0; i < 2; ++i) {
        const int j = i ^ op.parity;
        out(members[i], members[j]) = vectors[i] * op.blk[i] * vectors[j].adjoint();
    }
    return out;
}

BlockOp FockModel::pure_state(const Eigen::VectorXcd& psi) const
{
    const double w0 = psi(members[0]).squaredNorm();
    const double w1 = psi(members[1]).squaredNorm();
    if (w0 > 1e-24 && w1 > 1e-24) throw InvalidParams("state has no definite number parity");
    const int s = w0 >= w1 ? 0 : 1;
    const Eigen::VectorXcd c = vectors[s].adjoint() * psi(members[s]) / std::sqrt(s ? w1 : w0);
    BlockOp rho = BlockOp::zero(dim, 0);
    rho.blk[s] = c * c.adjoint();
    return rho;
}

BlockOp FockModel::ground_state() const
{
    BlockOp rho = BlockOp::zero(dim, 0);
    rho.blk[0](0, 0) = 1.0;
    return rho;
}

BlockOp FockModel::bare_vacuum() const
{
    const MatrixXcd number = ops.ad * ops.a + ops.bd * ops.b;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(number(members[0], members[0]));
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim[0] + dim[1]);
    psi(members[0]) = es.eigenvectors().col(0);
    return pure_state(psi);
}

BlockOp FockModel::product_state(int i, int j) const
{
    if (i < 0 || j < 0 || i >= config.n_a || j >= config.n_b) throw InvalidParams("Fock state outside the truncation");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim[0] + dim[1]);
    psi(i * config.n_b + j) = 1.0;
    return pure_state(psi);
}

FockModel build_fock_model(const SystemParams& params, const FockConfig& config)
{
    FockModel m;
    m.params = params;
    m.basis = diagonalize_polaritons(params);
    m.config = config;
    m.ops = build_mode_operators(params, m.basis, config);

    const int n = config.n_a * config.n_b;
    std::array<std::vector<int>, 2> idx;
    for (int k = 0; k < n; ++k) idx[m.parity_of(k)].push_back(k);
    for (int s = 0; s < 2; ++s) {
        m.dim[s] = int(idx[s].size());
        m.members[s] = Eigen::Map<Eigen::VectorXi>(idx[s].data(), m.dim[s]);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m.ops.h0(m.members[s], m.members[s]));
        m.energy[s] = es.eigenvalues();
        m.vectors[s] = es.eigenvectors();
    }

    m.a = m.to_eigen(m.ops.a, 1);
    m.b = m.to_eigen(m.ops.b, 1);
    for (int j = 0; j < 2; ++j) m.p[j] = m.to_eigen(m.ops.p[j], 1);
    m.n_lower = m.to_eigen(m.ops.p[0].adjoint() * m.ops.p[0], 0);
    m.n_upper = m.to_eigen(m.ops.p[1].adjoint() * m.ops.p[1], 0);
    m.n_photon = m.to_eigen(m.ops.ad * m.ops.a, 0);
    m.n_excitation = m.to_eigen(m.ops.bd * m.ops.b, 0);
    return m;
}

} // namespace polariton
