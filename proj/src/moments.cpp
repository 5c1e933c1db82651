#include "polariton/master.hpp"

#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace polariton {

namespace {

using cd = std::complex<double>;
using Vec4 = Vector4c<double>;
using Mat16 = Eigen::Matrix<cd, 16, 16>;

// [s_a, s_b] for s = (a, b, a', b')
double comm(int a, int b)
{
    if (b == (a ^ 2)) return a < 2 ? 1.0 : -1.0;
    return 0.0;
}

// P(a, b) = <s_a s_b>; vec index a * 4 + b
struct Quad {
    const Eigen::Matrix4cd& p;
    cd left(int a, const Vec4& y) const { return (p.row(a) * y)(0); }         // <s_a Y>
    cd right(int a, const Vec4& y) const { return (y.transpose() * p.col(a))(0); }  // <Y s_a>
};

enum class Form { y_rho_z, z_rho_y, z_y_rho, rho_y_z };  // [Y rho, Z], [Z, rho Y], [Z, Y rho], [rho Y, Z]

Eigen::Matrix4cd rate(const Eigen::Matrix4cd& p, Form f, const Vec4& y, const Vec4& z)
{
    Vec4 c;
    for (int a = 0; a < 4; ++a) {
        c(a) = 0;
        for (int g = 0; g < 4; ++g) c(a) += z(g) * comm(a, g);
    }
    const Quad q{p};
    Eigen::Matrix4cd out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            // [s_a s_b, Z] = c_b s_a + c_a s_b
            const cd oy = c(b) * q.left(a, y) + c(a) * q.left(b, y);   // <[O, Z] Y>
            const cd yo = c(b) * q.right(a, y) + c(a) * q.right(b, y); // <Y [O, Z]>
            switch (f) {
            case Form::y_rho_z: out(a, b) = -oy; break;
            case Form::z_rho_y: out(a, b) = yo; break;
            case Form::z_y_rho: out(a, b) = oy; break;
            case Form::rho_y_z: out(a, b) = -yo; break;
            }
        }
    return out;
}

Eigen::Matrix4cd to_products(const MomentMatrix& m)
{
    Eigen::Matrix4cd p;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) p(a, b) = m.product(a, b);
    return p;
}

MomentMatrix from_products(const Eigen::Matrix4cd& p)
{
    MomentMatrix m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m.k(a, b ^ 2) = p(a, b);
    return m;
}

} // namespace

Mat16 moment_generator(const SystemParams& params, const PolaritonBasis& basis, const MarkovCoefficients& c)
{
    const Eigen::Matrix4cd q = bogoliubov_matrix(params).transpose();
    const cd i(0, 1);
    std::array<Vec4, 2> ann{basis.annihilator(0), basis.annihilator(1)};
    std::array<Vec4, 2> cre{basis.creator(0), basis.creator(1)};

    // Block -> (form, Z is p_j', Y built from p_k' ?)
    struct Spec {
        Form form;
        bool z_creator;
    };
    std::array<Spec, kBlocks> spec{};
    spec[DL] = {Form::y_rho_z, true};
    spec[DR] = {Form::z_rho_y, false};
    spec[CL] = {Form::y_rho_z, false};
    spec[CR] = {Form::z_rho_y, true};
    spec[BL] = {Form::z_y_rho, true};
    spec[BR] = {Form::rho_y_z, true};
    spec[AL] = {Form::z_y_rho, false};
    spec[AR] = {Form::rho_y_z, false};

    Mat16 gen;
    for (int col = 0; col < 16; ++col) {
        Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
        p(col / 4, col % 4) = 1.0;
        Eigen::Matrix4cd d = -i * (q * p + p * q.transpose());
        for (int blk = 0; blk < kBlocks; ++blk) {
            if (!c.active[blk]) continue;
            for (int j = 0; j < 2; ++j) {
                Vec4 y = Vec4::Zero();
                for (int k = 0; k < 2; ++k) y += c.coef[blk](j, k) * (block_uses_creator(blk) ? cre[k] : ann[k]);
                const Vec4& z = spec[blk].z_creator ? cre[j] : ann[j];
                d += rate(p, spec[blk].form, y, z);
            }
        }
        for (int r = 0; r < 16; ++r) gen(r, col) = d(r / 4, r % 4);
    }
    return gen;
}

MomentTrajectory gaussian_moment_propagate(const MomentMatrix& m0, const SystemParams& params,
                                           const PolaritonBasis& basis, const MarkovCoefficients& c,
                                           const std::vector<double>& times)
{
    const Mat16 gen = moment_generator(params, basis, c);
    const Eigen::Matrix4cd p0 = to_products(m0);
    Eigen::Matrix<cd, 16, 1> v0;
    for (int r = 0; r < 16; ++r) v0(r) = p0(r / 4, r % 4);
    const double unit = 2 * std::numbers::pi / params.omega_c;

    MomentTrajectory out;
    for (double t : times) {
        const Mat16 prop = (gen * cd(t * unit)).exp();
        const Eigen::Matrix<cd, 16, 1> v = prop * v0;
        Eigen::Matrix4cd p;
        for (int r = 0; r < 16; ++r) p(r / 4, r % 4) = v(r);
        out.t.push_back(t);
        out.moments.push_back(from_products(p));
    }
    return out;
}

MomentMatrix moments_of(const FockModel& m, const BlockOp& rho)
{
    const std::array<BlockOp, 4> s{m.a, m.b, adjoint(m.a), adjoint(m.b)};
    MomentMatrix out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) out.k(a, b) = trace_product(rho, s[a] * s[b ^ 2]);
    return out;
}

} // namespace polariton
