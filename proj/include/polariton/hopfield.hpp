#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "polariton/errors.hpp"

namespace polariton {

template <typename Real>
using Matrix4c = Eigen::Matrix<std::complex<Real>, 4, 4>;
template <typename Real>
using Vector4c = Eigen::Matrix<std::complex<Real>, 4, 1>;

// Closed two-mode Hamiltonian
//   H0 = wc a'a + wx b'b + i Omega (a + a')(b - b') + D (a + a')^2
// All frequencies in units of the cavity frequency.
template <typename Real>
struct BasicSystemParams {
    Real omega_c = 1;
    Real omega_x = 1;
    Real rabi = 0;
    Real diamag = 0;
};
using SystemParams = BasicSystemParams<double>;

// Figure parameter set: wx = wc, Omega = wc, D = Omega^2 / wx.
inline SystemParams resonant_params(double rabi = 1.0)
{
    return {1.0, 1.0, rabi, rabi * rabi};
}

template <typename Real>
void validate(const BasicSystemParams<Real>& p)
{
    using std::isfinite;
    for (Real v : {p.omega_c, p.omega_x, p.rabi, p.diamag}) {
        if (!isfinite(v) || v < 0) throw InvalidParams("frequencies must be finite and >= 0");
    }
    if (p.omega_c <= 0 || p.omega_x <= 0) throw InvalidParams("omega_c and omega_x must be > 0");
    const Real bound = p.rabi * p.rabi / p.omega_x;
    if (p.diamag < bound * (1 - Real(1e-12)))
        throw InvalidParams("diamag below rabi^2/omega_x (superradiant regime)");
}

inline constexpr int kLower = 0;
inline constexpr int kUpper = 1;

// Coefficients of p_j = w a + x b + y a' + z b' for j in {L, U}.
template <typename Real>
struct BasicPolaritonBasis {
    using Complex = std::complex<Real>;
    struct Branch {
        Complex w, x, y, z;
        Real omega = 0;
    };
    std::array<Branch, 2> branch;

    const Branch& operator[](int j) const { return branch[j]; }

    // Coefficient row of p_j in the (a, b, a', b') basis.
    Vector4c<Real> annihilator(int j) const
    {
        const auto& q = branch[j];
        return Vector4c<Real>(q.w, q.x, q.y, q.z);
    }
    // Coefficient row of p_j'.
    Vector4c<Real> creator(int j) const
    {
        const auto& q = branch[j];
        return Vector4c<Real>(std::conj(q.y), std::conj(q.z), std::conj(q.w), std::conj(q.x));
    }
    // Rows p_L, p_U, p_L', p_U' in terms of (a, b, a', b').
    Matrix4c<Real> forward() const
    {
        Matrix4c<Real> f;
        f.row(0) = annihilator(0).transpose();
        f.row(1) = annihilator(1).transpose();
        f.row(2) = creator(0).transpose();
        f.row(3) = creator(1).transpose();
        return f;
    }
    // (a, b, a', b') = inverse() * (p_L, p_U, p_L', p_U').
    Matrix4c<Real> inverse() const
    {
        Matrix4c<Real> t;
        for (int j = 0; j < 2; ++j) {
            const auto& q = branch[j];
            t.col(j) << std::conj(q.w), std::conj(q.x), -std::conj(q.y), -std::conj(q.z);
            t.col(j + 2) << -q.y, -q.z, q.w, q.x;
        }
        return t;
    }
};
using PolaritonBasis = BasicPolaritonBasis<double>;

// K(mu, nu) = <s_mu s_nu'> with s = (a, b, a', b').
template <typename Real>
struct BasicMomentMatrix {
    Matrix4c<Real> k = Matrix4c<Real>::Zero();

    Real photon_number() const { return std::real(k(2, 2)); }      // <a'a>
    Real excitation_number() const { return std::real(k(3, 3)); }  // <b'b>
    std::complex<Real> aa() const { return k(0, 2); }
    std::complex<Real> bb() const { return k(1, 3); }
    std::complex<Real> ab() const { return k(0, 3); }
    std::complex<Real> adb() const { return k(2, 3); }              // <a'b>
    // <s_mu s_nu> for any pair of the four ladder operators.
    std::complex<Real> product(int mu, int nu) const { return k(mu, nu ^ 2); }
};
using MomentMatrix = BasicMomentMatrix<double>;

// Matrix B acting on (w, x, y, z) with [p, H0] = omega p.
template <typename Real>
Matrix4c<Real> bogoliubov_matrix(const BasicSystemParams<Real>& p)
{
    using C = std::complex<Real>;
    const C i(0, 1);
    const Real wc = p.omega_c, wx = p.omega_x, om = p.rabi, d = p.diamag;
    Matrix4c<Real> m;
    m << wc + 2 * d, -i * om, -2 * d, -i * om,
         i * om, wx, -i * om, C(0),
         2 * d, -i * om, -wc - 2 * d, -i * om,
         -i * om, C(0), i * om, -wx;
    return m;
}

template <typename Real>
BasicPolaritonBasis<Real> diagonalize_polaritons(const BasicSystemParams<Real>& p)
{
    using C = std::complex<Real>;
    validate(p);
    Eigen::ComplexEigenSolver<Matrix4c<Real>> es(bogoliubov_matrix(p));
    if (es.info() != Eigen::Success) throw NonPositiveMode("eigen decomposition failed");

    std::array<int, 2> pos{};
    int npos = 0;
    for (int k = 0; k < 4; ++k) {
        const C ev = es.eigenvalues()(k);
        if (std::abs(ev.imag()) > Real(1e-10)) throw NonPositiveMode("complex eigenfrequency");
        if (ev.real() > 0) {
            if (npos == 2) throw NonPositiveMode("unexpected eigenvalue signs");
            pos[npos++] = k;
        }
    }
    if (npos != 2) throw NonPositiveMode("eigenvalues not in +/- pairs");
    if (es.eigenvalues()(pos[0]).real() > es.eigenvalues()(pos[1]).real()) std::swap(pos[0], pos[1]);

    const Real wl = es.eigenvalues()(pos[0]).real();
    const Real wu = es.eigenvalues()(pos[1]).real();
    if (std::abs(wu - wl) < Real(1e-12) * std::max(Real(1), wu))
        throw DegenerateSpectrum("lower and upper polaritons coincide");

    BasicPolaritonBasis<Real> out;
    for (int j = 0; j < 2; ++j) {
        Vector4c<Real> v = es.eigenvectors().col(pos[j]);
        const Real norm = std::norm(v(0)) + std::norm(v(1)) - std::norm(v(2)) - std::norm(v(3));
        if (!(norm > 0)) throw NonPositiveMode("non-positive symplectic norm");
        v /= std::sqrt(norm);
        const C anchor = std::abs(v(0)) >= Real(1e-12) ? v(0) : v(1);
        v *= std::conj(anchor) / std::abs(anchor);
        if (std::abs(v(0)) >= Real(1e-12)) v(0) = C(std::real(v(0)), 0);
        else v(1) = C(std::real(v(1)), 0);
        out.branch[j] = {v(0), v(1), v(2), v(3), es.eigenvalues()(pos[j]).real()};
    }
    return out;
}

// Second moments of the polariton vacuum p_j|g> = 0.
template <typename Real>
BasicMomentMatrix<Real> ground_state_moments(const BasicPolaritonBasis<Real>& basis)
{
    const Matrix4c<Real> t = basis.inverse();
    Matrix4c<Real> occ = Matrix4c<Real>::Zero();
    occ(0, 0) = occ(1, 1) = 1;
    return {t * occ * t.adjoint()};
}

// Moments of the bare vacuum |0,0>.
inline MomentMatrix bare_vacuum_moments()
{
    MomentMatrix m;
    m.k(0, 0) = m.k(1, 1) = 1;
    return m;
}

} // namespace polariton
