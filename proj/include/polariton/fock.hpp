#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "polariton/hopfield.hpp"

namespace polariton {

// Which two oscillators the truncated product basis counts quanta of:
// bare photons and excitations, or lower and upper polaritons.
enum class FockBasis { bare, polariton };

struct FockConfig {
    int n_a = 8;  // levels 0..n_a-1 of the first factor
    int n_b = 8;
    FockBasis basis = FockBasis::bare;
};

// Upper bound on n_a * n_b; dense steady-state solves scale as (n_a n_b)^6.
inline constexpr int kMaxFockStates = 400;

void validate(const FockConfig& c);

// Dense truncated matrices on |first> (x) |second>, index i_first * n_b + i_second.
struct ModeOperators {
    FockConfig config;
    Eigen::MatrixXcd a, b, ad, bd;
    std::array<Eigen::MatrixXcd, 2> p;  // p_L, p_U
    Eigen::MatrixXcd h0;
};

ModeOperators build_mode_operators(const SystemParams& params, const PolaritonBasis& basis,
                                   const FockConfig& config);

// Operator with definite number parity, stored as two blocks between the even
// (0) and odd (1) sectors of the H0 eigenbasis: blk[i] maps sector i^parity
// into sector i.
struct BlockOp {
    int parity = 0;
    std::array<Eigen::MatrixXcd, 2> blk;

    static BlockOp zero(const std::array<int, 2>& dim, int parity);
    double max_abs() const;
    BlockOp& operator+=(const BlockOp& o);
    BlockOp& operator-=(const BlockOp& o);
    BlockOp& operator*=(std::complex<double> s);
};

BlockOp operator*(const BlockOp& x, const BlockOp& y);
BlockOp operator+(BlockOp x, const BlockOp& y);
BlockOp operator-(BlockOp x, const BlockOp& y);
BlockOp operator*(std::complex<double> s, BlockOp x);
BlockOp adjoint(const BlockOp& x);
// Tr(x) for an even operator; zero for odd ones.
std::complex<double> trace(const BlockOp& x);
// Tr(x y) without forming the product.
std::complex<double> trace_product(const BlockOp& x, const BlockOp& y);
// Hilbert-Schmidt <x, y> = Tr(x' y).
std::complex<double> inner(const BlockOp& x, const BlockOp& y);

// Closed system in the eigenbasis of the truncated H0, with the ladder and
// polariton operators expressed there.
struct FockModel {
    SystemParams params;
    PolaritonBasis basis;
    FockConfig config;
    ModeOperators ops;

    std::array<int, 2> dim{};               // sector sizes
    std::array<Eigen::VectorXd, 2> energy;  // ascending within each sector
    std::array<Eigen::MatrixXcd, 2> vectors;  // product-basis columns per sector
    std::array<Eigen::VectorXi, 2> members;   // product-basis indices of each sector

    BlockOp a, b;
    std::array<BlockOp, 2> p;
    BlockOp n_lower, n_upper, n_photon, n_excitation;

    BlockOp to_eigen(const Eigen::MatrixXcd& op, int parity) const;
    Eigen::MatrixXcd to_product(const BlockOp& op) const;
    BlockOp pure_state(const Eigen::VectorXcd& psi) const;  // psi in the product basis, definite parity
    int parity_of(int product_index) const;

    // Lowest even eigenstate of the truncated H0.
    BlockOp ground_state() const;
    // Lowest eigenstate of a'a + b'b in the truncated space (|0,0> in the bare basis).
    BlockOp bare_vacuum() const;
    // |i, j><i, j| of the product basis.
    BlockOp product_state(int i, int j) const;

    // Tr(rho op)
    double expectation(const BlockOp& rho, const BlockOp& op) const { return trace_product(rho, op).real(); }
};

FockModel build_fock_model(const SystemParams& params, const FockConfig& config);

} // namespace polariton
