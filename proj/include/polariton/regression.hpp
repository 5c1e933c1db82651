#pragma once

#include <vector>

#include "polariton/master.hpp"

namespace polariton {

// f(s) = sum_k coef_k exp(rate_k s), s >= 0.
struct ExponentialSeries {
    std::vector<std::complex<double>> coef, rate;

    std::complex<double> operator()(double s) const;
    // int_0^inf ds exp(i w s) f(s); every rate must have Re < 0.
    std::complex<double> transform(double w) const;
};

// Arnoldi factorization of the adjoint generator on the Krylov space of one
// observable O. Gives Tr{O U(s)[x]} for any x as an exponential series.
class AdjointKrylov {
public:
    AdjointKrylov(const Generator& gen, const BlockOp& observable, int max_dim = 160, double tol = 1e-11);

    ExponentialSeries correlation(const BlockOp& x) const;
    int dimension() const { return int(basis_.size()); }
    double residual() const { return residual_; }

private:
    std::vector<BlockOp> basis_;
    Eigen::VectorXcd rates_;
    Eigen::MatrixXcd right_;   // eigenvectors of the Hessenberg matrix
    Eigen::VectorXcd weight_;  // |O| * S^-1 e1
    double residual_ = 0;
};

enum class Order {
    later_left,   // <O1(t + tau) O2(t)> = Tr{O1 U(tau)[O2 rho]}
    later_right,  // <O1(t) O2(t + tau)> = Tr{O2 U(tau)[rho O1]}
};

// Two-time correlation on a uniform tau grid (units of 2 pi / omega_c, starting
// at 0) by direct propagation with the integrator used for rho(t).
std::vector<std::complex<double>> regression_correlation(const FockModel& model, const Generator& gen,
                                                         const BlockOp& rho, const BlockOp& o1, const BlockOp& o2,
                                                         const std::vector<double>& tau, Order order,
                                                         double max_dt = 0.02);

// Same correlation as an exponential series in natural time units.
ExponentialSeries regression_series(const Generator& gen, const BlockOp& rho, const BlockOp& o1, const BlockOp& o2,
                                    Order order, int max_dim = 160);

} // namespace polariton
