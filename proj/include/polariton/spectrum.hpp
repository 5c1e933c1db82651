#pragma once

#include <complex>
#include <vector>

namespace polariton {

// Ordered output spectra on a frequency grid:
// normal = <:F_out(w) F_out':>, anomalous = <:F_out(w) F_out:>.
struct SpectralResult {
    std::vector<double> omega;
    std::vector<std::complex<double>> normal, anomalous;

    double max_abs() const;
};

// Grid pieces appended to `out`. sinh_points places c + width sinh(u) for u
// uniform over [a, b]: uniform near c and geometric far from it.
void sinh_points(double a, double b, double c, double width, int n, std::vector<double>& out);
// a (b/a)^t for t uniform; a > 0.
void geometric_points(double a, double b, int n, std::vector<double>& out);

} // namespace polariton
