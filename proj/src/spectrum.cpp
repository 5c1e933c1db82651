#include "polariton/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace polariton {

double SpectralResult::max_abs() const
{
    double m = 0;
    for (const auto& v : normal) m = std::max(m, std::abs(v));
    for (const auto& v : anomalous) m = std::max(m, std::abs(v));
    return m;
}

void sinh_points(double a, double b, double c, double width, int n, std::vector<double>& out)
{
    const double u0 = std::asinh((a - c) / width), u1 = std::asinh((b - c) / width);
    for (int i = 0; i < n; ++i) out.push_back(c + width * std::sinh(u0 + (u1 - u0) * i / (n - 1)));
}

void geometric_points(double a, double b, int n, std::vector<double>& out)
{
    for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, double(i) / (n - 1)));
}

} // namespace polariton
