#pragma once
// Reference formulas written out independently of the library.

#include <cmath>
#include <complex>
#include <functional>

#include <Eigen/Core>

namespace oracle {

using cd = std::complex<double>;

// Björling integral over the unit circle with n = cos(aw)(-c) + sin(aw) e3,
// integrated by hand: n x c' = (-sin(aw) cos w, -sin(aw) sin w, -cos(aw)).
inline Eigen::Vector3d bent_helicoid(double a, double x, double y)
{
    const cd z(x, y), i(0.0, 1.0);
    const cd p = a + 1.0, m = a - 1.0;
    const cd i1 = 0.5 * ((std::cos(p * z) - 1.0) / p + (std::cos(m * z) - 1.0) / m);
    const cd i2 = -0.5 * (std::sin(m * z) / m - std::sin(p * z) / p);
    const cd i3 = -std::sin(a * z) / a;
    return {std::real(std::cos(z) - i * i1), std::real(std::sin(z) - i * i2), std::real(-i * i3)};
}

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000)
{
    if (n % 2)
        ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k)
        s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

// |dF/dx| by a central difference of the oracle surface.
inline double speed_x(double a, double x, double y, double h = 1e-6)
{
    return ((bent_helicoid(a, x + h, y) - bent_helicoid(a, x - h, y)) / (2.0 * h)).norm();
}

} // namespace oracle
