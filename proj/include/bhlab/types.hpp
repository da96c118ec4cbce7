#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace bhlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;

/// A point z = x + iy of the parameter domain.
using ComplexPoint = cplx;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or configuration; the CLI maps it to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Quadrature, root-finding or fitting failed to reach its tolerance;
/// the CLI maps it to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline void require_finite(cplx z, const char* what)
{
    if (!is_finite(z))
        throw UsageError(std::string(what) + ": non-finite complex point");
}

inline Vec3 real_part(const CVec3& v) { return v.real(); }

// Complex-bilinear (not Hermitian) products used by the holomorphic extensions.
inline cplx bdot(const CVec3& u, const CVec3& v) { return u(0) * v(0) + u(1) * v(1) + u(2) * v(2); }

inline CVec3 bcross(const CVec3& u, const CVec3& v)
{
    return CVec3(u(1) * v(2) - u(2) * v(1), u(2) * v(0) - u(0) * v(2), u(0) * v(1) - u(1) * v(0));
}

} // namespace bhlab
