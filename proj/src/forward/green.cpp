#include "gcm/green.hpp"

#include <cmath>
#include <numbers>

#include "gcm/error.hpp"

namespace gcm {

namespace {

using namespace std::complex_literals;

// (e^z - 1) / z, accurate near z = 0.
cplx expm1_over(cplx z) {
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
    return (std::exp(z) - 1.0) / z;
}

} // namespace

cplx green_function(const Point3& x, const Point3& y, double k) {
    const double r = std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
    if (r == 0.0) throw SingularityError("green_function: x == y");
    return std::exp(1i * (k * r)) / (4.0 * std::numbers::pi * r);
}

cplx truncated_green_spectrum(double s, double k, double rho) {
    if (s < 1e-12) {
        if (k == 0.0) return 0.5 * rho * rho;
        return (-1.0 + std::exp(1i * (k * rho)) * (1.0 - 1i * (k * rho))) / (k * k);
    }
    // (1/s) int_0^rho e^{ikr} sin(sr) dr, written through (e^z - 1)/z so that
    // the removable singularity at s = k is harmless.
    const cplx a = expm1_over(1i * ((k + s) * rho));
    const cplx b = expm1_over(1i * ((k - s) * rho));
    return -(1i * rho / (2.0 * s)) * (a - b);
}

} // namespace gcm
