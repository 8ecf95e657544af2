#pragma once

#include "gcm/field.hpp"

namespace gcm {

/// Outgoing free-space Helmholtz Green's function exp(ik|x-y|) / (4 pi |x-y|).
/// Throws SingularityError when x == y.
cplx green_function(const Point3& x, const Point3& y, double k);

/// Fourier transform at |xi| = s of the Green's function truncated to the ball
/// |r| < rho:  int_{|r|<rho} Phi_k(r) exp(-i xi . r) dr.
cplx truncated_green_spectrum(double s, double k, double rho);

} // namespace gcm
