#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. None of these go through the library's FFT paths.

#include <complex>
#include <vector>

#include "gcm/elliptic.hpp"
#include "gcm/field.hpp"
#include "gcm/lippmann_schwinger.hpp"
#include "gcm/plane.hpp"

namespace oracle {

using gcm::cplx;

/// int_{|r|<rho} exp(ik|r|)/(4 pi |r|) exp(-i xi.r) dr at |xi| = s, in closed form.
cplx truncated_green_spectrum(double s, double k, double rho);

/// Solves the collocation system of the periodized Lippmann-Schwinger operator
/// on the contrast support by assembling the dense matrix (kernel values from a
/// direct trigonometric sum over the periodic lattice) and LU-factoring it.
/// Returns the total field on the support nodes, x-fastest.
std::vector<cplx> dense_collocation_solve(const gcm::PermittivityField& eps, double k);

/// Born approximation k^2 sum_y Phi_k(x - y) (eps(y) - 1) exp(i k z_y) dV at points
/// away from the contrast (midpoint rule on the lattice).
std::vector<cplx> born_scattered(const gcm::PermittivityField& eps, double k, const std::vector<gcm::Point3>& points);

/// Cube [lo, hi]^3 with n nodes per axis.
gcm::Domain cube(double lo, double hi, int n);

/// Smooth bump contrast 1 + amp cos^2(pi r / (2 radius)) inside the ball.
gcm::PermittivityField smooth_ball(const gcm::Domain& d, gcm::Point3 center, double radius, double amp);

/// L2 error of the finite-difference solution of
///   Lap q - F . grad q = rhs,  F = (1, i, 0),  q* = sin(x) exp(iy) z
/// on [0, 1]^3 with n nodes per axis. `seconds` receives the solve time.
double manufactured_error(int n, double* seconds = nullptr);

struct MaxPrincipleTrial {
    double violation = 0.0;  // largest excess of an interior value over the boundary range
    bool converged = false;
};
/// Laplace problem with random complex boundary data on a random small box.
MaxPrincipleTrial max_principle_trial(unsigned seed);

/// Relative L2 mismatch between the propagated field of a point source and
/// the Green's function on the target plane. The source sits ten units from
/// the planes; nearer sources lose a visible share to the dropped evanescent band.
double point_source_propagation_error();

/// Relative L2 error of a b -> a -> b round trip of a band-limited field.
double propagation_round_trip_error();

}  // namespace oracle
