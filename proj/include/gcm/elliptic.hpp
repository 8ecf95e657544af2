#pragma once

#include <functional>

#include "gcm/config.hpp"
#include "gcm/field.hpp"
#include "gcm/krylov.hpp"

namespace gcm {

/// Complex Dirichlet data on the six faces of a domain.
///
/// Face arrays are x-fastest over the two in-face axes. Edge and corner nodes
/// belong to several faces; lookups resolve them with the priority
/// z-faces > y-faces > x-faces.
struct BoundaryField {
    Domain domain;
    std::vector<cplx> z_lo, z_hi;  // nx * ny
    std::vector<cplx> y_lo, y_hi;  // nx * nz
    std::vector<cplx> x_lo, x_hi;  // ny * nz

    BoundaryField() = default;
    explicit BoundaryField(const Domain& d, cplx fill = {});

    /// Samples f at every boundary node.
    static BoundaryField from_function(const Domain& d, const std::function<cplx(const Point3&)>& f);
    /// Trace of a volume field.
    static BoundaryField trace(const ComplexField& f);

    /// Value at a boundary node (i, j, k). Undefined for interior nodes.
    cplx at(int i, int j, int k) const;
    BoundaryField scaled(cplx factor) const;
};

/// Delta q - F . grad q = rhs in the interior, q = boundary on the faces.
/// An empty convection or rhs field means zero.
struct DirichletProblem {
    Domain domain;
    VectorField convection;
    ComplexField rhs;
    BoundaryField boundary;
};

struct EllipticSettings {
    KrylovSettings krylov{1e-8, 50, 2000};
    Preconditioner preconditioner = Preconditioner::convection;
};

struct DirichletSolution {
    ComplexField solution;
    KrylovReport report;
    /// Some node had |F_d| h_d / 2 > 1 (cell Peclet guard).
    bool peclet_warning = false;
    /// Nodes where the real part of the convection was upwinded.
    std::size_t upwinded_nodes = 0;
};

/// Second-order 7-point finite differences; centered convection except where
/// the real part of a convection component violates the cell Peclet bound,
/// where that part is discretized upwind. Throws ConvergenceError (with the
/// residual history) when the Krylov iteration stagnates.
DirichletSolution solve_dirichlet(const DirichletProblem& problem, const EllipticSettings& settings = {});

/// Harmonic p with p = i * psi_bar on the boundary.
DirichletSolution solve_laplace_p(const BoundaryField& psi_bar, const EllipticSettings& settings = {});

/// Centered differences inside, first-order one-sided differences on faces.
VectorField gradient(const ComplexField& f);
/// 7-point Laplacian inside; one-sided three-point second differences on faces.
ComplexField laplacian(const ComplexField& f);
/// Centered differences inside, first-order one-sided differences on faces.
ComplexField divergence(const VectorField& v);

} // namespace gcm
