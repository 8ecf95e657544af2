#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gcm/fft.hpp"
#include "gcm/field.hpp"
#include "gcm/krylov.hpp"

namespace gcm {

/// Convolution with the free-space Green's function by trigonometric collocation
/// on a periodic box (Vainikko periodization).
///
/// Sources live on the `source` node box of a domain lattice and results are
/// wanted on the `target` box. The kernel is truncated at rho = the largest
/// source-target distance and the periodic box is made long enough that no
/// periodic image of a source lies within rho of a target, so the result is
/// the exact convolution of the trigonometric interpolant of the source data.
/// The box side is also at least twice the source diameter.
class PeriodizedGreenConvolution {
public:
    PeriodizedGreenConvolution(const Domain& domain, const IndexBox& source, const IndexBox& target,
                               double k);

    /// values on `target` of  int Phi_k(x - y) f(y) dy  for f given on `source`.
    void apply(std::span<const cplx> source_values, std::span<cplx> target_values);

    std::array<int, 3> periodic_shape() const { return fft_.shape(); }
    double truncation_radius() const { return rho_; }
    /// Kernel spectrum on the periodic frequency lattice (x-fastest).
    const std::vector<cplx>& spectrum() const { return spectrum_; }

private:
    Domain domain_;
    IndexBox source_, target_;
    std::array<int, 3> origin_;  // domain node mapped to periodic index 0
    double rho_;
    std::vector<cplx> spectrum_;
    Fft3d fft_;
};

/// Precomputed state for the discretized Lippmann-Schwinger operator
/// u - k^2 Phi_k * (m u) on the contrast support box of eps.
class LSOperatorContext {
public:
    LSOperatorContext(const PermittivityField& eps, double k, KrylovSettings settings = {});

    const IndexBox& support() const { return support_; }
    double wavenumber() const { return k_; }
    const KrylovSettings& settings() const { return settings_; }
    const std::vector<double>& contrast() const { return contrast_; }
    PeriodizedGreenConvolution& kernel() { return *kernel_; }

    /// y = x - k^2 [Phi_k * (m x)] restricted to the support box.
    void apply(std::span<const cplx> x, std::span<cplx> y);

private:
    Domain domain_;
    double k_;
    KrylovSettings settings_;
    IndexBox support_;
    std::vector<double> contrast_;  // eps - 1 on support nodes
    std::unique_ptr<PeriodizedGreenConvolution> kernel_;
    std::vector<cplx> work_;
};

struct SupportSolution {
    IndexBox support;
    std::vector<cplx> u;  // total field on support nodes, x-fastest within the box
    KrylovReport report;
};

/// Solve the discretized LS equation on the contrast support only.
/// Throws ConvergenceError if the Krylov iteration does not reach tolerance.
SupportSolution solve_on_support(const PermittivityField& eps, double k,
                                 const KrylovSettings& settings = {});

/// Total field on every node of eps's domain.
///
/// The support solve is extended to the whole lattice through the integral
/// representation u = e^{ikz} + k^2 Phi_k * (m u), evaluated with the same
/// periodized quadrature. A homogeneous medium returns e^{ikz} exactly.
ComplexField solve_total_field(const PermittivityField& eps, double k,
                               const KrylovSettings& settings = {},
                               KrylovReport* report = nullptr);

/// u(x) = e^{ikz} + k^2 sum_y Phi_k(x, y) m(y) u(y) dV (midpoint rule) at points
/// outside the contrast support. Throws DomainError for points within half a
/// cell of the support's bounding box.
std::vector<cplx> evaluate_exterior(const ComplexField& u_interior, const PermittivityField& eps,
                                    double k, std::span<const Point3> points);

/// Same, taking the solution on the support box only.
std::vector<cplx> evaluate_exterior(const SupportSolution& solution, const PermittivityField& eps,
                                    double k, std::span<const Point3> points);

/// Values of box nodes in x-fastest order.
std::vector<Point3> box_points(const Domain& domain, const IndexBox& box);

} // namespace gcm
