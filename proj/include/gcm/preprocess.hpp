#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcm/config.hpp"
#include "gcm/elliptic.hpp"
#include "gcm/partition.hpp"
#include "gcm/plane.hpp"
#include "gcm/region.hpp"

namespace gcm {

// ---- angular spectrum propagation -------------------------------------------

/// Moves a plane field from its own z_level to target_z via its plane-wave
/// decomposition, dropping evanescent components (k_x^2 + k_y^2 >= k^2).
///
/// The input is zero-padded to pad_factor times its size before transforming;
/// pad_factor = 1 uses the periodic extension of the rectangle. Throws
/// InvalidArgument when target_z < g.geometry.z_level.
PlaneField propagate_plane(const PlaneField& g, double k, double target_z,
                           PropagationSign sign = PropagationSign::outgoing, int pad_factor = 2);

/// Same as propagate_plane without the direction check (used for round trips).
PlaneField angular_spectrum_shift(const PlaneField& g, double k, double target_z, PropagationSign sign,
                                  int pad_factor = 2);

/// Removes the evanescent components of g at wavenumber k.
PlaneField band_limit(const PlaneField& g, double k, int pad_factor = 2);

/// propagate_plane applied to every row of a dataset.
PlaneDataset propagate_dataset(const PlaneDataset& g, double target_z, PropagationSign sign, int pad_factor = 2);

// ---- band selection ---------------------------------------------------------

/// Longest contiguous run of wavenumbers over which the focus of |f| moves by at
/// most max_argmax_shift samples and max|f| changes by at most max_relative_jump
/// between neighbours. Ties go to the lower band. Throws BandNotFound when the
/// run is shorter than min_run.
std::pair<double, double> select_stable_band(const PlaneDataset& propagated, const BandSelectionSettings& s = {});

// ---- filters ----------------------------------------------------------------

/// Zeroes samples with |f| < threshold * max|f|.
PlaneField truncate_field(const PlaneField& f, double threshold = 0.8);

/// Normalized 1D Gaussian weights; throws InvalidArgument for an even size.
std::vector<double> gaussian_kernel_1d(int size, double sigma);

/// Separable Gaussian filter with half-sample symmetric (edge-repeating) padding.
PlaneField gaussian_smooth(const PlaneField& f, const SmoothingSettings& s = {});
RealField gaussian_smooth(const RealField& f, const SmoothingSettings& s = {});

// ---- calibration ------------------------------------------------------------

struct CalibrationRecord {
    std::vector<double> wavenumbers;
    std::vector<double> factors;  // A(k) > 0
    std::string provenance;

    /// Factor for a wavenumber of the list (per_k), the mean factor (band_average)
    /// or 1 (none). Throws InvalidArgument when k is not in the list for per_k.
    double factor(double k, CalibrationMode mode) const;
};

/// A(k) = max|sim(., k)| / max|exp(., k)|. Throws DivisionGuard when exp vanishes.
CalibrationRecord compute_calibration(const PlaneDataset& sim, const PlaneDataset& exp,
                                      std::string provenance = {});

// ---- target region and boundary data ----------------------------------------

/// Samples with |f| > threshold * max|f| (the argmax is always included).
TargetRegion estimate_target_region(const PlaneField& f, double threshold = 0.7);

/// Dirichlet data on the whole boundary: g on the face z = z_min, exp(ikz) elsewhere.
/// g must be sampled on gamma_face(domain).
BoundaryField complete_boundary_data(const PlaneField& g_on_gamma, double k, const Domain& domain);

/// psi on the face z = z_min and i z (the homogeneous-medium value) elsewhere.
BoundaryField complete_psi_boundary(const PlaneField& psi_on_gamma, const Domain& domain);

/// psi at every partition point, sampled on the plane lattice of the input.
struct PsiData {
    PlaneGeometry geometry;
    std::vector<double> wavenumbers;  // partition values, descending
    std::vector<PlaneField> psi;      // psi[n] at wavenumbers[n]
    double k_star = 0.0;              // normalizing wavenumber (k_star rule only)
};

/// d_k g by finite differences on the sweep (central inside, second-order
/// one-sided at the ends), interpolated linearly to the partition points.
/// `pointwise` divides by g(x, k); `k_star` divides by g(x, k*) where k* is the
/// partition point minimizing max over (k, x) of |d_k g(x, k) / g(x, k*)|.
/// The partition must lie inside the sweep. Throws DivisionGuard listing the
/// samples where the divisor falls below 1e-12.
PsiData compute_psi(const PlaneDataset& g, const WavenumberPartition& partition, PsiRule rule = PsiRule::k_star);

/// Finite-difference d_k g at the sweep wavenumbers.
PlaneDataset sweep_derivative(const PlaneDataset& g);

} // namespace gcm
