#pragma once

#include <cstdint>
#include <span>

#include "gcm/krylov.hpp"
#include "gcm/plane.hpp"
#include "gcm/scene.hpp"

namespace gcm {

enum class FieldKind { total, scattered };

/// Lattice with the given spacing that covers the scene plus `margin` on each side.
Domain simulation_domain(const Scene& scene, double spacing, double margin);

/// Field values on a plane in front of the contrast (backscatter side) for each
/// wavenumber, obtained from a Lippmann-Schwinger solve on eps's lattice and
/// the exterior integral representation.
///
/// Requires plane.z_level below the contrast support. Wavenumbers must strictly
/// increase. Independent wavenumbers are solved on up to `threads` threads;
/// the output does not depend on the thread count.
PlaneDataset simulate_measurements(const PermittivityField& eps, std::span<const double> wavenumbers,
                                   const PlaneGeometry& plane, FieldKind kind = FieldKind::total,
                                   const KrylovSettings& settings = {}, int threads = 1);

/// Multiplies every sample by (1 + p (a + i b)) with a, b uniform in [-1, 1]
/// and p = pct / 100. Deterministic for a given seed.
void add_multiplicative_noise(PlaneDataset& data, double pct, std::uint64_t seed);

} // namespace gcm
