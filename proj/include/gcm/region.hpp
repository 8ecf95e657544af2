#pragma once

#include <cstdint>
#include <vector>

#include "gcm/plane.hpp"

namespace gcm {

/// xy-mask (Omega_T) over a plane sample lattice where the target is expected.
struct TargetRegion {
    PlaneGeometry lattice;
    std::vector<std::uint8_t> mask;  // lattice.size() entries, 1 = inside
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;  // bounding rectangle of the mask

    /// Nearest-sample lookup; points off the lattice are outside.
    bool contains(double x, double y) const;
    std::size_t count() const;
    void update_bounds();
};

/// Region covering every sample of the lattice.
TargetRegion full_region(const PlaneGeometry& lattice);

} // namespace gcm
