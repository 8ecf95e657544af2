#pragma once

#include <cstddef>
#include <vector>

namespace gcm {

/// Uniform grid k_0 = k_hi > k_1 > ... > k_N = k_lo with step h.
struct WavenumberPartition {
    double k_lo = 0.0;
    double k_hi = 0.0;
    int n_intervals = 0;
    double h = 0.0;
    std::vector<double> values;

    double operator[](std::size_t j) const { return values[j]; }
};

/// Throws InvalidArgument unless 0 < k_lo < k_hi and n_intervals >= 1.
WavenumberPartition build_partition(double k_lo, double k_hi, int n_intervals);

} // namespace gcm
