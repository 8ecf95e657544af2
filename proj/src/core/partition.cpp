#include "gcm/partition.hpp"

#include <cmath>

#include "gcm/error.hpp"

namespace gcm {

WavenumberPartition build_partition(double k_lo, double k_hi, int n_intervals) {
    if (!(k_lo > 0.0) || !(k_hi > k_lo) || !std::isfinite(k_hi)) {
        throw InvalidArgument("wavenumber partition needs 0 < k_lo < k_hi");
    }
    if (n_intervals < 1) throw InvalidArgument("wavenumber partition needs N >= 1");

    WavenumberPartition p;
    p.k_lo = k_lo;
    p.k_hi = k_hi;
    p.n_intervals = n_intervals;
    p.h = (k_hi - k_lo) / n_intervals;
    p.values.resize(static_cast<std::size_t>(n_intervals) + 1);
    for (int j = 0; j <= n_intervals; ++j) p.values[j] = k_hi - j * p.h;
    p.values.back() = k_lo;
    return p;
}

} // namespace gcm
