#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gcm/error.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

std::pair<double, double> select_stable_band(const PlaneDataset& propagated, const BandSelectionSettings& s) {
    if (s.fixed) {
        if (!(s.fixed->first < s.fixed->second)) throw InvalidArgument("fixed band must satisfy lo < hi");
        return *s.fixed;
    }
    propagated.validate();
    const std::size_t n = propagated.count();
    if (n == 0) throw BandNotFound("empty dataset; select the band manually (--band LO:HI)");

    const PlaneGeometry& geo = propagated.geometry;
    std::vector<int> ai(n), aj(n);
    std::vector<double> peak(n);
    for (std::size_t w = 0; w < n; ++w) {
        const PlaneField f = propagated.field(w);
        const std::size_t idx = f.argmax_abs();
        ai[w] = static_cast<int>(idx % geo.nx);
        aj[w] = static_cast<int>(idx / geo.nx);
        peak[w] = f.max_abs();
    }

    auto stable = [&](std::size_t w) {  // pair (w, w + 1)
        const int shift = std::max(std::abs(ai[w + 1] - ai[w]), std::abs(aj[w + 1] - aj[w]));
        if (shift > s.max_argmax_shift) return false;
        if (peak[w] == 0.0) return peak[w + 1] == 0.0;
        return std::abs(peak[w + 1] - peak[w]) <= s.max_relative_jump * peak[w];
    };

    std::size_t best_start = 0, best_len = 1, start = 0;
    for (std::size_t w = 0; w + 1 < n; ++w) {
        if (!stable(w)) {
            start = w + 1;
            continue;
        }
        const std::size_t len = w + 2 - start;
        if (len > best_len) {
            best_len = len;
            best_start = start;
        }
    }
    if (best_len < static_cast<std::size_t>(std::max(s.min_run, 2))) {
        std::ostringstream msg;
        msg << "no stable frequency run of length >= " << s.min_run << " (longest " << best_len
            << "); select the band manually (--band LO:HI)";
        throw BandNotFound(msg.str());
    }
    return {propagated.wavenumbers[best_start], propagated.wavenumbers[best_start + best_len - 1]};
}

} // namespace gcm
