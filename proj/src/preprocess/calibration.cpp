#include <cmath>
#include <numeric>

#include "gcm/error.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

double CalibrationRecord::factor(double k, CalibrationMode mode) const {
    switch (mode) {
    case CalibrationMode::none:
        return 1.0;
    case CalibrationMode::band_average:
        if (factors.empty()) throw InvalidState("calibration record is empty");
        return std::accumulate(factors.begin(), factors.end(), 0.0) / static_cast<double>(factors.size());
    case CalibrationMode::per_k:
        for (std::size_t w = 0; w < wavenumbers.size(); ++w)
            if (std::abs(wavenumbers[w] - k) <= 1e-9 * std::max(1.0, std::abs(k))) return factors[w];
        throw InvalidArgument("no calibration factor for wavenumber " + std::to_string(k));
    }
    return 1.0;
}

CalibrationRecord compute_calibration(const PlaneDataset& sim, const PlaneDataset& exp, std::string provenance) {
    sim.validate();
    exp.validate();
    if (sim.wavenumbers != exp.wavenumbers)
        throw InvalidArgument("calibration datasets must share their wavenumber list");
    CalibrationRecord rec;
    rec.wavenumbers = sim.wavenumbers;
    rec.provenance = std::move(provenance);
    for (std::size_t w = 0; w < sim.count(); ++w) {
        const double e = exp.field(w).max_abs();
        if (e == 0.0) throw DivisionGuard("calibration: measured field vanishes at k = " + std::to_string(sim.wavenumbers[w]));
        const double a = sim.field(w).max_abs() / e;
        if (!std::isfinite(a) || !(a > 0.0))
            throw DivisionGuard("calibration: non-positive factor at k = " + std::to_string(sim.wavenumbers[w]));
        rec.factors.push_back(a);
    }
    return rec;
}

} // namespace gcm
