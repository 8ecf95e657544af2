#include "gcm/simulate.hpp"

#include <cmath>
#include <random>
#include <thread>

#include "gcm/error.hpp"
#include "gcm/lippmann_schwinger.hpp"

namespace gcm {

using namespace std::complex_literals;

Domain simulation_domain(const Scene& scene, double spacing, double margin) {
    if (scene.objects.empty()) throw InvalidArgument("simulation domain: scene has no objects");
    if (!(spacing > 0.0)) throw InvalidArgument("simulation domain: spacing must be positive");
    const auto [lo, hi] = scene.bounds();
    Domain d;
    std::array<double, 3> mins{}, maxs{};
    std::array<int, 3> counts{};
    for (int a = 0; a < 3; ++a) {
        const double center = 0.5 * (lo[a] + hi[a]);
        const double half = 0.5 * (hi[a] - lo[a]) + margin;
        counts[a] = std::max(2, static_cast<int>(std::ceil(2.0 * half / spacing)) + 1);
        const double span = (counts[a] - 1) * spacing;
        mins[a] = center - 0.5 * span;
        maxs[a] = center + 0.5 * span;
    }
    d.x_min = mins[0];
    d.x_max = maxs[0];
    d.y_min = mins[1];
    d.y_max = maxs[1];
    d.z_min = mins[2];
    d.z_max = maxs[2];
    d.nx = counts[0];
    d.ny = counts[1];
    d.nz = counts[2];
    return d;
}

PlaneDataset simulate_measurements(const PermittivityField& eps, std::span<const double> wavenumbers,
                                   const PlaneGeometry& plane, FieldKind kind,
                                   const KrylovSettings& settings, int threads) {
    plane.validate();
    const Domain& d = eps.domain();
    const IndexBox support = eps.contrast_support();
    if (!support.empty() && !(plane.z_level < d.z(support.lo[2]) - 0.5 * d.dz())) {
        throw InvalidArgument("simulate_measurements: the plane must lie in front of the contrast");
    }

    PlaneDataset out;
    out.geometry = plane;
    out.wavenumbers.assign(wavenumbers.begin(), wavenumbers.end());
    out.rows.assign(wavenumbers.size(), std::vector<cplx>(plane.size()));

    std::vector<Point3> points;
    points.reserve(plane.size());
    for (int j = 0; j < plane.ny; ++j)
        for (int i = 0; i < plane.nx; ++i) points.push_back({plane.x(i), plane.y(j), plane.z_level});

    const auto solve_one = [&](std::size_t w) {
        const double k = wavenumbers[w];
        auto& row = out.rows[w];
        if (support.empty()) {
            for (std::size_t p = 0; p < points.size(); ++p) row[p] = std::exp(1i * (k * points[p][2]));
        } else {
            const SupportSolution sol = solve_on_support(eps, k, settings);
            row = evaluate_exterior(sol, eps, k, points);
        }
        if (kind == FieldKind::scattered) {
            for (std::size_t p = 0; p < points.size(); ++p) row[p] -= std::exp(1i * (k * points[p][2]));
        }
    };

    const std::size_t n = wavenumbers.size();
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t w = 0; w < n; ++w) solve_one(w);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t w = t; w < n; w += workers) solve_one(w);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    out.validate();
    return out;
}

void add_multiplicative_noise(PlaneDataset& data, double pct, std::uint64_t seed) {
    if (pct == 0.0) return;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double p = pct / 100.0;
    for (auto& row : data.rows) {
        for (auto& v : row) {
            const double a = unit(rng);
            const double b = unit(rng);
            v *= cplx(1.0 + p * a, p * b);
        }
    }
}

} // namespace gcm
