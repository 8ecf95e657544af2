#include "gcm/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gcm {

double SceneObject::contrast_at(const Point3& p) const {
    const double delta = eps - 1.0;
    if (shape == Shape::ball) {
        const double r = std::hypot(p[0] - center[0], p[1] - center[1], p[2] - center[2]);
        if (r > radius) return 0.0;
        if (profile == Profile::sharp) return delta;
        // Flat core out to R/2, then a cos^2 roll-off to zero at R.
        const double t = (r - 0.5 * radius) / (0.5 * radius);
        if (t <= 0.0) return delta;
        const double c = std::cos(0.5 * std::numbers::pi * t);
        return delta * c * c;
    }
    double w = 1.0;
    for (int d = 0; d < 3; ++d) {
        if (p[d] < box_min[d] || p[d] > box_max[d]) return 0.0;
        if (profile == Profile::smooth) {
            const double half = 0.5 * (box_max[d] - box_min[d]);
            const double mid = 0.5 * (box_max[d] + box_min[d]);
            const double t = (std::abs(p[d] - mid) - 0.5 * half) / (0.5 * half);
            if (t > 0.0) {
                const double c = std::cos(0.5 * std::numbers::pi * t);
                w *= c * c;
            }
        }
    }
    return delta * w;
}

std::pair<Point3, Point3> SceneObject::bounds() const {
    if (shape == Shape::ball) {
        return {Point3{center[0] - radius, center[1] - radius, center[2] - radius},
                Point3{center[0] + radius, center[1] + radius, center[2] + radius}};
    }
    return {box_min, box_max};
}

PermittivityField Scene::rasterize(const Domain& domain) const {
    PermittivityField eps(domain, 1.0);
    for (std::size_t idx = 0; idx < eps.size(); ++idx) {
        const Point3 p = domain.point(idx);
        double c = 0.0;
        for (const auto& obj : objects) c += obj.contrast_at(p);
        eps[idx] = 1.0 + c;
    }
    return eps;
}

std::pair<Point3, Point3> Scene::bounds() const {
    Point3 lo{0, 0, 0}, hi{0, 0, 0};
    bool first = true;
    for (const auto& obj : objects) {
        const auto [a, b] = obj.bounds();
        for (int d = 0; d < 3; ++d) {
            lo[d] = first ? a[d] : std::min(lo[d], a[d]);
            hi[d] = first ? b[d] : std::max(hi[d], b[d]);
        }
        first = false;
    }
    return {lo, hi};
}

double Scene::max_eps() const {
    double m = 1.0;
    for (const auto& obj : objects) m = std::max(m, obj.eps);
    return m;
}

} // namespace gcm
