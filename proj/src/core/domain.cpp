#include "gcm/domain.hpp"

#include <algorithm>

#include "gcm/error.hpp"

namespace gcm {

void Domain::validate() const {
    if (!(x_min < x_max) || !(y_min < y_max) || !(z_min < z_max)) {
        throw InvalidArgument("domain bounds must satisfy min < max on every axis");
    }
    if (nx < 2 || ny < 2 || nz < 2) {
        throw InvalidArgument("domain needs at least 2 nodes per axis");
    }
}

double Domain::trapezoid_weight(int i, int j, int k) const {
    double w = dx() * dy() * dz();
    if (i == 0 || i == nx - 1) w *= 0.5;
    if (j == 0 || j == ny - 1) w *= 0.5;
    if (k == 0 || k == nz - 1) w *= 0.5;
    return w;
}

std::vector<Point3> grid_coordinates(const Domain& domain) {
    domain.validate();
    std::vector<Point3> points;
    points.reserve(domain.size());
    for (int k = 0; k < domain.nz; ++k)
        for (int j = 0; j < domain.ny; ++j)
            for (int i = 0; i < domain.nx; ++i) points.push_back(domain.point(i, j, k));
    return points;
}

void IndexBox::include(int i, int j, int k) {
    if (empty()) {
        lo = {i, j, k};
        hi = {i, j, k};
        return;
    }
    const std::array<int, 3> p{i, j, k};
    for (int d = 0; d < 3; ++d) {
        lo[d] = std::min(lo[d], p[d]);
        hi[d] = std::max(hi[d], p[d]);
    }
}

} // namespace gcm
