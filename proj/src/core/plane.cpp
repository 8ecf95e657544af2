#include "gcm/plane.hpp"

#include <algorithm>
#include <cmath>

#include "gcm/error.hpp"
#include "gcm/region.hpp"

namespace gcm {

void PlaneGeometry::validate() const {
    if (nx < 1 || ny < 1) throw InvalidArgument("plane lattice needs at least one sample per axis");
    if ((nx > 1 && !(x_min < x_max)) || (ny > 1 && !(y_min < y_max))) {
        throw InvalidArgument("plane rectangle bounds must satisfy min < max");
    }
}

PlaneGeometry gamma_face(const Domain& domain) {
    return {domain.x_min, domain.x_max, domain.y_min, domain.y_max,
            domain.nx,    domain.ny,    domain.z_gamma()};
}

double PlaneField::max_abs() const {
    double m = 0.0;
    for (const auto& v : data) m = std::max(m, std::abs(v));
    return m;
}

std::size_t PlaneField::argmax_abs() const {
    std::size_t best = 0;
    double m = -1.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double a = std::abs(data[i]);
        if (a > m) {
            m = a;
            best = i;
        }
    }
    return best;
}

void PlaneDataset::validate() const {
    geometry.validate();
    if (rows.size() != wavenumbers.size()) {
        throw SchemaError("plane dataset: one data row per wavenumber required");
    }
    for (std::size_t w = 0; w < rows.size(); ++w) {
        if (rows[w].size() != geometry.size()) {
            throw SchemaError("plane dataset: row length differs from the plane sample count");
        }
        if (w > 0 && !(wavenumbers[w] > wavenumbers[w - 1])) {
            throw SchemaError("plane dataset: wavenumbers must be strictly increasing");
        }
    }
}

PlaneField PlaneDataset::field(std::size_t w) const {
    PlaneField f;
    f.geometry = geometry;
    f.data = rows.at(w);
    return f;
}

void PlaneDataset::set_field(std::size_t w, const PlaneField& f) {
    if (!(f.geometry == geometry)) throw InvalidArgument("plane dataset: geometry mismatch");
    rows.at(w) = f.data;
}

std::size_t PlaneDataset::nearest(double k) const {
    if (wavenumbers.empty()) throw InvalidArgument("plane dataset is empty");
    std::size_t best = 0;
    for (std::size_t w = 1; w < wavenumbers.size(); ++w) {
        if (std::abs(wavenumbers[w] - k) < std::abs(wavenumbers[best] - k)) best = w;
    }
    return best;
}

PlaneField resample(const PlaneField& f, const PlaneGeometry& target) {
    const PlaneGeometry& src = f.geometry;
    PlaneField out(target);
    const double tol = 1e-9;
    for (int j = 0; j < target.ny; ++j) {
        for (int i = 0; i < target.nx; ++i) {
            const double x = target.x(i);
            const double y = target.y(j);
            double fx = src.nx > 1 ? (x - src.x_min) / src.dx() : 0.0;
            double fy = src.ny > 1 ? (y - src.y_min) / src.dy() : 0.0;
            if (fx < -tol || fy < -tol || fx > src.nx - 1 + tol || fy > src.ny - 1 + tol) continue;
            fx = std::clamp(fx, 0.0, double(src.nx - 1));
            fy = std::clamp(fy, 0.0, double(src.ny - 1));
            const int i0 = std::min(static_cast<int>(std::floor(fx)), std::max(src.nx - 2, 0));
            const int j0 = std::min(static_cast<int>(std::floor(fy)), std::max(src.ny - 2, 0));
            const int i1 = std::min(i0 + 1, src.nx - 1);
            const int j1 = std::min(j0 + 1, src.ny - 1);
            const double tx = fx - i0, ty = fy - j0;
            out(i, j) = (1 - tx) * (1 - ty) * f(i0, j0) + tx * (1 - ty) * f(i1, j0) +
                        (1 - tx) * ty * f(i0, j1) + tx * ty * f(i1, j1);
        }
    }
    return out;
}

bool TargetRegion::contains(double x, double y) const {
    const double fx = lattice.nx > 1 ? (x - lattice.x_min) / lattice.dx() : 0.0;
    const double fy = lattice.ny > 1 ? (y - lattice.y_min) / lattice.dy() : 0.0;
    const long i = std::lround(fx);
    const long j = std::lround(fy);
    if (i < 0 || j < 0 || i >= lattice.nx || j >= lattice.ny) return false;
    if (std::abs(fx - i) > 0.5 + 1e-9 || std::abs(fy - j) > 0.5 + 1e-9) return false;
    return mask[lattice.index(static_cast<int>(i), static_cast<int>(j))] != 0;
}

std::size_t TargetRegion::count() const {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

void TargetRegion::update_bounds() {
    bool first = true;
    for (int j = 0; j < lattice.ny; ++j) {
        for (int i = 0; i < lattice.nx; ++i) {
            if (!mask[lattice.index(i, j)]) continue;
            const double x = lattice.x(i), y = lattice.y(j);
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            }
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
}

TargetRegion full_region(const PlaneGeometry& lattice) {
    TargetRegion r;
    r.lattice = lattice;
    r.mask.assign(lattice.size(), 1);
    r.update_bounds();
    return r;
}

} // namespace gcm
