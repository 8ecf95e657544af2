#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace gcm {

using Point3 = std::array<double, 3>;

/// Axis-aligned box sampled by a uniform node lattice.
///
/// Lengths are dimensionless (1 unit = 10 cm). Nodes sit on the box bounds, so
/// the spacing along x is (x_max - x_min) / (nx - 1). Linear node indices are
/// x-fastest: index = i + nx * (j + ny * k). Every field type shares this layout.
///
/// The backscatter face Gamma is the face z = z_min, closest to the source.
struct Domain {
    double x_min = -2.5, x_max = 2.5;
    double y_min = -2.5, y_max = 2.5;
    double z_min = -0.75, z_max = 4.25;
    int nx = 51, ny = 51, nz = 51;

    /// Throws InvalidArgument if the bounds are inverted or an axis has < 2 nodes.
    void validate() const;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
    double dz() const { return (z_max - z_min) / (nz - 1); }
    std::array<double, 3> spacing() const { return {dx(), dy(), dz()}; }
    std::array<int, 3> shape() const { return {nx, ny, nz}; }

    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    double z(int k) const { return z_min + k * dz(); }
    double z_gamma() const { return z_min; }

    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }
    std::size_t index(int i, int j, int k) const {
        return static_cast<std::size_t>(i) +
               static_cast<std::size_t>(nx) *
                   (static_cast<std::size_t>(j) + static_cast<std::size_t>(ny) * k);
    }
    std::array<int, 3> unravel(std::size_t idx) const {
        const int i = static_cast<int>(idx % nx);
        const std::size_t rest = idx / nx;
        return {i, static_cast<int>(rest % ny), static_cast<int>(rest / ny)};
    }
    Point3 point(int i, int j, int k) const { return {x(i), y(j), z(k)}; }
    Point3 point(std::size_t idx) const {
        const auto [i, j, k] = unravel(idx);
        return point(i, j, k);
    }
    bool on_boundary(int i, int j, int k) const {
        return i == 0 || j == 0 || k == 0 || i == nx - 1 || j == ny - 1 || k == nz - 1;
    }

    /// Trapezoid quadrature weight of a node (cell volume halved per face it lies on).
    double trapezoid_weight(int i, int j, int k) const;

    bool operator==(const Domain&) const = default;
};

/// Node coordinates in linear-index order.
std::vector<Point3> grid_coordinates(const Domain& domain);

/// Inclusive node-index box [lo, hi] inside a Domain lattice.
struct IndexBox {
    std::array<int, 3> lo{0, 0, 0};
    std::array<int, 3> hi{-1, -1, -1};

    bool empty() const { return hi[0] < lo[0] || hi[1] < lo[1] || hi[2] < lo[2]; }
    std::array<int, 3> extent() const {
        return {hi[0] - lo[0] + 1, hi[1] - lo[1] + 1, hi[2] - lo[2] + 1};
    }
    std::size_t size() const {
        if (empty()) return 0;
        const auto e = extent();
        return static_cast<std::size_t>(e[0]) * e[1] * e[2];
    }
    bool contains(int i, int j, int k) const {
        return i >= lo[0] && i <= hi[0] && j >= lo[1] && j <= hi[1] && k >= lo[2] &&
               k <= hi[2];
    }
    void include(int i, int j, int k);
};

} // namespace gcm
