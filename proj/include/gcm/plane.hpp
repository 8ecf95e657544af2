#pragma once

#include <complex>
#include <vector>

#include "gcm/field.hpp"

namespace gcm {

/// Rectangle on a constant-z plane sampled by an nx-by-ny node lattice (x fastest).
struct PlaneGeometry {
    double x_min = -5.0, x_max = 5.0;
    double y_min = -5.0, y_max = 5.0;
    int nx = 51, ny = 51;
    double z_level = 0.0;

    void validate() const;
    double dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
    double dy() const { return ny > 1 ? (y_max - y_min) / (ny - 1) : 0.0; }
    double x(int i) const { return x_min + i * dx(); }
    double y(int j) const { return y_min + j * dy(); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx) * j; }

    bool operator==(const PlaneGeometry&) const = default;
};

/// The face z = z_min of a domain, sampled on the domain's own x/y nodes.
PlaneGeometry gamma_face(const Domain& domain);

/// One complex sample per lattice node.
struct PlaneField {
    PlaneGeometry geometry;
    std::vector<cplx> data;

    PlaneField() = default;
    explicit PlaneField(const PlaneGeometry& g, cplx fill = {})
        : geometry(g), data(g.size(), fill) {}

    cplx& operator()(int i, int j) { return data[geometry.index(i, j)]; }
    const cplx& operator()(int i, int j) const { return data[geometry.index(i, j)]; }
    double max_abs() const;
    std::size_t argmax_abs() const;
};

/// A plane field for each wavenumber of a sweep. Wavenumbers strictly increase.
struct PlaneDataset {
    PlaneGeometry geometry;
    std::vector<double> wavenumbers;
    std::vector<std::vector<cplx>> rows;  // rows[w][sample]

    void validate() const;
    std::size_t count() const { return wavenumbers.size(); }
    PlaneField field(std::size_t w) const;
    void set_field(std::size_t w, const PlaneField& f);
    /// Index of the wavenumber closest to k.
    std::size_t nearest(double k) const;
};

/// Bilinear resampling onto another lattice; samples outside the source rectangle are zero.
PlaneField resample(const PlaneField& f, const PlaneGeometry& target);

} // namespace gcm
