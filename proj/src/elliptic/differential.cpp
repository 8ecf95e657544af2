#include "gcm/elliptic.hpp"

#include "gcm/error.hpp"

namespace gcm {

namespace {

// Derivative along axis `axis` at node (i,j,k) with stride s and spacing h.
inline cplx first_diff(const ComplexField& f, std::size_t idx, int pos, int n, std::size_t s, double h) {
    if (pos == 0) return (f[idx + s] - f[idx]) / h;
    if (pos == n - 1) return (f[idx] - f[idx - s]) / h;
    return (f[idx + s] - f[idx - s]) / (2.0 * h);
}

inline cplx second_diff(const ComplexField& f, std::size_t idx, int pos, int n, std::size_t s, double h) {
    if (pos == 0) return (f[idx] - 2.0 * f[idx + s] + f[idx + 2 * s]) / (h * h);
    if (pos == n - 1) return (f[idx] - 2.0 * f[idx - s] + f[idx - 2 * s]) / (h * h);
    return (f[idx + s] - 2.0 * f[idx] + f[idx - s]) / (h * h);
}

void require_three(const Domain& d) {
    if (d.nx < 3 || d.ny < 3 || d.nz < 3) throw InvalidArgument("difference operators need >= 3 nodes per axis");
}

} // namespace

VectorField gradient(const ComplexField& f) {
    const Domain& d = f.domain();
    require_three(d);
    VectorField g = make_vector_field(d);
    const std::size_t sx = 1, sy = d.nx, sz = static_cast<std::size_t>(d.nx) * d.ny;
    std::size_t idx = 0;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i, ++idx) {
                g[0][idx] = first_diff(f, idx, i, d.nx, sx, d.dx());
                g[1][idx] = first_diff(f, idx, j, d.ny, sy, d.dy());
                g[2][idx] = first_diff(f, idx, k, d.nz, sz, d.dz());
            }
    return g;
}

ComplexField laplacian(const ComplexField& f) {
    const Domain& d = f.domain();
    require_three(d);
    ComplexField out(d);
    const std::size_t sx = 1, sy = d.nx, sz = static_cast<std::size_t>(d.nx) * d.ny;
    std::size_t idx = 0;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i, ++idx) {
                out[idx] = second_diff(f, idx, i, d.nx, sx, d.dx()) + second_diff(f, idx, j, d.ny, sy, d.dy()) +
                           second_diff(f, idx, k, d.nz, sz, d.dz());
            }
    return out;
}

ComplexField divergence(const VectorField& v) {
    const Domain& d = v[0].domain();
    require_three(d);
    ComplexField out(d);
    const std::size_t sx = 1, sy = d.nx, sz = static_cast<std::size_t>(d.nx) * d.ny;
    std::size_t idx = 0;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i, ++idx) {
                out[idx] = first_diff(v[0], idx, i, d.nx, sx, d.dx()) + first_diff(v[1], idx, j, d.ny, sy, d.dy()) +
                           first_diff(v[2], idx, k, d.nz, sz, d.dz());
            }
    return out;
}

} // namespace gcm
