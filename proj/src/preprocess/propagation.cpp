#include <cmath>
#include <numbers>

#include "gcm/error.hpp"
#include "gcm/fft.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

namespace {

// Signed angular frequency of DFT bin m on an n-point grid with spacing d.
double bin_frequency(int m, int n, double d) {
    const int s = m <= n / 2 ? m : m - n;
    return 2.0 * std::numbers::pi * s / (n * d);
}

// Transforms g, multiplies each propagating mode by multiplier(k_z), zeroes the
// evanescent ones and transforms back.
template <class Multiplier>
PlaneField spectral_filter(const PlaneField& g, double k, int pad_factor, Multiplier multiplier) {
    const PlaneGeometry& geo = g.geometry;
    geo.validate();
    if (g.data.size() != geo.size()) throw InvalidArgument("plane field size does not match its geometry");
    if (!(k > 0.0)) throw InvalidArgument("propagation needs a positive wavenumber");
    if (pad_factor < 1) throw InvalidArgument("pad factor must be >= 1");
    if (geo.nx < 2 || geo.ny < 2) throw InvalidArgument("propagation needs at least 2x2 samples");

    const int mx = pad_factor == 1 ? geo.nx : fft_friendly_size(pad_factor * geo.nx);
    const int my = pad_factor == 1 ? geo.ny : fft_friendly_size(pad_factor * geo.ny);
    Fft2d fft(mx, my);
    auto buf = fft.data();
    std::fill(buf.begin(), buf.end(), cplx{});
    for (int j = 0; j < geo.ny; ++j)
        for (int i = 0; i < geo.nx; ++i) buf[i + static_cast<std::size_t>(mx) * j] = g(i, j);
    fft.forward();

    const double k2 = k * k;
    const double norm = 1.0 / (static_cast<double>(mx) * my);
    for (int j = 0; j < my; ++j) {
        const double ky = bin_frequency(j, my, geo.dy());
        for (int i = 0; i < mx; ++i) {
            const double kx = bin_frequency(i, mx, geo.dx());
            const double t = kx * kx + ky * ky;
            cplx& c = buf[i + static_cast<std::size_t>(mx) * j];
            if (t < k2)
                c *= multiplier(std::sqrt(k2 - t)) * norm;
            else
                c = 0.0;
        }
    }
    fft.backward();

    PlaneField out(geo);
    for (int j = 0; j < geo.ny; ++j)
        for (int i = 0; i < geo.nx; ++i) out(i, j) = buf[i + static_cast<std::size_t>(mx) * j];
    return out;
}

} // namespace

PlaneField angular_spectrum_shift(const PlaneField& g, double k, double target_z, PropagationSign sign,
                                  int pad_factor) {
    const double dist = target_z - g.geometry.z_level;
    const double s = sign == PropagationSign::outgoing ? -1.0 : 1.0;
    PlaneField out = spectral_filter(g, k, pad_factor, [&](double kz) { return std::exp(cplx(0.0, s * kz * dist)); });
    out.geometry.z_level = target_z;
    return out;
}

PlaneField propagate_plane(const PlaneField& g, double k, double target_z, PropagationSign sign, int pad_factor) {
    if (target_z < g.geometry.z_level)
        throw InvalidArgument("propagation must move toward the target (target_z >= z_level)");
    return angular_spectrum_shift(g, k, target_z, sign, pad_factor);
}

PlaneField band_limit(const PlaneField& g, double k, int pad_factor) {
    return spectral_filter(g, k, pad_factor, [](double) { return cplx(1.0, 0.0); });
}

PlaneDataset propagate_dataset(const PlaneDataset& g, double target_z, PropagationSign sign, int pad_factor) {
    g.validate();
    PlaneDataset out;
    out.geometry = g.geometry;
    out.geometry.z_level = target_z;
    out.wavenumbers = g.wavenumbers;
    out.rows.resize(g.count());
    for (std::size_t w = 0; w < g.count(); ++w)
        out.rows[w] = propagate_plane(g.field(w), g.wavenumbers[w], target_z, sign, pad_factor).data;
    return out;
}

} // namespace gcm
