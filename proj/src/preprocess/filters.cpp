#include <cmath>

#include "gcm/error.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

PlaneField truncate_field(const PlaneField& f, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("truncation threshold must lie in (0, 1]");
    const double m = f.max_abs();
    if (m == 0.0) throw InvalidArgument("cannot truncate an all-zero field");
    PlaneField out = f;
    const double cut = threshold * m;
    for (auto& v : out.data)
        if (std::abs(v) < cut) v = 0.0;
    return out;
}

std::vector<double> gaussian_kernel_1d(int size, double sigma) {
    if (size < 1 || size % 2 == 0) throw InvalidArgument("Gaussian kernel size must be a positive odd count");
    if (!(sigma > 0.0)) throw InvalidArgument("Gaussian sigma must be positive");
    const int r = size / 2;
    std::vector<double> w(size);
    double sum = 0.0;
    for (int t = -r; t <= r; ++t) sum += w[t + r] = std::exp(-0.5 * t * t / (sigma * sigma));
    for (auto& v : w) v /= sum;
    return w;
}

namespace {

// Half-sample symmetric reflection: ... b a | a b c ... c | c b ...
int reflect(int i, int n) {
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

// Filters one axis of an x-fastest array with extents `shape`.
template <class T>
void filter_axis(std::vector<T>& data, const std::vector<int>& shape, int axis, const std::vector<double>& w) {
    const int r = static_cast<int>(w.size()) / 2;
    const int n = shape[axis];
    std::size_t stride = 1;
    for (int a = 0; a < axis; ++a) stride *= shape[a];
    const std::size_t total = data.size();
    std::vector<T> line(n), out(n);
    for (std::size_t base = 0; base < total; ++base) {
        if ((base / stride) % n != 0) continue;  // first element of a line along `axis`
        for (int i = 0; i < n; ++i) line[i] = data[base + i * stride];
        for (int i = 0; i < n; ++i) {
            T acc{};
            for (int t = -r; t <= r; ++t) acc += w[t + r] * line[reflect(i + t, n)];
            out[i] = acc;
        }
        for (int i = 0; i < n; ++i) data[base + i * stride] = out[i];
    }
}

} // namespace

PlaneField gaussian_smooth(const PlaneField& f, const SmoothingSettings& s) {
    const auto w = gaussian_kernel_1d(s.kernel_size, s.sigma);
    PlaneField out = f;
    const std::vector<int> shape{f.geometry.nx, f.geometry.ny};
    filter_axis(out.data, shape, 0, w);
    filter_axis(out.data, shape, 1, w);
    return out;
}

RealField gaussian_smooth(const RealField& f, const SmoothingSettings& s) {
    const auto w = gaussian_kernel_1d(s.kernel_size, s.sigma);
    std::vector<double> data = f.raw();
    const Domain& d = f.domain();
    const std::vector<int> shape{d.nx, d.ny, d.nz};
    for (int a = 0; a < 3; ++a) filter_axis(data, shape, a, w);
    return RealField(d, std::move(data));
}

} // namespace gcm
