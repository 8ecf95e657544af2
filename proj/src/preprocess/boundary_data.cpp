#include <cmath>
#include <limits>
#include <sstream>

#include "gcm/error.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

TargetRegion estimate_target_region(const PlaneField& f, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw InvalidArgument("target threshold must lie in (0, 1]");
    const double m = f.max_abs();
    if (m == 0.0) throw InvalidArgument("cannot estimate a target region from an all-zero field");
    TargetRegion r;
    r.lattice = f.geometry;
    r.mask.assign(f.data.size(), 0);
    for (std::size_t s = 0; s < f.data.size(); ++s) {
        const double a = std::abs(f.data[s]);
        if (a > threshold * m || a == m) r.mask[s] = 1;
    }
    r.update_bounds();
    return r;
}

namespace {

void require_gamma_lattice(const PlaneField& g, const Domain& domain) {
    const PlaneGeometry face = gamma_face(domain);
    const PlaneGeometry& geo = g.geometry;
    if (geo.nx != face.nx || geo.ny != face.ny || std::abs(geo.x_min - face.x_min) > 1e-9 ||
        std::abs(geo.x_max - face.x_max) > 1e-9 || std::abs(geo.y_min - face.y_min) > 1e-9 ||
        std::abs(geo.y_max - face.y_max) > 1e-9)
        throw InvalidArgument("boundary data must be sampled on the z = z_min face lattice");
    if (g.data.size() != geo.size()) throw InvalidArgument("plane field size does not match its geometry");
}

BoundaryField complete(const PlaneField& g, const Domain& domain, const std::function<cplx(const Point3&)>& off) {
    domain.validate();
    require_gamma_lattice(g, domain);
    BoundaryField b = BoundaryField::from_function(domain, off);
    b.z_lo = g.data;
    return b;
}

} // namespace

BoundaryField complete_boundary_data(const PlaneField& g_on_gamma, double k, const Domain& domain) {
    return complete(g_on_gamma, domain, [k](const Point3& p) { return std::exp(cplx(0.0, k * p[2])); });
}

BoundaryField complete_psi_boundary(const PlaneField& psi_on_gamma, const Domain& domain) {
    return complete(psi_on_gamma, domain, [](const Point3& p) { return cplx(0.0, p[2]); });
}

PlaneDataset sweep_derivative(const PlaneDataset& g) {
    g.validate();
    const std::size_t n = g.count();
    if (n < 2) throw InvalidArgument("differentiating in k needs at least two sweep wavenumbers");
    const auto& k = g.wavenumbers;
    PlaneDataset d = g;
    const std::size_t m = g.geometry.size();
    auto combine = [&](std::size_t w, std::size_t a, double ca, std::size_t b, double cb, std::size_t c, double cc) {
        for (std::size_t s = 0; s < m; ++s) d.rows[w][s] = ca * g.rows[a][s] + cb * g.rows[b][s] + cc * g.rows[c][s];
    };
    if (n == 2) {
        const double h = k[1] - k[0];
        combine(0, 0, -1.0 / h, 1, 1.0 / h, 1, 0.0);
        combine(1, 0, -1.0 / h, 1, 1.0 / h, 1, 0.0);
        return d;
    }
    for (std::size_t w = 1; w + 1 < n; ++w) {
        const double h1 = k[w] - k[w - 1], h2 = k[w + 1] - k[w];
        combine(w, w - 1, -h2 / (h1 * (h1 + h2)), w, (h2 - h1) / (h1 * h2), w + 1, h1 / (h2 * (h1 + h2)));
    }
    {
        const double h1 = k[1] - k[0], h2 = k[2] - k[1];
        combine(0, 0, -(2 * h1 + h2) / (h1 * (h1 + h2)), 1, (h1 + h2) / (h1 * h2), 2, -h1 / (h2 * (h1 + h2)));
    }
    {
        const double h1 = k[n - 1] - k[n - 2], h2 = k[n - 2] - k[n - 3];
        combine(n - 1, n - 1, (2 * h1 + h2) / (h1 * (h1 + h2)), n - 2, -(h1 + h2) / (h1 * h2), n - 3,
                h1 / (h2 * (h1 + h2)));
    }
    return d;
}

namespace {

// Linear interpolation of dataset rows at wavenumber kq.
std::vector<cplx> interpolate_row(const PlaneDataset& g, double kq) {
    const auto& k = g.wavenumbers;
    const double tol = 1e-9 * std::max(1.0, std::abs(kq));
    if (kq < k.front() - tol || kq > k.back() + tol) {
        std::ostringstream msg;
        msg << "wavenumber " << kq << " lies outside the sweep [" << k.front() << ", " << k.back() << "]";
        throw InvalidArgument(msg.str());
    }
    std::size_t w = 0;
    while (w + 1 < k.size() && k[w + 1] < kq - tol) ++w;
    if (std::abs(k[w] - kq) <= tol) return g.rows[w];
    if (w + 1 < k.size() && std::abs(k[w + 1] - kq) <= tol) return g.rows[w + 1];
    const double t = (kq - k[w]) / (k[w + 1] - k[w]);
    std::vector<cplx> out(g.rows[w].size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = (1.0 - t) * g.rows[w][s] + t * g.rows[w + 1][s];
    return out;
}

constexpr double kGuard = 1e-12;

void guard_divisor(const std::vector<cplx>& g, const PlaneGeometry& geo, double k) {
    std::ostringstream bad;
    int count = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (std::abs(g[s]) >= kGuard) continue;
        if (count < 20) bad << " (" << geo.x(static_cast<int>(s % geo.nx)) << ", " << geo.y(static_cast<int>(s / geo.nx)) << ")";
        ++count;
    }
    if (count > 0) {
        std::ostringstream msg;
        msg << "|g| < 1e-12 at " << count << " samples for k = " << k << ":" << bad.str();
        throw DivisionGuard(msg.str());
    }
}

} // namespace

PsiData compute_psi(const PlaneDataset& g, const WavenumberPartition& partition, PsiRule rule) {
    const PlaneDataset dg = sweep_derivative(g);
    PsiData out;
    out.geometry = g.geometry;
    out.wavenumbers = partition.values;
    const std::size_t m = g.geometry.size();

    if (rule == PsiRule::pointwise) {
        PlaneDataset ratio = g;
        for (std::size_t w = 0; w < g.count(); ++w) {
            guard_divisor(g.rows[w], g.geometry, g.wavenumbers[w]);
            for (std::size_t s = 0; s < m; ++s) ratio.rows[w][s] = dg.rows[w][s] / g.rows[w][s];
        }
        for (double kn : partition.values) {
            PlaneField f(g.geometry);
            f.data = interpolate_row(ratio, kn);
            out.psi.push_back(std::move(f));
        }
        return out;
    }

    std::vector<std::vector<cplx>> gk, dgk;
    for (double kn : partition.values) {
        gk.push_back(interpolate_row(g, kn));
        dgk.push_back(interpolate_row(dg, kn));
    }
    std::vector<double> peak_per_sample(m, 0.0);
    for (const auto& row : dgk)
        for (std::size_t s = 0; s < m; ++s) peak_per_sample[s] = std::max(peak_per_sample[s], std::abs(row[s]));

    // Scan candidates from the smallest wavenumber so ties (to rounding) go to the smaller one.
    std::size_t best = partition.values.size();
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t c = partition.values.size(); c-- > 0;) {
        double worst = 0.0;
        for (std::size_t s = 0; s < m; ++s) {
            const double den = std::abs(gk[c][s]);
            if (den < kGuard) {
                if (peak_per_sample[s] > 0.0) worst = std::numeric_limits<double>::infinity();
                continue;
            }
            worst = std::max(worst, peak_per_sample[s] / den);
        }
        if (worst < best_value * (1.0 - 1e-9)) {
            best_value = worst;
            best = c;
        }
    }
    if (best == partition.values.size()) best = partition.values.size() - 1;
    out.k_star = partition.values[best];
    guard_divisor(gk[best], g.geometry, out.k_star);
    for (std::size_t n = 0; n < partition.values.size(); ++n) {
        PlaneField f(g.geometry);
        for (std::size_t s = 0; s < m; ++s) f.data[s] = dgk[n][s] / gk[best][s];
        out.psi.push_back(std::move(f));
    }
    return out;
}

} // namespace gcm
