#include "gcm/lippmann_schwinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcm/error.hpp"
#include "gcm/green.hpp"

namespace gcm {

namespace {

using namespace std::complex_literals;

template <class F>
void for_each_node(const IndexBox& box, F&& f) {
    std::size_t n = 0;
    for (int k = box.lo[2]; k <= box.hi[2]; ++k)
        for (int j = box.lo[1]; j <= box.hi[1]; ++j)
            for (int i = box.lo[0]; i <= box.hi[0]; ++i) f(i, j, k, n++);
}

IndexBox full_box(const Domain& d) { return {{0, 0, 0}, {d.nx - 1, d.ny - 1, d.nz - 1}}; }

std::array<int, 3> choose_periodic_shape(const Domain& domain, const IndexBox& source,
                                         const IndexBox& target, double& rho) {
    const auto h = domain.spacing();
    const double hmax = std::max({h[0], h[1], h[2]});
    double far2 = 0.0, diam2 = 0.0;
    std::array<double, 3> span{};
    for (int d = 0; d < 3; ++d) {
        const double far = std::max(target.hi[d] - source.lo[d], source.hi[d] - target.lo[d]) * h[d];
        far2 += far * far;
        const double ext = (source.hi[d] - source.lo[d]) * h[d];
        diam2 += ext * ext;
        span[d] = (std::max(source.hi[d], target.hi[d]) - std::min(source.lo[d], target.lo[d])) * h[d];
    }
    // The sampled source is the trace of a function whose support reaches about
    // one cell past the outermost nodes; pad the truncation radius accordingly.
    rho = std::sqrt(far2) + 2.0 * hmax;
    const double source_diameter = std::sqrt(diam2) + 2.0 * hmax;
    std::array<int, 3> shape{};
    for (int d = 0; d < 3; ++d) {
        const double side = std::max(span[d] + rho + h[d], 2.0 * source_diameter);
        shape[d] = fft_friendly_size(static_cast<int>(std::ceil(side / h[d])) + 1);
    }
    return shape;
}

} // namespace

std::vector<Point3> box_points(const Domain& domain, const IndexBox& box) {
    std::vector<Point3> pts;
    pts.reserve(box.size());
    for_each_node(box, [&](int i, int j, int k, std::size_t) { pts.push_back(domain.point(i, j, k)); });
    return pts;
}

PeriodizedGreenConvolution::PeriodizedGreenConvolution(const Domain& domain, const IndexBox& source,
                                                       const IndexBox& target, double k)
    : domain_(domain), source_(source), target_(target), rho_(0.0),
      fft_(choose_periodic_shape(domain, source, target, rho_)) {
    if (source.empty() || target.empty()) throw InvalidArgument("periodized convolution: empty box");
    for (int d = 0; d < 3; ++d) origin_[d] = std::min(source.lo[d], target.lo[d]);

    const auto shape = fft_.shape();
    const auto h = domain.spacing();
    const double scale = 1.0 / static_cast<double>(fft_.size());
    spectrum_.resize(fft_.size());
    std::array<std::vector<double>, 3> xi;
    for (int d = 0; d < 3; ++d) {
        xi[d].resize(shape[d]);
        const double side = shape[d] * h[d];
        for (int a = 0; a < shape[d]; ++a) {
            const int n = a <= shape[d] / 2 ? a : a - shape[d];
            xi[d][a] = 2.0 * std::numbers::pi * n / side;
        }
    }
    std::size_t idx = 0;
    for (int c = 0; c < shape[2]; ++c)
        for (int b = 0; b < shape[1]; ++b)
            for (int a = 0; a < shape[0]; ++a, ++idx) {
                const double s = std::sqrt(xi[0][a] * xi[0][a] + xi[1][b] * xi[1][b] + xi[2][c] * xi[2][c]);
                spectrum_[idx] = truncated_green_spectrum(s, k, rho_) * scale;
            }
}

void PeriodizedGreenConvolution::apply(std::span<const cplx> source_values,
                                       std::span<cplx> target_values) {
    if (source_values.size() != source_.size() || target_values.size() != target_.size()) {
        throw InvalidArgument("periodized convolution: buffer sizes do not match the boxes");
    }
    const auto shape = fft_.shape();
    auto buf = fft_.data();
    std::fill(buf.begin(), buf.end(), cplx{});
    const auto periodic = [&](int i, int j, int k) {
        return static_cast<std::size_t>(i - origin_[0]) +
               static_cast<std::size_t>(shape[0]) *
                   (static_cast<std::size_t>(j - origin_[1]) + static_cast<std::size_t>(shape[1]) * (k - origin_[2]));
    };
    for_each_node(source_, [&](int i, int j, int k, std::size_t n) { buf[periodic(i, j, k)] = source_values[n]; });
    fft_.forward();
    for (std::size_t t = 0; t < buf.size(); ++t) buf[t] *= spectrum_[t];
    fft_.backward();
    for_each_node(target_, [&](int i, int j, int k, std::size_t n) { target_values[n] = buf[periodic(i, j, k)]; });
}

LSOperatorContext::LSOperatorContext(const PermittivityField& eps, double k, KrylovSettings settings)
    : domain_(eps.domain()), k_(k), settings_(settings), support_(eps.contrast_support()) {
    if (!(k > 0.0)) throw InvalidArgument("Lippmann-Schwinger: wavenumber must be positive");
    if (support_.empty()) throw InvalidArgument("Lippmann-Schwinger: contrast is identically zero");
    contrast_.resize(support_.size());
    for_each_node(support_, [&](int i, int j, int kk, std::size_t n) { contrast_[n] = eps(i, j, kk) - 1.0; });
    kernel_ = std::make_unique<PeriodizedGreenConvolution>(domain_, support_, support_, k);
    work_.resize(support_.size());
}

void LSOperatorContext::apply(std::span<const cplx> x, std::span<cplx> y) {
    for (std::size_t n = 0; n < x.size(); ++n) work_[n] = contrast_[n] * x[n];
    kernel_->apply(work_, y);
    const double k2 = k_ * k_;
    for (std::size_t n = 0; n < x.size(); ++n) y[n] = x[n] - k2 * y[n];
}

SupportSolution solve_on_support(const PermittivityField& eps, double k, const KrylovSettings& settings) {
    LSOperatorContext ctx(eps, k, settings);
    const Domain& d = eps.domain();
    SupportSolution sol;
    sol.support = ctx.support();
    std::vector<cplx> rhs(sol.support.size());
    for_each_node(sol.support, [&](int, int, int kk, std::size_t n) { rhs[n] = std::exp(1i * (k * d.z(kk))); });
    sol.u = rhs;
    sol.report = gmres([&](std::span<const cplx> x, std::span<cplx> y) { ctx.apply(x, y); }, rhs, sol.u,
                       settings);
    if (!sol.report.converged) {
        throw ConvergenceError("Lippmann-Schwinger solve did not converge", sol.report.residual,
                               sol.report.history);
    }
    return sol;
}

ComplexField solve_total_field(const PermittivityField& eps, double k, const KrylovSettings& settings,
                               KrylovReport* report) {
    const Domain& d = eps.domain();
    ComplexField u(d);
    for (std::size_t idx = 0; idx < u.size(); ++idx) u[idx] = std::exp(1i * (k * d.point(idx)[2]));
    const IndexBox support = eps.contrast_support();
    if (support.empty()) {
        if (report) *report = KrylovReport{true, 0, 0.0, {}};
        return u;
    }
    SupportSolution sol = solve_on_support(eps, k, settings);
    if (report) *report = sol.report;

    std::vector<cplx> source(support.size());
    for_each_node(support, [&](int i, int j, int kk, std::size_t n) { source[n] = (eps(i, j, kk) - 1.0) * sol.u[n]; });
    const IndexBox all = full_box(d);
    PeriodizedGreenConvolution extension(d, support, all, k);
    std::vector<cplx> scattered(all.size());
    extension.apply(source, scattered);
    const double k2 = k * k;
    for (std::size_t idx = 0; idx < u.size(); ++idx) u[idx] += k2 * scattered[idx];
    return u;
}

namespace {

std::vector<cplx> exterior_sum(const Domain& d, const IndexBox& support, const std::vector<cplx>& weighted,
                               double k, std::span<const Point3> points) {
    const auto h = d.spacing();
    for (const auto& p : points) {
        bool inside = true;
        for (int dim = 0; dim < 3; ++dim) {
            const double lo = (dim == 0 ? d.x(support.lo[0]) : dim == 1 ? d.y(support.lo[1]) : d.z(support.lo[2])) - 0.5 * h[dim];
            const double hi = (dim == 0 ? d.x(support.hi[0]) : dim == 1 ? d.y(support.hi[1]) : d.z(support.hi[2])) + 0.5 * h[dim];
            if (p[dim] < lo || p[dim] > hi) inside = false;
        }
        if (inside) throw DomainError("evaluate_exterior: point lies inside the contrast support");
    }
    const std::vector<Point3> nodes = box_points(d, support);
    const double k2 = k * k;
    std::vector<cplx> out(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        cplx acc{};
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            if (weighted[n] == cplx{}) continue;
            acc += green_function(points[p], nodes[n], k) * weighted[n];
        }
        out[p] = std::exp(1i * (k * points[p][2])) + k2 * acc;
    }
    return out;
}

} // namespace

std::vector<cplx> evaluate_exterior(const ComplexField& u_interior, const PermittivityField& eps, double k,
                                    std::span<const Point3> points) {
    require_same_domain(u_interior.domain(), eps.domain(), "evaluate_exterior");
    const Domain& d = eps.domain();
    const IndexBox support = eps.contrast_support();
    std::vector<cplx> out(points.size());
    if (support.empty()) {
        for (std::size_t p = 0; p < points.size(); ++p) out[p] = std::exp(1i * (k * points[p][2]));
        return out;
    }
    const double dv = d.dx() * d.dy() * d.dz();
    std::vector<cplx> weighted(support.size());
    for_each_node(support, [&](int i, int j, int kk, std::size_t n) {
        weighted[n] = (eps(i, j, kk) - 1.0) * u_interior(i, j, kk) * dv;
    });
    return exterior_sum(d, support, weighted, k, points);
}

std::vector<cplx> evaluate_exterior(const SupportSolution& solution, const PermittivityField& eps, double k,
                                    std::span<const Point3> points) {
    const Domain& d = eps.domain();
    const IndexBox& support = solution.support;
    const double dv = d.dx() * d.dy() * d.dz();
    std::vector<cplx> weighted(support.size());
    for_each_node(support, [&](int i, int j, int kk, std::size_t n) {
        weighted[n] = (eps(i, j, kk) - 1.0) * solution.u[n] * dv;
    });
    return exterior_sum(d, support, weighted, k, points);
}

} // namespace gcm
