#include "oracles.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "gcm/error.hpp"
#include "gcm/preprocess.hpp"

namespace oracle {

using namespace std::complex_literals;
constexpr double pi = std::numbers::pi;

cplx truncated_green_spectrum(double s, double k, double rho) {
    const cplx e = std::exp(1i * (k * rho));
    if (s == 0.0) return (1.0 + e * (1i * k * rho - 1.0)) / (-k * k);
    return (1.0 + e * (1i * k * std::sin(s * rho) / s - std::cos(s * rho))) / (s * s - k * k);
}

std::vector<cplx> dense_collocation_solve(const gcm::PermittivityField& eps, double k) {
    const gcm::Domain& d = eps.domain();
    const gcm::IndexBox box = eps.contrast_support();
    gcm::PeriodizedGreenConvolution geometry(d, box, box, k);
    const auto shape = geometry.periodic_shape();
    const double rho = geometry.truncation_radius();
    const auto h = d.spacing();
    const auto ext = box.extent();

    std::array<std::vector<double>, 3> xi;
    for (int a = 0; a < 3; ++a) {
        for (int m = 0; m < shape[a]; ++m) {
            const int n = m <= shape[a] / 2 ? m : m - shape[a];
            xi[a].push_back(2.0 * pi * n / (shape[a] * h[a]));
        }
    }
    std::vector<cplx> spec;
    for (double z : xi[2])
        for (double y : xi[1])
            for (double x : xi[0]) spec.push_back(truncated_green_spectrum(std::sqrt(x * x + y * y + z * z), k, rho));
    const double total = static_cast<double>(spec.size());

    // Kernel at non-negative index offsets; the spectrum is even per axis, so
    // the trigonometric sum reduces to a product of cosines.
    std::vector<cplx> kern(static_cast<std::size_t>(ext[0]) * ext[1] * ext[2]);
    std::array<std::vector<double>, 3> c;
    for (int a = 0; a < 3; ++a) c[a].resize(static_cast<std::size_t>(ext[a]) * shape[a]);
    for (int a = 0; a < 3; ++a)
        for (int off = 0; off < ext[a]; ++off)
            for (int m = 0; m < shape[a]; ++m) c[a][off * shape[a] + m] = std::cos(xi[a][m] * off * h[a]);
    for (int o2 = 0; o2 < ext[2]; ++o2)
        for (int o1 = 0; o1 < ext[1]; ++o1)
            for (int o0 = 0; o0 < ext[0]; ++o0) {
                cplx acc{};
                std::size_t s = 0;
                for (int m2 = 0; m2 < shape[2]; ++m2) {
                    const double w2 = c[2][o2 * shape[2] + m2];
                    for (int m1 = 0; m1 < shape[1]; ++m1) {
                        const double w12 = w2 * c[1][o1 * shape[1] + m1];
                        for (int m0 = 0; m0 < shape[0]; ++m0, ++s) acc += spec[s] * (w12 * c[0][o0 * shape[0] + m0]);
                    }
                }
                kern[o0 + ext[0] * (o1 + ext[1] * o2)] = acc / total;
            }

    std::vector<std::array<int, 3>> nodes;
    for (int kk = box.lo[2]; kk <= box.hi[2]; ++kk)
        for (int j = box.lo[1]; j <= box.hi[1]; ++j)
            for (int i = box.lo[0]; i <= box.hi[0]; ++i) nodes.push_back({i, j, kk});
    const auto n = static_cast<Eigen::Index>(nodes.size());
    Eigen::MatrixXcd A(n, n);
    Eigen::VectorXcd b(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& p = nodes[r];
        b(r) = std::exp(1i * (k * d.z(p[2])));
        for (Eigen::Index s = 0; s < n; ++s) {
            const auto& q = nodes[s];
            const int o0 = std::abs(p[0] - q[0]), o1 = std::abs(p[1] - q[1]), o2 = std::abs(p[2] - q[2]);
            const cplx kv = kern[o0 + ext[0] * (o1 + ext[1] * o2)];
            A(r, s) = (r == s ? 1.0 : 0.0) - k * k * kv * (eps(q[0], q[1], q[2]) - 1.0);
        }
    }
    Eigen::VectorXcd x = A.partialPivLu().solve(b);
    return {x.data(), x.data() + x.size()};
}

std::vector<cplx> born_scattered(const gcm::PermittivityField& eps, double k, const std::vector<gcm::Point3>& points) {
    const gcm::Domain& d = eps.domain();
    const auto h = d.spacing();
    const double dv = h[0] * h[1] * h[2];
    std::vector<cplx> out;
    for (const auto& x : points) {
        cplx acc{};
        for (std::size_t idx = 0; idx < eps.size(); ++idx) {
            const double m = eps[idx] - 1.0;
            if (m == 0.0) continue;
            const auto y = d.point(idx);
            const double r = std::hypot(x[0] - y[0], x[1] - y[1], x[2] - y[2]);
            acc += std::exp(1i * (k * r)) / (4.0 * pi * r) * m * std::exp(1i * (k * y[2]));
        }
        out.push_back(k * k * acc * dv);
    }
    return out;
}

gcm::Domain cube(double lo, double hi, int n) {
    gcm::Domain d;
    d.x_min = d.y_min = d.z_min = lo;
    d.x_max = d.y_max = d.z_max = hi;
    d.nx = d.ny = d.nz = n;
    return d;
}

gcm::PermittivityField smooth_ball(const gcm::Domain& d, gcm::Point3 center, double radius, double amp) {
    gcm::PermittivityField eps(d, 1.0);
    for (std::size_t idx = 0; idx < eps.size(); ++idx) {
        const auto p = d.point(idx);
        const double r = std::hypot(p[0] - center[0], p[1] - center[1], p[2] - center[2]);
        if (r < radius) {
            const double c = std::cos(pi * r / (2.0 * radius));
            eps[idx] = 1.0 + amp * c * c;
        }
    }
    return eps;
}

double manufactured_error(int n, double* seconds) {
    const gcm::Domain d = cube(0.0, 1.0, n);
    const auto exact = [](const gcm::Point3& p) { return std::sin(p[0]) * std::exp(1i * p[1]) * p[2]; };
    gcm::DirichletProblem prob;
    prob.domain = d;
    prob.convection = gcm::make_vector_field(d);
    prob.rhs = gcm::ComplexField(d);
    for (std::size_t idx = 0; idx < d.size(); ++idx) {
        const auto p = d.point(idx);
        const cplx e = std::exp(1i * p[1]);
        const cplx lap = -2.0 * std::sin(p[0]) * e * p[2];
        const cplx conv = (std::cos(p[0]) - std::sin(p[0])) * e * p[2];  // (1, i, 0) . grad q*
        prob.convection[0][idx] = 1.0;
        prob.convection[1][idx] = 1i;
        prob.rhs[idx] = lap - conv;
    }
    prob.boundary = gcm::BoundaryField::from_function(d, exact);
    gcm::EllipticSettings s;
    s.krylov = {1e-12, 50, 2000};
    const auto t0 = std::chrono::steady_clock::now();
    const auto sol = gcm::solve_dirichlet(prob, s);
    if (seconds) *seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    gcm::ComplexField err(d);
    for (std::size_t idx = 0; idx < d.size(); ++idx) err[idx] = sol.solution[idx] - exact(d.point(idx));
    return gcm::l2_norm(err);
}

MaxPrincipleTrial max_principle_trial(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> size(4, 12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> len(0.5, 3.0);
    gcm::Domain d;
    d.x_min = d.y_min = d.z_min = 0.0;
    d.x_max = len(rng);
    d.y_max = len(rng);
    d.z_max = len(rng);
    d.nx = size(rng);
    d.ny = size(rng);
    d.nz = size(rng);
    gcm::DirichletProblem prob;
    prob.domain = d;
    prob.boundary = gcm::BoundaryField::from_function(d, [&](const gcm::Point3&) { return cplx(u(rng), u(rng)); });
    gcm::EllipticSettings s;
    s.krylov = {1e-14, 50, 2000};
    s.preconditioner = gcm::Preconditioner::laplace;
    MaxPrincipleTrial out;
    gcm::DirichletSolution sol;
    try {
        sol = gcm::solve_dirichlet(prob, s);
        out.converged = true;
    } catch (const gcm::ConvergenceError&) {
        return out;
    }
    double re_lo = 1e300, re_hi = -1e300, im_lo = 1e300, im_hi = -1e300;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i)
                if (d.on_boundary(i, j, k)) {
                    const cplx v = sol.solution(i, j, k);
                    re_lo = std::min(re_lo, v.real());
                    re_hi = std::max(re_hi, v.real());
                    im_lo = std::min(im_lo, v.imag());
                    im_hi = std::max(im_hi, v.imag());
                }
    for (int k = 1; k < d.nz - 1; ++k)
        for (int j = 1; j < d.ny - 1; ++j)
            for (int i = 1; i < d.nx - 1; ++i) {
                const cplx v = sol.solution(i, j, k);
                out.violation = std::max({out.violation, v.real() - re_hi, re_lo - v.real(), v.imag() - im_hi,
                                          im_lo - v.imag()});
            }
    return out;
}

double point_source_propagation_error() {
    const double k = 6.5, b = -11.0, a = -10.0;
    const auto green = [k](double x, double y, double z) {
        const double r = std::sqrt(x * x + y * y + z * z);
        return std::exp(1i * (k * r)) / (4.0 * pi * r);
    };
    gcm::PlaneGeometry g{-30.0, 30.0, -30.0, 30.0, 601, 601, b};
    gcm::PlaneField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = green(g.x(i), g.y(j), b);
    const gcm::PlaneField out = gcm::propagate_plane(f, k, a, gcm::PropagationSign::outgoing, 2);
    // Compare on the central part of the plane, away from the aperture edge.
    double num = 0.0, den = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (std::abs(g.x(i)) > 4.0 || std::abs(g.y(j)) > 4.0) continue;
            const cplx ref = green(g.x(i), g.y(j), a);
            num += std::norm(out(i, j) - ref);
            den += std::norm(ref);
        }
    return std::sqrt(num / den);
}

double propagation_round_trip_error() {
    const double k = 6.5;
    gcm::PlaneGeometry g{-2.0, 2.0 - 4.0 / 40.0, -2.0, 2.0 - 4.0 / 40.0, 40, 40, -1.25};
    const double side = g.nx * g.dx();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    gcm::PlaneField f(g);
    for (int my = -20; my < 20; ++my)
        for (int mx = -20; mx < 20; ++mx) {
            const double kx = 2.0 * pi * mx / side, ky = 2.0 * pi * my / side;
            if (kx * kx + ky * ky >= 0.9 * k * k) continue;
            const cplx c(u(rng), u(rng));
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) f(i, j) += c * std::exp(1i * (kx * (g.x(i) - g.x_min) + ky * (g.y(j) - g.y_min)));
        }
    const auto there = gcm::angular_spectrum_shift(f, k, -0.75, gcm::PropagationSign::outgoing, 1);
    const auto back = gcm::angular_spectrum_shift(there, k, g.z_level, gcm::PropagationSign::outgoing, 1);
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < f.data.size(); ++s) {
        num += std::norm(back.data[s] - f.data[s]);
        den += std::norm(f.data[s]);
    }
    return std::sqrt(num / den);
}

}  // namespace oracle
