#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gcm/error.hpp"
#include "gcm/green.hpp"
#include "gcm/lippmann_schwinger.hpp"
#include "gcm/scene.hpp"
#include "gcm/simulate.hpp"
#include "oracles.hpp"

using namespace gcm;
using namespace std::complex_literals;

namespace {

double rel(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

std::vector<Point3> plane_points(double z, double half, int n) {
    std::vector<Point3> pts;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) pts.push_back({-half + 2 * half * i / (n - 1), -half + 2 * half * j / (n - 1), z});
    return pts;
}

}  // namespace

TEST_SUITE("forward") {

TEST_CASE("green function closed forms") {
    CHECK(std::abs(green_function({0, 0, 0}, {1, 0, 0}, 0.0) - 1.0 / (4 * std::numbers::pi)) < 1e-15);
    CHECK(std::abs(green_function({0, 0, 0}, {1, 0, 0}, 0.0).real() - 0.0795775) < 1e-7);
    const cplx expect = std::exp(1i * 3.2875) / (2 * std::numbers::pi);
    CHECK(std::abs(green_function({0.1, 0.2, 0.3}, {0.1, 0.2, 0.8}, 6.575) - expect) < 1e-14);
    CHECK_THROWS_AS(green_function({1, 2, 3}, {1, 2, 3}, 1.0), SingularityError);
}

TEST_CASE("green function is symmetric") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int t = 0; t < 50; ++t) {
        const Point3 x{u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng)};
        CHECK(green_function(x, y, 6.5) == green_function(y, x, 6.5));
    }
}

TEST_CASE("truncated kernel spectrum matches the closed form") {
    for (double s : {0.0, 0.3, 3.0, 6.49, 6.5, 6.51, 12.0, 40.0}) {
        const cplx a = truncated_green_spectrum(s, 6.5, 1.7);
        const cplx b = oracle::truncated_green_spectrum(s == 6.5 ? 6.5 + 1e-7 : s, 6.5, 1.7);
        CHECK(std::abs(a - b) < 1e-6 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("kernel spectrum is even under index negation") {
    const Domain d = oracle::cube(-0.5, 0.5, 9);
    IndexBox box{{1, 1, 1}, {7, 7, 7}};
    PeriodizedGreenConvolution conv(d, box, box, 6.5);
    const auto shape = conv.periodic_shape();
    const auto& spec = conv.spectrum();
    const auto at = [&](int a, int b, int c) {
        const auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
        return spec[wrap(a, shape[0]) + shape[0] * (wrap(b, shape[1]) + shape[1] * wrap(c, shape[2]))];
    };
    for (int c = 0; c < shape[2]; c += 3)
        for (int b = 0; b < shape[1]; b += 2)
            for (int a = 0; a < shape[0]; ++a) CHECK(at(a, b, c) == at(-a, -b, -c));
}

TEST_CASE("homogeneous medium returns the incident wave") {
    const Domain d = oracle::cube(-1, 1, 9);
    PermittivityField eps(d, 1.0);
    const auto u = solve_total_field(eps, 6.5);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(u[i] == std::exp(1i * (6.5 * d.point(i)[2])));
    const auto pts = plane_points(-2.0, 1.0, 3);
    const auto ext = evaluate_exterior(u, eps, 6.5, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(ext[i] == std::exp(1i * (6.5 * -2.0)));
}

TEST_CASE("spectral solve matches the dense collocation system") {
    const Domain d = oracle::cube(-0.55, 0.55, 12);
    PermittivityField eps(d, 1.0);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const auto p = d.point(i);
        eps[i] = 1.0 + std::exp(-8.0 * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    }
    const double k = 6.5;
    const auto sol = solve_on_support(eps, k, {1e-12, 60, 1000});
    const auto dense = oracle::dense_collocation_solve(eps, k);
    CHECK(rel(sol.u, dense) <= 1e-6);
}

TEST_CASE("weak ball follows the Born approximation") {
    const Domain d = oracle::cube(-0.4, 0.4, 17);
    const double k = 6.5;
    const auto pts = plane_points(-1.5, 1.0, 7);
    std::vector<std::vector<cplx>> scattered;
    for (double delta : {0.01, 0.005}) {
        PermittivityField eps = oracle::smooth_ball(d, {0, 0, 0}, 0.35, delta);
        const auto u = solve_total_field(eps, k, {1e-12, 50, 500});
        auto ext = evaluate_exterior(u, eps, k, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) ext[i] -= std::exp(1i * (k * pts[i][2]));
        if (delta == 0.01) CHECK(rel(ext, oracle::born_scattered(eps, k, pts)) <= 0.02);
        scattered.push_back(ext);
    }
    double ratio_num = 0.0, ratio_den = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ratio_num += std::norm(scattered[0][i]);
        ratio_den += std::norm(scattered[1][i]);
    }
    CHECK(std::sqrt(ratio_num / ratio_den) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("exterior evaluation") {
    const Domain d = oracle::cube(-0.6, 0.6, 13);
    const double k = 6.0;
    PermittivityField eps = oracle::smooth_ball(d, {0, 0, 0}, 0.3, 1.0);
    const auto u = solve_total_field(eps, k);

    SUBCASE("consistent with the volume field just outside the support") {
        const IndexBox box = eps.contrast_support();
        const int k_out = box.lo[2] - 2;
        std::vector<Point3> pts{d.point(6, 6, k_out), d.point(2, 6, k_out), d.point(6, 3, k_out)};
        const auto ext = evaluate_exterior(u, eps, k, pts);
        CHECK(std::abs(ext[0] - u(6, 6, k_out)) < 1e-3);
        CHECK(std::abs(ext[1] - u(2, 6, k_out)) < 1e-3);
        CHECK(std::abs(ext[2] - u(6, 3, k_out)) < 1e-3);
    }
    SUBCASE("scattered field decays like 1/r") {
        std::vector<Point3> pts{{0, 0, -20.0}, {0, 0, -40.0}};
        const auto ext = evaluate_exterior(u, eps, k, pts);
        const double a = std::abs(ext[0] - std::exp(1i * (k * -20.0)));
        const double b = std::abs(ext[1] - std::exp(1i * (k * -40.0)));
        CHECK(a / b == doctest::Approx(2.0).epsilon(0.1));
    }
    SUBCASE("points inside the support are rejected") {
        std::vector<Point3> pts{{0, 0, 0}};
        CHECK_THROWS_AS(evaluate_exterior(u, eps, k, pts), DomainError);
    }
}

TEST_CASE("grid refinement converges monotonically") {
    std::vector<ComplexField> fields;
    for (int cells : {8, 16, 32, 64}) {
        const Domain d = oracle::cube(-0.5, 0.5, cells + 1);
        fields.push_back(solve_total_field(oracle::smooth_ball(d, {0, 0, 0}, 0.4, 0.5), 6.0, {1e-10, 50, 500}));
    }
    // Differences on the nodes of the coarsest lattice.
    std::vector<double> diffs;
    for (std::size_t level = 0; level + 1 < fields.size(); ++level) {
        const int step_a = 1 << level, step_b = 2 << level;
        double num = 0.0, den = 0.0;
        for (int k = 0; k <= 8; ++k)
            for (int j = 0; j <= 8; ++j)
                for (int i = 0; i <= 8; ++i) {
                    const cplx a = fields[level](i * step_a, j * step_a, k * step_a);
                    const cplx b = fields[level + 1](i * step_b, j * step_b, k * step_b);
                    num += std::norm(a - b);
                    den += std::norm(b);
                }
        diffs.push_back(std::sqrt(num / den));
    }
    CHECK(diffs[1] < diffs[0]);
    CHECK(diffs[2] < diffs[1]);
}

TEST_CASE("LS operator leaves the incident part of a zero-contrast input unchanged") {
    const Domain d = oracle::cube(-0.5, 0.5, 9);
    PermittivityField eps(d, 1.0);
    eps(4, 4, 4) = 1.5;
    LSOperatorContext ctx(eps, 6.0);
    // Only the single contrast node is in the support; zero input maps to zero.
    std::vector<cplx> x{0.0}, y{1.0};
    ctx.apply(x, y);
    CHECK(y[0] == cplx{});
    CHECK_THROWS_AS(LSOperatorContext(PermittivityField(d, 1.0), 6.0), InvalidArgument);
}

TEST_CASE("synthetic measurements") {
    Scene scene;
    SceneObject ball;
    ball.radius = 0.25;
    ball.eps = 2.0;
    scene.objects.push_back(ball);
    const Domain d = simulation_domain(scene, 0.05, 0.1);
    const PermittivityField eps = scene.rasterize(d);
    PlaneGeometry plane{-1.0, 1.0, -1.0, 1.0, 11, 11, -1.0};
    const std::vector<double> ks{6.3, 6.5, 6.7};

    const auto sc = simulate_measurements(eps, ks, plane, FieldKind::scattered);
    REQUIRE(sc.rows.size() == ks.size());
    for (std::size_t w = 0; w < ks.size(); ++w) CHECK(sc.field(w).argmax_abs() == plane.index(5, 5));

    const auto threaded = simulate_measurements(eps, ks, plane, FieldKind::scattered, {}, 3);
    CHECK(threaded.rows == sc.rows);

    const auto empty = simulate_measurements(PermittivityField(d, 1.0), ks, plane, FieldKind::total);
    for (std::size_t w = 0; w < ks.size(); ++w)
        for (const cplx& v : empty.rows[w]) CHECK(v == std::exp(1i * (ks[w] * -1.0)));

    PlaneGeometry inside = plane;
    inside.z_level = 0.0;
    CHECK_THROWS_AS(simulate_measurements(eps, ks, inside), InvalidArgument);
}

TEST_CASE("multiplicative noise is seeded") {
    PlaneDataset a;
    a.geometry = {-1, 1, -1, 1, 3, 3, 0};
    a.wavenumbers = {6.0};
    a.rows = {std::vector<cplx>(9, 1.0)};
    PlaneDataset b = a, c = a;
    add_multiplicative_noise(b, 5.0, 42);
    add_multiplicative_noise(c, 5.0, 42);
    CHECK(b.rows == c.rows);
    for (const cplx& v : b.rows[0]) {
        CHECK(std::abs(v.real() - 1.0) <= 0.05);
        CHECK(std::abs(v.imag()) <= 0.05);
    }
}

}
