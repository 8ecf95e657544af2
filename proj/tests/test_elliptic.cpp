#include <cmath>
#include <random>

#include "doctest.h"
#include "gcm/elliptic.hpp"
#include "gcm/error.hpp"
#include "oracles.hpp"

using namespace gcm;
using namespace std::complex_literals;

namespace {

double max_diff(const ComplexField& a, const std::function<cplx(const Point3&)>& f, bool interior_only = true) {
    const Domain& d = a.domain();
    double m = 0.0;
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                if (interior_only && d.on_boundary(i, j, k)) continue;
                m = std::max(m, std::abs(a(i, j, k) - f(d.point(i, j, k))));
            }
    return m;
}

Domain box(int n) {
    Domain d;
    d.x_min = -1.0;
    d.x_max = 1.0;
    d.y_min = -0.5;
    d.y_max = 1.5;
    d.z_min = -0.75;
    d.z_max = 1.25;
    d.nx = n;
    d.ny = n + 1;
    d.nz = n + 2;
    return d;
}

EllipticSettings tight(Preconditioner p = Preconditioner::convection) {
    EllipticSettings s;
    s.krylov = {1e-13, 50, 2000};
    s.preconditioner = p;
    return s;
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("zero data gives the zero solution") {
    DirichletProblem p{box(7), {}, {}, BoundaryField(box(7))};
    const auto sol = solve_dirichlet(p);
    for (const cplx& v : sol.solution.raw()) CHECK(v == cplx{});
}

TEST_CASE("harmonic quadratics are reproduced exactly") {
    const Domain d = box(9);
    const auto f = [](const Point3& x) { return cplx(x[0] * x[0] - x[1] * x[1], x[1] * x[2]); };
    DirichletProblem p{d, {}, {}, BoundaryField::from_function(d, f)};
    for (auto pc : {Preconditioner::laplace, Preconditioner::convection, Preconditioner::jacobi, Preconditioner::lu}) {
        const auto sol = solve_dirichlet(p, tight(pc));
        CHECK(max_diff(sol.solution, f) < 1e-10);
    }
}

TEST_CASE("Laplace problem for p") {
    const Domain d = box(8);
    SUBCASE("constant") {
        const auto sol = solve_laplace_p(BoundaryField(d, -1i * 2.5), tight());
        CHECK(max_diff(sol.solution, [](const Point3&) { return cplx(2.5); }, false) < 1e-10);
    }
    SUBCASE("linear") {
        const auto psi = BoundaryField::from_function(d, [](const Point3& x) { return -1i * (x[0] + 2 * x[2]); });
        const auto sol = solve_laplace_p(psi, tight());
        CHECK(max_diff(sol.solution, [](const Point3& x) { return cplx(x[0] + 2 * x[2]); }, false) < 1e-10);
    }
    SUBCASE("same as the BVP without convection or source") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-1, 1);
        const auto psi = BoundaryField::from_function(d, [&](const Point3&) { return cplx(u(rng), u(rng)); });
        const auto a = solve_laplace_p(psi);
        DirichletProblem p{d, make_vector_field(d), ComplexField(d), psi.scaled(1i)};
        const auto b = solve_dirichlet(p);
        CHECK(a.solution.raw() == b.solution.raw());
    }
}

TEST_CASE("discrete maximum principle") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        const auto t = oracle::max_principle_trial(seed);
        REQUIRE(t.converged);
        CHECK(t.violation <= 1e-10);
    }
}

TEST_CASE("manufactured solution converges at second order") {
    const double e17 = oracle::manufactured_error(17);
    const double e33 = oracle::manufactured_error(33);
    CHECK(std::log2(e17 / e33) >= 1.9);
}

TEST_CASE("linearity in the data") {
    const Domain d = box(7);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    VectorField F = make_vector_field(d);
    ComplexField r1(d), r2(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (int a = 0; a < 3; ++a) F[a][i] = cplx(u(rng), u(rng));
        r1[i] = cplx(u(rng), u(rng));
        r2[i] = cplx(u(rng), u(rng));
    }
    const auto b1 = BoundaryField::from_function(d, [&](const Point3&) { return cplx(u(rng), u(rng)); });
    const auto b2 = BoundaryField::from_function(d, [&](const Point3&) { return cplx(u(rng), u(rng)); });
    const cplx a = 2.0 - 1i, b = 0.5i;
    ComplexField rc(d);
    for (std::size_t i = 0; i < d.size(); ++i) rc[i] = a * r1[i] + b * r2[i];
    BoundaryField bc = b1.scaled(a);
    const BoundaryField b2s = b2.scaled(b);
    using Face = std::vector<cplx> BoundaryField::*;
    for (Face face : {&BoundaryField::z_lo, &BoundaryField::z_hi, &BoundaryField::y_lo, &BoundaryField::y_hi,
                      &BoundaryField::x_lo, &BoundaryField::x_hi})
        for (std::size_t i = 0; i < (bc.*face).size(); ++i) (bc.*face)[i] += (b2s.*face)[i];
    const auto s1 = solve_dirichlet({d, F, r1, b1}, tight());
    const auto s2 = solve_dirichlet({d, F, r2, b2}, tight());
    const auto sc = solve_dirichlet({d, F, rc, bc}, tight());
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        m = std::max(m, std::abs(sc.solution[i] - a * s1.solution[i] - b * s2.solution[i]));
    CHECK(m < 1e-10);
}

TEST_CASE("boundary priority on edges and corners") {
    Domain d{0, 1, 0, 1, 0, 1, 3, 3, 3};
    BoundaryField b(d);
    std::fill(b.z_lo.begin(), b.z_lo.end(), 1.0);
    std::fill(b.y_lo.begin(), b.y_lo.end(), 2.0);
    std::fill(b.x_lo.begin(), b.x_lo.end(), 3.0);
    CHECK(b.at(0, 0, 0) == 1.0);   // z beats y and x
    CHECK(b.at(0, 0, 1) == 2.0);   // y beats x
    CHECK(b.at(0, 1, 1) == 3.0);
    const auto t = BoundaryField::trace(ComplexField(d, 4.0));
    CHECK(t.at(2, 2, 2) == 4.0);
}

TEST_CASE("cell Peclet guard") {
    const Domain d = box(9);
    VectorField F = make_vector_field(d);
    for (std::size_t i = 0; i < d.size(); ++i) F[2][i] = 100.0;
    const auto f = [](const Point3& x) { return cplx(x[0] + x[2]); };
    const auto sol = solve_dirichlet({d, F, {}, BoundaryField::from_function(d, f)}, tight());
    CHECK(sol.peclet_warning);
    CHECK(sol.upwinded_nodes > 0);

    VectorField G = make_vector_field(d);
    for (std::size_t i = 0; i < d.size(); ++i) G[2][i] = 100.0i;
    const auto imag = solve_dirichlet({d, G, {}, BoundaryField(d)}, tight(Preconditioner::lu));
    CHECK(imag.peclet_warning);
    CHECK(imag.upwinded_nodes == 0);

    const auto mild = solve_dirichlet({d, make_vector_field(d, 1.0), {}, BoundaryField(d)});
    CHECK_FALSE(mild.peclet_warning);
}

TEST_CASE("stagnation reports the residual history") {
    const Domain d = box(12);
    EllipticSettings s;
    s.krylov = {1e-12, 5, 3};
    s.preconditioner = Preconditioner::jacobi;
    const auto f = [](const Point3& x) { return cplx(std::sin(3 * x[0]), x[2]); };
    try {
        solve_dirichlet({d, {}, {}, BoundaryField::from_function(d, f)}, s);
        FAIL("expected a convergence error");
    } catch (const ConvergenceError& e) {
        CHECK(e.history().size() == 3);
        CHECK(e.final_residual() > 1e-12);
    }
}

TEST_CASE("difference operators") {
    const Domain d = box(9);
    SUBCASE("ikz") {
        ComplexField f(d);
        for (std::size_t i = 0; i < d.size(); ++i) f[i] = 1i * 6.5 * d.point(i)[2];
        const auto g = gradient(f);
        const auto l = laplacian(f);
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(std::abs(g[0][i]) < 1e-12);
            CHECK(std::abs(g[1][i]) < 1e-12);
            CHECK(std::abs(g[2][i] - 6.5i) < 1e-12);
            CHECK(std::abs(l[i]) < 1e-9);
        }
    }
    SUBCASE("x squared") {
        ComplexField f(d);
        for (std::size_t i = 0; i < d.size(); ++i) f[i] = d.point(i)[0] * d.point(i)[0];
        const auto l = laplacian(f);
        for (int k = 1; k < d.nz - 1; ++k)
            for (int j = 1; j < d.ny - 1; ++j)
                for (int i = 1; i < d.nx - 1; ++i) CHECK(std::abs(l(i, j, k) - 2.0) < 1e-10);
        const auto div = divergence(gradient(f));
        CHECK(std::abs(div(4, 4, 4) - 2.0) < 1e-10);
    }
    SUBCASE("second-order interior gradient") {
        const auto gen = [](const Point3& x) { return std::exp(1i * (x[0] + 2 * x[1])) * std::cos(x[2]); };
        const auto dx = [](const Point3& x) { return 1i * std::exp(1i * (x[0] + 2 * x[1])) * std::cos(x[2]); };
        double err[2];
        for (int level = 0; level < 2; ++level) {
            const Domain dd = box(level == 0 ? 11 : 21);
            ComplexField f(dd);
            for (std::size_t i = 0; i < dd.size(); ++i) f[i] = gen(dd.point(i));
            err[level] = max_diff(gradient(f)[0], dx);
        }
        CHECK(std::log2(err[0] / err[1]) > 1.8);
    }
}

}
