#include <cmath>
#include <memory>
#include <numbers>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "gcm/elliptic.hpp"
#include "gcm/error.hpp"
#include "gcm/fft.hpp"

namespace gcm {

BoundaryField::BoundaryField(const Domain& d, cplx fill)
    : domain(d),
      z_lo(static_cast<std::size_t>(d.nx) * d.ny, fill),
      z_hi(static_cast<std::size_t>(d.nx) * d.ny, fill),
      y_lo(static_cast<std::size_t>(d.nx) * d.nz, fill),
      y_hi(static_cast<std::size_t>(d.nx) * d.nz, fill),
      x_lo(static_cast<std::size_t>(d.ny) * d.nz, fill),
      x_hi(static_cast<std::size_t>(d.ny) * d.nz, fill) {}

BoundaryField BoundaryField::from_function(const Domain& d, const std::function<cplx(const Point3&)>& f) {
    BoundaryField b(d);
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            b.z_lo[i + d.nx * j] = f(d.point(i, j, 0));
            b.z_hi[i + d.nx * j] = f(d.point(i, j, d.nz - 1));
        }
    for (int k = 0; k < d.nz; ++k)
        for (int i = 0; i < d.nx; ++i) {
            b.y_lo[i + d.nx * k] = f(d.point(i, 0, k));
            b.y_hi[i + d.nx * k] = f(d.point(i, d.ny - 1, k));
        }
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j) {
            b.x_lo[j + d.ny * k] = f(d.point(0, j, k));
            b.x_hi[j + d.ny * k] = f(d.point(d.nx - 1, j, k));
        }
    return b;
}

BoundaryField BoundaryField::trace(const ComplexField& f) {
    const Domain& d = f.domain();
    BoundaryField b(d);
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) {
            b.z_lo[i + d.nx * j] = f(i, j, 0);
            b.z_hi[i + d.nx * j] = f(i, j, d.nz - 1);
        }
    for (int k = 0; k < d.nz; ++k)
        for (int i = 0; i < d.nx; ++i) {
            b.y_lo[i + d.nx * k] = f(i, 0, k);
            b.y_hi[i + d.nx * k] = f(i, d.ny - 1, k);
        }
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j) {
            b.x_lo[j + d.ny * k] = f(0, j, k);
            b.x_hi[j + d.ny * k] = f(d.nx - 1, j, k);
        }
    return b;
}

cplx BoundaryField::at(int i, int j, int k) const {
    const Domain& d = domain;
    if (k == 0) return z_lo[i + d.nx * j];
    if (k == d.nz - 1) return z_hi[i + d.nx * j];
    if (j == 0) return y_lo[i + d.nx * k];
    if (j == d.ny - 1) return y_hi[i + d.nx * k];
    if (i == 0) return x_lo[j + d.ny * k];
    if (i == d.nx - 1) return x_hi[j + d.ny * k];
    throw InvalidArgument("BoundaryField::at called on an interior node");
}

BoundaryField BoundaryField::scaled(cplx factor) const {
    BoundaryField b = *this;
    for (auto* face : {&b.z_lo, &b.z_hi, &b.y_lo, &b.y_hi, &b.x_lo, &b.x_hi})
        for (auto& v : *face) v *= factor;
    return b;
}

namespace {

// Per-node, per-axis stencil weights for the neighbours (minus, plus) and the
// diagonal contribution of the convection term.
struct AxisStencil {
    cplx minus, plus, diag;
};

class DirichletOperator {
public:
    DirichletOperator(const DirichletProblem& p, DirichletSolution& out) : d_(p.domain) {
        ni_ = {d_.nx - 2, d_.ny - 2, d_.nz - 2};
        n_ = static_cast<std::size_t>(ni_[0]) * ni_[1] * ni_[2];
        stencil_.resize(3 * n_);
        diag_.resize(n_);
        const auto h = d_.spacing();
        const bool has_conv = p.convection[0].size() == d_.size();
        std::size_t u = 0;
        for (int k = 1; k < d_.nz - 1; ++k)
            for (int j = 1; j < d_.ny - 1; ++j)
                for (int i = 1; i < d_.nx - 1; ++i, ++u) {
                    const std::size_t g = d_.index(i, j, k);
                    cplx dsum = 0.0;
                    bool upwinded = false;
                    for (int a = 0; a < 3; ++a) {
                        const double hh = h[a];
                        const cplx F = has_conv ? p.convection[a][g] : cplx{};
                        AxisStencil s{1.0 / (hh * hh), 1.0 / (hh * hh), -2.0 / (hh * hh)};
                        if (std::abs(F) * hh / 2.0 > 1.0) out.peclet_warning = true;
                        const double re = F.real();
                        const double im = F.imag();
                        // Imaginary part: centered.
                        s.minus += cplx(0.0, im) / (2.0 * hh);
                        s.plus -= cplx(0.0, im) / (2.0 * hh);
                        if (std::abs(re) * hh / 2.0 > 1.0) {
                            upwinded = true;
                            if (re > 0.0) {  // -re * (q - q_minus) / h
                                s.diag -= re / hh;
                                s.minus += re / hh;
                            } else {  // -re * (q_plus - q) / h
                                s.diag += re / hh;
                                s.plus -= re / hh;
                            }
                        } else {
                            s.minus += re / (2.0 * hh);
                            s.plus -= re / (2.0 * hh);
                        }
                        stencil_[3 * u + a] = s;
                        dsum += s.diag;
                    }
                    diag_[u] = dsum;
                    if (upwinded) ++out.upwinded_nodes;
                }
    }

    std::size_t unknowns() const { return n_; }

    Eigen::SparseMatrix<cplx> matrix() const {
        const std::array<std::size_t, 3> stride{1, static_cast<std::size_t>(ni_[0]),
                                                static_cast<std::size_t>(ni_[0]) * ni_[1]};
        std::vector<Eigen::Triplet<cplx>> t;
        t.reserve(7 * n_);
        std::size_t u = 0;
        for (int k = 0; k < ni_[2]; ++k)
            for (int j = 0; j < ni_[1]; ++j)
                for (int i = 0; i < ni_[0]; ++i, ++u) {
                    const std::array<int, 3> pos{i, j, k};
                    const auto r = static_cast<Eigen::Index>(u);
                    t.emplace_back(r, r, diag_[u]);
                    for (int a = 0; a < 3; ++a) {
                        const AxisStencil& s = stencil_[3 * u + a];
                        if (pos[a] > 0) t.emplace_back(r, static_cast<Eigen::Index>(u - stride[a]), s.minus);
                        if (pos[a] < ni_[a] - 1) t.emplace_back(r, static_cast<Eigen::Index>(u + stride[a]), s.plus);
                    }
                }
        const auto m = static_cast<Eigen::Index>(n_);
        Eigen::SparseMatrix<cplx> A(m, m);
        A.setFromTriplets(t.begin(), t.end());
        A.makeCompressed();
        return A;
    }
    std::array<int, 3> interior_shape() const { return ni_; }
    const std::vector<cplx>& diagonal() const { return diag_; }

    // y = A x on interior unknowns (boundary values treated as zero).
    void apply(std::span<const cplx> x, std::span<cplx> y) const {
        const std::size_t sx = 1, sy = ni_[0], sz = static_cast<std::size_t>(ni_[0]) * ni_[1];
        const std::array<std::size_t, 3> stride{sx, sy, sz};
        std::size_t u = 0;
        for (int k = 0; k < ni_[2]; ++k)
            for (int j = 0; j < ni_[1]; ++j)
                for (int i = 0; i < ni_[0]; ++i, ++u) {
                    const std::array<int, 3> pos{i, j, k};
                    cplx acc = diag_[u] * x[u];
                    for (int a = 0; a < 3; ++a) {
                        const AxisStencil& s = stencil_[3 * u + a];
                        if (pos[a] > 0) acc += s.minus * x[u - stride[a]];
                        if (pos[a] < ni_[a] - 1) acc += s.plus * x[u + stride[a]];
                    }
                    y[u] = acc;
                }
    }

    // Contribution of the Dirichlet data to each interior equation.
    std::vector<cplx> boundary_contribution(const BoundaryField& b) const {
        std::vector<cplx> c(n_, 0.0);
        std::size_t u = 0;
        for (int k = 1; k < d_.nz - 1; ++k)
            for (int j = 1; j < d_.ny - 1; ++j)
                for (int i = 1; i < d_.nx - 1; ++i, ++u) {
                    const std::array<int, 3> p{i, j, k};
                    const std::array<int, 3> n{d_.nx, d_.ny, d_.nz};
                    for (int a = 0; a < 3; ++a) {
                        const AxisStencil& s = stencil_[3 * u + a];
                        if (p[a] == 1) {
                            auto q = p;
                            q[a] = 0;
                            c[u] += s.minus * b.at(q[0], q[1], q[2]);
                        }
                        if (p[a] == n[a] - 2) {
                            auto q = p;
                            q[a] = n[a] - 1;
                            c[u] += s.plus * b.at(q[0], q[1], q[2]);
                        }
                    }
                }
        return c;
    }

private:
    Domain d_;
    std::array<int, 3> ni_{};
    std::size_t n_ = 0;
    std::vector<AxisStencil> stencil_;
    std::vector<cplx> diag_;
};

// Exact inverse of the 7-point operator Lap - F0 . grad (centered) with constant
// F0 and Dirichlet data. Per axis the tridiagonal stencil (l, -2/h^2, p) is
// similar, via diag(rho^j) with rho^2 = l / p, to a symmetric Toeplitz matrix
// with off-diagonal p rho, which the type-I sine transform diagonalizes.
// F0 = 0 gives the Laplace inverse.
class ConstantInverse {
public:
    ConstantInverse(std::array<int, 3> ni, std::array<double, 3> h, std::array<cplx, 3> f0) : ni_(ni), dst_(ni) {
        std::array<std::vector<cplx>, 3> lam;
        for (int a = 0; a < 3; ++a) {
            const double c = 1.0 / (h[a] * h[a]);
            cplx l = c + f0[a] / (2.0 * h[a]);
            cplx p = c - f0[a] / (2.0 * h[a]);
            cplx rho = std::sqrt(l / p);
            // Growth of rho^j across the axis would swamp the transform; drop the convection then.
            if (!std::isfinite(std::abs(rho)) || std::abs(std::log(std::abs(rho))) * ni[a] > 20.0) {
                l = p = c;
                rho = 1.0;
            }
            const cplx off = p * rho;
            scale_[a].resize(ni[a]);
            for (int j = 0; j < ni[a]; ++j) scale_[a][j] = std::pow(rho, j + 1);
            lam[a].resize(ni[a]);
            for (int m = 0; m < ni[a]; ++m)
                lam[a][m] = -2.0 * c + 2.0 * off * std::cos(std::numbers::pi * (m + 1) / (ni[a] + 1.0));
        }
        const double norm = 8.0 * (ni[0] + 1.0) * (ni[1] + 1.0) * (ni[2] + 1.0);
        inv_.resize(static_cast<std::size_t>(ni[0]) * ni[1] * ni[2]);
        std::size_t u = 0;
        for (int k = 0; k < ni[2]; ++k)
            for (int j = 0; j < ni[1]; ++j)
                for (int i = 0; i < ni[0]; ++i, ++u) {
                    cplx ev = lam[0][i] + lam[1][j] + lam[2][k];
                    if (std::abs(ev) < 1e-12) ev = 1e-12;
                    inv_[u] = 1.0 / (norm * ev);
                }
        work_.resize(inv_.size());
    }

    void apply(std::span<const cplx> x, std::span<cplx> y) {
        std::size_t u = 0;
        for (int k = 0; k < ni_[2]; ++k)
            for (int j = 0; j < ni_[1]; ++j)
                for (int i = 0; i < ni_[0]; ++i, ++u) work_[u] = x[u] / (scale_[0][i] * scale_[1][j] * scale_[2][k]);
        transform(work_);
        for (std::size_t v = 0; v < work_.size(); ++v) work_[v] *= inv_[v];
        transform(work_);
        u = 0;
        for (int k = 0; k < ni_[2]; ++k)
            for (int j = 0; j < ni_[1]; ++j)
                for (int i = 0; i < ni_[0]; ++i, ++u) y[u] = work_[u] * (scale_[0][i] * scale_[1][j] * scale_[2][k]);
    }

private:
    // Sine transform of a complex array (real and imaginary parts separately).
    void transform(std::vector<cplx>& v) {
        auto buf = dst_.data();
        for (std::size_t w = 0; w < v.size(); ++w) buf[w] = v[w].real();
        dst_.transform();
        std::vector<double> re(buf.begin(), buf.end());
        for (std::size_t w = 0; w < v.size(); ++w) buf[w] = v[w].imag();
        dst_.transform();
        for (std::size_t w = 0; w < v.size(); ++w) v[w] = cplx(re[w], buf[w]);
    }

    std::array<int, 3> ni_;
    Dst3d dst_;
    std::array<std::vector<cplx>, 3> scale_;
    std::vector<cplx> inv_;
    std::vector<cplx> work_;
};

} // namespace

DirichletSolution solve_dirichlet(const DirichletProblem& problem, const EllipticSettings& settings) {
    const Domain& d = problem.domain;
    d.validate();
    if (d.nx < 3 || d.ny < 3 || d.nz < 3) throw InvalidArgument("Dirichlet problem needs an interior node");
    if (!(problem.boundary.domain == d)) throw InvalidArgument("boundary data lives on a different lattice");
    for (const auto& c : problem.convection)
        if (c.size() != 0) require_same_domain(c.domain(), d, "convection");
    if (problem.rhs.size() != 0) require_same_domain(problem.rhs.domain(), d, "rhs");

    DirichletSolution out;
    DirichletOperator op(problem, out);
    const std::size_t n = op.unknowns();

    std::vector<cplx> b = op.boundary_contribution(problem.boundary);
    {
        std::size_t u = 0;
        for (int k = 1; k < d.nz - 1; ++k)
            for (int j = 1; j < d.ny - 1; ++j)
                for (int i = 1; i < d.nx - 1; ++i, ++u) {
                    const cplx r = problem.rhs.size() ? problem.rhs(i, j, k) : cplx{};
                    b[u] = r - b[u];
                }
    }

    std::vector<cplx> x(n, 0.0);
    LinearOperator A = [&op](std::span<const cplx> in, std::span<cplx> o) { op.apply(in, o); };
    LinearOperator M;
    std::unique_ptr<ConstantInverse> inverse;
    std::vector<cplx> inv_diag;
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
    if (settings.preconditioner == Preconditioner::lu) {
        lu.compute(op.matrix());
        if (lu.info() != Eigen::Success) throw ConvergenceError("sparse LU factorization failed", 1.0, {});
        M = [&lu](std::span<const cplx> in, std::span<cplx> o) {
            Eigen::Map<const Eigen::VectorXcd> rhs(in.data(), static_cast<Eigen::Index>(in.size()));
            Eigen::Map<Eigen::VectorXcd>(o.data(), static_cast<Eigen::Index>(o.size())) = lu.solve(rhs);
        };
    } else if (settings.preconditioner != Preconditioner::jacobi) {
        std::array<cplx, 3> f0{};
        const bool has_conv = problem.convection[0].size() == d.size();
        if (settings.preconditioner == Preconditioner::convection && has_conv) {
            for (int a = 0; a < 3; ++a) {
                for (int k = 1; k < d.nz - 1; ++k)
                    for (int j = 1; j < d.ny - 1; ++j)
                        for (int i = 1; i < d.nx - 1; ++i) f0[a] += problem.convection[a](i, j, k);
                f0[a] /= static_cast<double>(n);
            }
        }
        inverse = std::make_unique<ConstantInverse>(op.interior_shape(), d.spacing(), f0);
        M = [&inverse](std::span<const cplx> in, std::span<cplx> o) { inverse->apply(in, o); };
    } else {
        inv_diag.resize(n);
        for (std::size_t u = 0; u < n; ++u) inv_diag[u] = 1.0 / op.diagonal()[u];
        M = [&inv_diag](std::span<const cplx> in, std::span<cplx> o) {
            for (std::size_t u = 0; u < in.size(); ++u) o[u] = inv_diag[u] * in[u];
        };
    }

    out.report = gmres(A, b, x, settings.krylov, M);
    if (!out.report.converged)
        throw ConvergenceError("Dirichlet solve did not converge", out.report.residual, out.report.history);

    out.solution = ComplexField(d);
    for (int k = 0; k < d.nz; ++k)
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i)
                if (d.on_boundary(i, j, k)) out.solution(i, j, k) = problem.boundary.at(i, j, k);
    std::size_t u = 0;
    for (int k = 1; k < d.nz - 1; ++k)
        for (int j = 1; j < d.ny - 1; ++j)
            for (int i = 1; i < d.nx - 1; ++i, ++u) out.solution(i, j, k) = x[u];
    return out;
}

DirichletSolution solve_laplace_p(const BoundaryField& psi_bar, const EllipticSettings& settings) {
    DirichletProblem p;
    p.domain = psi_bar.domain;
    p.boundary = psi_bar.scaled(cplx(0.0, 1.0));
    return solve_dirichlet(p, settings);
}

} // namespace gcm
