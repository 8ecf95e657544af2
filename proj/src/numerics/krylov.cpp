#include "gcm/krylov.hpp"

#include <cmath>

namespace gcm {

namespace {

using cplx = std::complex<double>;

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Complex Givens rotation zeroing b in (a, b).
void make_rotation(cplx a, cplx b, double& c, cplx& s) {
    const double na = std::abs(a), nb = std::abs(b);
    if (nb == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (na == 0.0) {
        c = 0.0;
        s = std::conj(b) / nb;
        return;
    }
    const double r = std::hypot(na, nb);
    c = na / r;
    s = (a / na) * std::conj(b) / r;
}

} // namespace

KrylovReport gmres(const LinearOperator& op, std::span<const cplx> b, std::span<cplx> x,
                   const KrylovSettings& settings, const LinearOperator& precond) {
    const std::size_t n = b.size();
    const int m = std::max(1, settings.restart);
    KrylovReport report;

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), cplx{});
        report.converged = true;
        return report;
    }

    std::vector<cplx> r(n), w(n), z(n);
    std::vector<std::vector<cplx>> basis(static_cast<std::size_t>(m) + 1, std::vector<cplx>(n));
    std::vector<std::vector<cplx>> hess(static_cast<std::size_t>(m) + 1,
                                        std::vector<cplx>(static_cast<std::size_t>(m)));
    std::vector<double> cs(m);
    std::vector<cplx> sn(m), g(static_cast<std::size_t>(m) + 1);

    const auto residual = [&]() {
        op(x, w);
        for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i];
        return norm2(r);
    };
    const auto apply_precond = [&](std::span<const cplx> in, std::span<cplx> out) {
        if (precond) precond(in, out);
        else std::copy(in.begin(), in.end(), out.begin());
    };

    double rnorm = residual();
    report.residual = rnorm / bnorm;
    while (report.iterations < settings.max_iter) {
        if (rnorm / bnorm <= settings.tol) {
            report.converged = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) basis[0][i] = r[i] / rnorm;
        std::fill(g.begin(), g.end(), cplx{});
        g[0] = rnorm;

        int j = 0;
        for (; j < m && report.iterations < settings.max_iter; ++j) {
            apply_precond(basis[j], z);
            op(z, w);
            // Modified Gram-Schmidt.
            for (int i = 0; i <= j; ++i) {
                hess[i][j] = dotc(basis[i], w);
                for (std::size_t t = 0; t < n; ++t) w[t] -= hess[i][j] * basis[i][t];
            }
            const double wn = norm2(w);
            hess[j + 1][j] = wn;
            if (wn > 0.0)
                for (std::size_t t = 0; t < n; ++t) basis[j + 1][t] = w[t] / wn;

            for (int i = 0; i < j; ++i) {
                const cplx t = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
                hess[i + 1][j] = -std::conj(sn[i]) * hess[i][j] + cs[i] * hess[i + 1][j];
                hess[i][j] = t;
            }
            make_rotation(hess[j][j], hess[j + 1][j], cs[j], sn[j]);
            hess[j][j] = cs[j] * hess[j][j] + sn[j] * hess[j + 1][j];
            hess[j + 1][j] = 0.0;
            g[j + 1] = -std::conj(sn[j]) * g[j];
            g[j] = cs[j] * g[j];

            ++report.iterations;
            const double est = std::abs(g[j + 1]) / bnorm;
            report.history.push_back(est);
            if (est <= settings.tol || wn == 0.0) {
                ++j;
                break;
            }
        }

        // Back substitution for the least-squares coefficients.
        std::vector<cplx> y(static_cast<std::size_t>(j));
        for (int i = j - 1; i >= 0; --i) {
            cplx s = g[i];
            for (int t = i + 1; t < j; ++t) s -= hess[i][t] * y[t];
            y[i] = s / hess[i][i];
        }
        std::fill(w.begin(), w.end(), cplx{});
        for (int i = 0; i < j; ++i)
            for (std::size_t t = 0; t < n; ++t) w[t] += y[i] * basis[i][t];
        apply_precond(w, z);
        for (std::size_t t = 0; t < n; ++t) x[t] += z[t];

        const double previous = rnorm;
        rnorm = residual();
        report.residual = rnorm / bnorm;
        if (rnorm / bnorm <= settings.tol) {
            report.converged = true;
            break;
        }
        // A full cycle that made no progress will not make any on restart.
        if (rnorm >= previous * (1.0 - 1e-14) && j == m) break;
    }
    report.residual = rnorm / bnorm;
    report.converged = report.residual <= settings.tol;
    return report;
}

} // namespace gcm
