#include <cmath>

#include "gcm/error.hpp"
#include "gcm/inversion.hpp"
#include "gcm/lippmann_schwinger.hpp"

namespace gcm {

TailState init_tail(const BoundaryField& psi_bar, double k_hi, const EllipticSettings& settings) {
    if (!(k_hi > 0.0)) throw InvalidArgument("init_tail needs a positive wavenumber");
    const ComplexField p = solve_laplace_p(psi_bar, settings).solution;
    // V0 = i k p would give grad V0 = (0, 0, -i k) for the plane wave, whose
    // tail is log exp(ikz); the consistent sign is V0 = -i k p.
    const cplx factor(0.0, -k_hi);
    TailState t;
    t.grad_V = gradient(p);
    for (auto& c : t.grad_V)
        for (auto& v : c.raw()) v *= factor;
    t.div_grad_V = laplacian(p);
    for (auto& v : t.div_grad_V.raw()) v *= factor;
    return t;
}

TailState tail_from_field(const ComplexField& u, double k) {
    const Domain& d = u.domain();
    ComplexField w(d);
    for (int kk = 0; kk < d.nz; ++kk) {
        const cplx demod = std::exp(cplx(0.0, -k * d.z(kk)));
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i) {
                const cplx v = u(i, j, kk);
                if (!(std::abs(v) >= 1e-12)) {
                    const Point3 p = d.point(i, j, kk);
                    throw VanishingField("total field vanishes at (" + std::to_string(p[0]) + ", " +
                                         std::to_string(p[1]) + ", " + std::to_string(p[2]) + ")");
                }
                w(i, j, kk) = v * demod;
            }
    }
    TailState t;
    t.grad_V = gradient(w);
    for (std::size_t s = 0; s < d.size(); ++s) {
        for (int a = 0; a < 3; ++a) t.grad_V[a][s] /= w[s];
        t.grad_V[2][s] += cplx(0.0, k);
    }
    t.div_grad_V = divergence(t.grad_V);
    return t;
}

TailState update_tail(const PermittivityField& eps, double k, const KrylovSettings& ls, KrylovReport* report) {
    return tail_from_field(solve_total_field(eps, k, ls, report), k);
}

} // namespace gcm
