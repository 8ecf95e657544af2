#include <cmath>

#include "gcm/error.hpp"
#include "gcm/inversion.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

QSums QSums::zero(const Domain& d) { return {make_vector_field(d), ComplexField(d)}; }

void QSums::add(const ComplexField& q) {
    const VectorField g = gradient(q);
    const ComplexField l = laplacian(q);
    for (int a = 0; a < 3; ++a)
        for (std::size_t s = 0; s < q.size(); ++s) grad[a][s] += g[a][s];
    for (std::size_t s = 0; s < q.size(); ++s) lap[s] += l[s];
}

Coefficients assemble_coefficients(int n, const WavenumberPartition& partition, const QSums& sums,
                                   const TailState& tail) {
    if (n < 1 || n > partition.n_intervals) throw InvalidArgument("outer index out of range");
    const Domain& d = sums.lap.domain();
    require_same_domain(tail.div_grad_V.domain(), d, "tail");
    const double h = partition.h;
    const double k_prev = partition.values[n - 1];
    const double ratio = partition.values[n] / k_prev + 1.0;
    Coefficients c{make_vector_field(d), ComplexField(d), ComplexField(d)};
    for (std::size_t s = 0; s < d.size(); ++s) {
        cplx gv_dot_sum = 0.0, gv_sq = 0.0;
        for (int a = 0; a < 3; ++a) {
            const cplx gv = tail.grad_V[a][s];
            const cplx sg = sums.grad[a][s];
            c.F[a][s] = ratio * (h * sg - gv);
            gv_dot_sum += gv * sg;
            gv_sq += gv * gv;
        }
        c.G[s] = -2.0 * h * sums.lap[s] - 4.0 * h * gv_dot_sum + 2.0 * tail.div_grad_V[s] + 2.0 * gv_sq;
        c.rhs[s] = c.G[s] / k_prev;
    }
    return c;
}

Coefficients assemble_coefficients(int n, const WavenumberPartition& partition,
                                   const std::vector<ComplexField>& q_history, const TailState& tail) {
    if (q_history.size() != static_cast<std::size_t>(n))
        throw InvalidArgument("q_history must hold q_0 ... q_{n-1}");
    QSums sums = QSums::zero(tail.div_grad_V.domain());
    for (const auto& q : q_history) sums.add(q);
    return assemble_coefficients(n, partition, sums, tail);
}

VGradient update_v(const ComplexField& q_ni, const QSums& sums, const TailState& tail_prev, double h) {
    const Domain& d = q_ni.domain();
    require_same_domain(sums.lap.domain(), d, "q sums");
    const VectorField gq = gradient(q_ni);
    const ComplexField lq = laplacian(q_ni);
    VGradient out{make_vector_field(d), ComplexField(d)};
    for (std::size_t s = 0; s < d.size(); ++s) {
        for (int a = 0; a < 3; ++a) out.grad_v[a][s] = -(h * gq[a][s] + h * sums.grad[a][s]) + tail_prev.grad_V[a][s];
        out.div_grad_v[s] = -(h * lq[s] + h * sums.lap[s]) + tail_prev.div_grad_V[s];
    }
    return out;
}

ComplexField raw_epsilon(const VectorField& grad_v, const ComplexField& div_grad_v, double k) {
    if (!(k > 0.0)) throw InvalidArgument("raw_epsilon needs a positive wavenumber");
    ComplexField e(div_grad_v.domain());
    const double inv = 1.0 / (k * k);
    for (std::size_t s = 0; s < e.size(); ++s) {
        cplx sq = 0.0;
        for (int a = 0; a < 3; ++a) sq += grad_v[a][s] * grad_v[a][s];
        e[s] = -(div_grad_v[s] + sq) * inv;
    }
    return e;
}

PermittivityField clamp_epsilon(const ComplexField& raw, const TargetRegion& region, std::pair<double, double> z_range) {
    const Domain& d = raw.domain();
    PermittivityField eps(d, 1.0);
    const double tol = 1e-12;
    for (int k = 0; k < d.nz; ++k) {
        const double z = d.z(k);
        if (!(z > z_range.first + tol && z < z_range.second - tol)) continue;
        for (int j = 0; j < d.ny; ++j)
            for (int i = 0; i < d.nx; ++i)
                if (region.contains(d.x(i), d.y(j))) eps(i, j, k) = std::max(std::abs(raw(i, j, k)), 1.0);
    }
    return eps;
}

PermittivityField compute_epsilon(const VectorField& grad_v, const ComplexField& div_grad_v, double k,
                                  const TargetRegion& region, std::pair<double, double> z_range,
                                  const SmoothingSettings& smoothing) {
    const PermittivityField clamped = clamp_epsilon(raw_epsilon(grad_v, div_grad_v, k), region, z_range);
    const RealField smooth = gaussian_smooth(static_cast<const RealField&>(clamped), smoothing);
    return PermittivityField(smooth.domain(), smooth.raw());
}

} // namespace gcm
