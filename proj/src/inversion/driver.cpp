#include <algorithm>

#include "gcm/error.hpp"
#include "gcm/inversion.hpp"

namespace gcm {

namespace {

BoundaryField average(const BoundaryField& a, const BoundaryField& b) {
    BoundaryField out = a;
    auto mix = [](std::vector<cplx>& o, const std::vector<cplx>& x) {
        for (std::size_t s = 0; s < o.size(); ++s) o[s] = 0.5 * (o[s] + x[s]);
    };
    mix(out.z_lo, b.z_lo);
    mix(out.z_hi, b.z_hi);
    mix(out.y_lo, b.y_lo);
    mix(out.y_hi, b.y_hi);
    mix(out.x_lo, b.x_lo);
    mix(out.x_hi, b.x_hi);
    return out;
}

} // namespace

ReconstructionResult run_inversion(const InversionInput& input, const Domain& domain, const InversionSettings& settings,
                                   const SmoothingSettings& smoothing, const IterationCallback& on_iteration) {
    const WavenumberPartition& part = input.partition;
    const int N = part.n_intervals;
    if (input.psi.size() != part.values.size())
        throw InvalidArgument("psi data must cover every partition point");
    for (const auto& b : input.psi)
        if (!(b.domain == domain)) throw InvalidArgument("psi boundary data lives on a different lattice");
    if (settings.inner_cap < 2) throw InvalidArgument("inner iteration cap must be >= 2");

    const double k_bar = part.values[0];
    const EllipticSettings bvp{settings.bvp, settings.bvp_preconditioner};

    std::vector<IterationRecord> log;
    std::vector<PermittivityField> iterates;       // every eps_{n,i} in order
    std::vector<int> iterate_outer;                // n of each iterate
    std::vector<double> errors;                    // flat error sequence
    std::vector<std::size_t> error_iterate;        // iterate linked to each error
    std::vector<std::vector<double>> segments;     // errors per outer iteration

    auto fail = [&](const std::string& stage, const std::exception& e) -> InversionFailure {
        return InversionFailure(stage + ": " + e.what(), log);
    };

    TailState tail;
    try {
        tail = init_tail(input.psi[0], k_bar, bvp);
    } catch (const Error& e) {
        throw fail("initial tail", e);
    }

    QSums sums = QSums::zero(domain);
    std::optional<std::size_t> window;
    int outer_done = 0;

    for (int n = 1; n <= N && !window; ++n) {
        const double k_n = part.values[n];
        const BoundaryField boundary = average(input.psi[n - 1], input.psi[n]);
        TailState tail_i = tail;
        ComplexField q_n;
        std::vector<double> segment;
        std::vector<double> inner_errors;  // e_{n,2}, e_{n,3}, ...

        for (int i = 1; i <= settings.inner_cap; ++i) {
            IterationRecord rec;
            rec.n = n;
            rec.i = i;
            try {
                const Coefficients c = assemble_coefficients(n, part, sums, tail_i);
                DirichletProblem prob{domain, c.F, c.rhs, boundary};
                DirichletSolution sol = solve_dirichlet(prob, bvp);
                rec.bvp_residual = sol.report.residual;
                rec.bvp_iterations = sol.report.iterations;
                rec.peclet_warning = sol.peclet_warning;
                q_n = std::move(sol.solution);

                const VGradient v = update_v(q_n, sums, tail_i, part.h);
                const double k_eval = settings.eps_wavenumber == EpsWavenumber::k_n ? k_n : k_bar;
                PermittivityField eps =
                    compute_epsilon(v.grad_v, v.div_grad_v, k_eval, input.region, settings.search_z, smoothing);
                rec.max_eps = eps.max_value();

                KrylovReport ls;
                tail_i = update_tail(eps, k_bar, settings.lippmann_schwinger, &ls);
                rec.ls_residual = ls.residual;
                rec.ls_iterations = ls.iterations;

                if (!iterates.empty() && (i >= 2 || n >= 2)) {
                    const double e = relative_error(eps, iterates.back());
                    rec.e_value = e;
                    errors.push_back(e);
                    error_iterate.push_back(iterates.size());
                    segment.push_back(e);
                    if (i >= 2) inner_errors.push_back(e);
                }
                iterates.push_back(std::move(eps));
                iterate_outer.push_back(n);
            } catch (const InversionFailure&) {
                throw;
            } catch (const Error& e) {
                throw fail("outer " + std::to_string(n) + ", inner " + std::to_string(i), e);
            }
            log.push_back(rec);
            if (on_iteration) on_iteration(rec);
            if (stopping_inner(inner_errors, i, settings.inner_cap, settings.stop_inner)) break;
        }

        sums.add(q_n);
        tail = tail_i;
        segments.push_back(segment);
        outer_done = n;
        if (n >= 2) window = stopping_outer_segments(segments, settings.stop_outer);
    }

    std::vector<PermittivityField> candidates;
    if (window) {
        const std::size_t p = *window;
        if (settings.averaging == Averaging::window) {
            for (std::size_t e = p; e < p + 3; ++e) candidates.push_back(iterates[error_iterate[e]]);
        } else {
            const int n_lo = iterate_outer[error_iterate[p]];
            const int n_hi = std::max(iterate_outer[error_iterate[p + 2]], std::min(n_lo + 1, outer_done));
            for (std::size_t it = 0; it < iterates.size(); ++it)
                if (iterate_outer[it] >= n_lo && iterate_outer[it] <= n_hi) candidates.push_back(iterates[it]);
        }
    } else if (errors.size() >= 3) {
        for (std::size_t e = errors.size() - 3; e < errors.size(); ++e) candidates.push_back(iterates[error_iterate[e]]);
    } else {
        candidates = iterates;
    }

    ReconstructionResult result = finalize(candidates);
    result.target_region = input.region;
    result.log = std::move(log);
    result.error_sequence = std::move(errors);
    result.outer_iterations = outer_done;
    result.stopped_by_rule = window.has_value();
    return result;
}

} // namespace gcm
