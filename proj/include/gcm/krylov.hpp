#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace gcm {

struct KrylovSettings {
    double tol = 1e-8;
    int restart = 50;
    int max_iter = 500;
};

/// y = A x for a square complex operator.
using LinearOperator = std::function<void(std::span<const std::complex<double>>,
                                          std::span<std::complex<double>>)>;

struct KrylovReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;            // final ||b - A x|| / ||b||
    std::vector<double> history;      // residual estimate after every iteration
};

/// Right-preconditioned restarted GMRES.
///
/// Solves A x = b starting from the contents of x. `precond`, when given,
/// applies an approximate inverse M^{-1}; the iteration minimizes the true
/// residual of A M^{-1} y = b. Convergence is declared when the relative
/// residual ||b - A x|| / ||b|| <= tol; the final value is recomputed explicitly.
KrylovReport gmres(const LinearOperator& op, std::span<const std::complex<double>> b,
                   std::span<std::complex<double>> x, const KrylovSettings& settings,
                   const LinearOperator& precond = {});

} // namespace gcm
