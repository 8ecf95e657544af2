#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gcm/config.hpp"
#include "gcm/elliptic.hpp"
#include "gcm/error.hpp"
#include "gcm/field.hpp"
#include "gcm/partition.hpp"
#include "gcm/region.hpp"

namespace gcm {

/// Gradient and Laplacian of the tail V = log u(., k_bar).
struct TailState {
    VectorField grad_V;
    ComplexField div_grad_V;
};

/// V0 = i k_bar p with p harmonic and p = i psi(., k_bar) on the boundary.
TailState init_tail(const BoundaryField& psi_bar, double k_hi, const EllipticSettings& settings = {});

/// Running sums over q_0 ... q_{n-1} (q_0 = 0).
struct QSums {
    VectorField grad;   // sum of grad q_j
    ComplexField lap;   // sum of Laplacian q_j

    static QSums zero(const Domain& d);
    void add(const ComplexField& q);
};

struct Coefficients {
    VectorField F;   // convection of the BVP
    ComplexField G;  // G-tilde; the BVP right-hand side is G / k_{n-1}
    ComplexField rhs;
};

/// F_n = (k_n / k_{n-1} + 1) (h sum grad q_j - grad V_{n-1}),
/// G_n = -2h sum Lap q_j - 4h grad V_{n-1} . sum grad q_j + 2 Lap V_{n-1} + 2 (grad V_{n-1})^2.
Coefficients assemble_coefficients(int n, const WavenumberPartition& partition, const QSums& sums,
                                   const TailState& tail);
/// Same, from the explicit history q_0 ... q_{n-1}.
Coefficients assemble_coefficients(int n, const WavenumberPartition& partition,
                                   const std::vector<ComplexField>& q_history, const TailState& tail);

/// grad v = -(h grad q_ni + h sum grad q_j) + grad V and the matching Laplacian.
struct VGradient {
    VectorField grad_v;
    ComplexField div_grad_v;
};
VGradient update_v(const ComplexField& q_ni, const QSums& sums, const TailState& tail_prev, double h);

/// -(div_grad_v + grad_v . grad_v) / k^2, complex.
ComplexField raw_epsilon(const VectorField& grad_v, const ComplexField& div_grad_v, double k);

/// max(|eps|, 1) on region x (z_a, z_b), 1 elsewhere.
PermittivityField clamp_epsilon(const ComplexField& raw, const TargetRegion& region, std::pair<double, double> z_range);

/// raw_epsilon, clamp_epsilon, then 3D Gaussian smoothing.
PermittivityField compute_epsilon(const VectorField& grad_v, const ComplexField& div_grad_v, double k,
                                  const TargetRegion& region, std::pair<double, double> z_range,
                                  const SmoothingSettings& smoothing = {});

/// grad V = grad u / u and its divergence. The plane wave exp(i k z) is divided
/// out before differencing, so grad V = (0, 0, i k) + grad w / w with
/// w = u exp(-i k z). Throws VanishingField if |u| < 1e-12 somewhere.
TailState tail_from_field(const ComplexField& u, double k);

/// Solves the forward problem at k for eps and returns its tail.
TailState update_tail(const PermittivityField& eps, double k, const KrylovSettings& ls = {1e-8, 50, 500},
                      KrylovReport* report = nullptr);

/// ||a - b|| / ||b|| in the trapezoid-weighted L2(Omega) norm.
double relative_error(const RealField& a, const RealField& b);

/// errors = e_{n,2}, e_{n,3}, ... of the current outer iteration, i the inner
/// index just completed. Stops when i >= cap or e_{n,2} < threshold.
bool stopping_inner(const std::vector<double>& errors, int i, int cap = 3, double threshold = 1e-6);

/// Three consecutive elements <= threshold; returns the position of the first.
std::optional<std::size_t> find_stopping_window(const std::vector<double>& sequence, double threshold = 5e-4);

/// `sequence` is the combined error sequence of two consecutive outer iterations.
bool stopping_outer(const std::vector<double>& sequence, double threshold = 5e-4);

/// Per-outer segments (e~_{n,1} for n >= 2, then e_{n,2}, ...). Searches every
/// pair of consecutive outers and returns the flat position of the first window.
std::optional<std::size_t> stopping_outer_segments(const std::vector<std::vector<double>>& segments,
                                                   double threshold = 5e-4);

struct IterationRecord {
    int n = 0;
    int i = 0;
    std::optional<double> e_value;
    double max_eps = 1.0;
    double bvp_residual = 0.0;
    int bvp_iterations = 0;
    double ls_residual = 0.0;
    int ls_iterations = 0;
    bool peclet_warning = false;
};

/// One-line JSON {n, i, e_value, max_eps, residuals}.
std::string to_json_line(const IterationRecord& r);

struct ReconstructionResult {
    PermittivityField eps_final;
    double dielectric_constant = 1.0;
    Point3 argmax_location{};
    TargetRegion target_region;
    std::vector<IterationRecord> log;
    std::vector<double> error_sequence;  // flat, in sequence order
    int outer_iterations = 0;
    bool stopped_by_rule = false;
};

/// Pointwise mean of the candidates; dielectric_constant is its maximum.
/// Throws InvalidState for an empty list.
ReconstructionResult finalize(const std::vector<PermittivityField>& candidates);

/// Inputs of the reconstruction: psi at every partition point, completed on the boundary.
struct InversionInput {
    WavenumberPartition partition;
    std::vector<BoundaryField> psi;  // psi[n] at partition.values[n]
    TargetRegion region;
};

/// A sub-solve failed; `log` holds every iteration completed before it.
class InversionFailure : public Error {
public:
    InversionFailure(const std::string& what, std::vector<IterationRecord> log)
        : Error(what), log_(std::move(log)) {}
    const std::vector<IterationRecord>& log() const noexcept { return log_; }

private:
    std::vector<IterationRecord> log_;
};

using IterationCallback = std::function<void(const IterationRecord&)>;

/// Runs the reconstruction loop (outer n = 1..N, inner i = 1..cap) on `domain`.
ReconstructionResult run_inversion(const InversionInput& input, const Domain& domain, const InversionSettings& settings,
                                   const SmoothingSettings& smoothing = {}, const IterationCallback& on_iteration = {});

} // namespace gcm
