#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcm/domain.hpp"
#include "gcm/krylov.hpp"
#include "gcm/plane.hpp"
#include "gcm/scene.hpp"

namespace gcm {

/// BVP preconditioner: diagonal, Dirichlet Laplacian, or the exact inverse of
/// the constant-coefficient operator with the mean convection.
enum class Preconditioner { jacobi, laplace, convection, lu };
enum class PsiRule { k_star, pointwise };
enum class CalibrationMode { none, per_k, band_average };
enum class Averaging { window, both_outers };
enum class EpsWavenumber { k_n, k_bar };

/// Sign of the phase factor applied by plane-to-plane propagation.
///
/// `outgoing` treats the data as a wave travelling towards -z (backscatter
/// under the exp(-i omega t) convention used by the forward solver) and undoes
/// that travel, multiplying by exp(-i k_z (a - b)). `as_printed` multiplies by
/// exp(+i k_z (a - b)), the form suited to data recorded in the exp(+i omega t)
/// convention.
enum class PropagationSign { outgoing, as_printed };

struct SmoothingSettings {
    int kernel_size = 3;
    double sigma = 0.65;
};

/// Band used for the partition: `fixed` when set, else the automatically
/// selected band when `automatic`, else the partition's k_lo / k_hi.
struct BandSelectionSettings {
    std::optional<std::pair<double, double>> fixed;  // wavenumbers
    bool automatic = true;
    int max_argmax_shift = 2;
    double max_relative_jump = 0.5;
    int min_run = 5;
};

struct PreprocessSettings {
    PropagationSign propagation_sign = PropagationSign::outgoing;
    BandSelectionSettings band;
    int pad_factor = 2;  // zero padding of the plane before the 2D transform
    bool truncate = true;
    double data_truncation = 0.8;
    double target_threshold = 0.7;
    double reference_ghz = 3.1;
    CalibrationMode calibration = CalibrationMode::none;
    std::string calibration_simulated;  // plane dataset paths for the calibrating object
    std::string calibration_measured;
    PsiRule psi_rule = PsiRule::k_star;
};

struct InversionSettings {
    int inner_cap = 3;
    double stop_inner = 1e-6;
    double stop_outer = 5e-4;
    std::pair<double, double> search_z{-0.75, 1.0};
    double eps_upper = 10.0;
    Averaging averaging = Averaging::window;
    EpsWavenumber eps_wavenumber = EpsWavenumber::k_n;
    KrylovSettings bvp{1e-8, 50, 2000};
    Preconditioner bvp_preconditioner = Preconditioner::convection;
    KrylovSettings lippmann_schwinger{1e-8, 50, 500};
};

struct SimulationSettings {
    Scene scene;
    PlaneGeometry plane{-2.5, 2.5, -2.5, 2.5, 51, 51, -0.75};
    /// Sweep frequencies: either an explicit GHz list or [lo, hi] with a count.
    std::vector<double> frequencies_ghz;
    double sweep_lo_ghz = 2.95;
    double sweep_hi_ghz = 3.22;
    int sweep_count = 10;
    double grid_spacing = 0.05;  // spacing of the simulation lattice around the scene
    bool scattered = true;
    double noise_pct = 0.0;
    unsigned long long seed = 1;

    std::vector<double> sweep_ghz() const;
};

/// Every tunable of the pipeline. All members have defaults, so `{}` is a valid file.
struct PipelineConfig {
    Domain domain;
    double k_lo = 6.25;
    double k_hi = 6.70;
    int n_intervals = 9;
    SmoothingSettings smoothing;
    PreprocessSettings preprocess;
    InversionSettings inversion;
    SimulationSettings simulation;
    std::string measurement_path;
    std::string out_dir = "out";
    int threads = 1;

    /// Throws InvalidArgument on out-of-range values.
    void validate() const;
};

PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& json_text);

} // namespace gcm
