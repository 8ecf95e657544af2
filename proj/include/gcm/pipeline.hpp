#pragma once

#include <optional>
#include <string>

#include "gcm/config.hpp"
#include "gcm/inversion.hpp"
#include "gcm/io.hpp"
#include "gcm/preprocess.hpp"

namespace gcm {

/// Synthetic measurements of the configured scene on the configured plane:
/// scattered field with optional multiplicative noise (or the total field when
/// simulation.scattered is false).
MeasurementFile simulate_stage(const PipelineConfig& cfg);

struct PreprocessResult {
    PlaneDataset propagated;      // scattered field moved to the z = z_min plane
    std::optional<std::pair<double, double>> selected_band;
    std::string band_message;     // why automatic selection failed, if it did
    std::pair<double, double> band;
    WavenumberPartition partition;
    PlaneDataset processed;       // truncated, smoothed, calibrated; on the face lattice
    PlaneDataset total_on_gamma;  // processed + exp(ikz)
    std::optional<CalibrationRecord> calibration;
    TargetRegion region;
    PsiData psi;
};

PreprocessResult preprocess_stage(const MeasurementFile& measurements, const PipelineConfig& cfg);

/// Writes propagated.csv, processed.csv, psi.csv, region.json and band.json.
void write_preprocess_outputs(const std::string& dir, const PreprocessResult& r);

/// Reads what write_preprocess_outputs wrote. Throws MissingInput naming the absent file.
struct InversionInputs {
    PsiData psi;
    TargetRegion region;
    ResultMetadata meta;
};
InversionInputs read_preprocess_outputs(const std::string& dir, const PipelineConfig& cfg);

class MissingInput : public Error {
public:
    using Error::Error;
};

ReconstructionResult invert_stage(const InversionInputs& in, const PipelineConfig& cfg,
                                  const IterationCallback& on_iteration = {});

/// Writes eps_r.vtk, slices, result.json and iterations.jsonl.
void write_inversion_outputs(const std::string& dir, const ReconstructionResult& r, const ResultMetadata& meta);

} // namespace gcm
