#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gcm/field.hpp"
#include "gcm/inversion.hpp"
#include "gcm/plane.hpp"
#include "gcm/preprocess.hpp"
#include "gcm/region.hpp"

namespace gcm {

/// Writes `content` to a sibling temporary file, then renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// ---- measurement CSV --------------------------------------------------------

/// What the samples of a measurement file hold.
enum class SampleKind { total, scattered, psi };

struct MeasurementFile {
    SampleKind kind = SampleKind::scattered;
    std::vector<double> frequencies_ghz;  // ascending, one per dataset row
    PlaneDataset data;                    // wavenumbers derived from the frequencies
};

std::string format_measurements(const PlaneDataset& data, SampleKind kind);
MeasurementFile parse_measurements(const std::string& text);
void write_measurements(const std::string& path, const PlaneDataset& data, SampleKind kind);
MeasurementFile ingest_measurements(const std::string& path);

const char* to_string(SampleKind kind);

// ---- volume export ----------------------------------------------------------

/// Legacy VTK structured points, ASCII, scalar "eps_r", 17 significant digits.
std::string format_vtk(const RealField& eps);
PermittivityField parse_vtk(const std::string& text);
void write_vtk(const std::string& path, const RealField& eps);
PermittivityField read_vtk(const std::string& path);

/// "x,y,eps_r" rows of the z = const plane through node index k.
std::string format_xy_slice(const RealField& eps, int k);
/// "x,z,eps_r" rows of the y = const plane through node index j.
std::string format_xz_slice(const RealField& eps, int j);

// ---- region / band ----------------------------------------------------------

std::string format_region(const TargetRegion& region);
TargetRegion parse_region(const std::string& text);

// ---- result -----------------------------------------------------------------

struct ResultMetadata {
    double k_lo = 0.0, k_hi = 0.0;
    int n_intervals = 0;
    double k_star = 0.0;
};

/// Deterministic JSON: dielectric_constant, argmax_location, iterations,
/// error_sequence, eps checksum and the band used.
std::string format_result_json(const ReconstructionResult& r, const ResultMetadata& meta);

/// FNV-1a over the little-endian bytes of the values, as 16 hex digits.
std::string checksum(const std::vector<double>& values);

} // namespace gcm
