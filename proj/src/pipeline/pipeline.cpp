#include "gcm/pipeline.hpp"

#include <cmath>
#include <filesystem>

#include "gcm/error.hpp"
#include "gcm/simulate.hpp"
#include "gcm/units.hpp"
#include "json.hpp"

namespace gcm {

using namespace units;

namespace fs = std::filesystem;

namespace {

std::vector<double> to_wavenumbers(const std::vector<double>& ghz) {
    std::vector<double> k;
    for (double f : ghz) k.push_back(ghz_to_wavenumber(f));
    return k;
}

void add_incident(PlaneDataset& d) {
    for (std::size_t w = 0; w < d.count(); ++w) {
        const cplx inc = std::exp(cplx(0.0, d.wavenumbers[w] * d.geometry.z_level));
        for (auto& v : d.rows[w]) v += inc;
    }
}

} // namespace

MeasurementFile simulate_stage(const PipelineConfig& cfg) {
    cfg.validate();
    const SimulationSettings& s = cfg.simulation;
    MeasurementFile mf;
    mf.frequencies_ghz = s.sweep_ghz();
    const std::vector<double> k = to_wavenumbers(mf.frequencies_ghz);
    if (s.scene.max_eps() > cfg.inversion.eps_upper)
        throw InvalidArgument("scene permittivity exceeds the configured upper bound eps_upper");

    if (s.scene.objects.empty()) {
        mf.data.geometry = s.plane;
        mf.data.wavenumbers = k;
        mf.data.rows.assign(k.size(), std::vector<cplx>(s.plane.size(), cplx{}));
    } else {
        const Domain sim = simulation_domain(s.scene, s.grid_spacing, 2.0 * s.grid_spacing);
        const PermittivityField eps = s.scene.rasterize(sim);
        mf.data = simulate_measurements(eps, k, s.plane, FieldKind::scattered, cfg.inversion.lippmann_schwinger,
                                        cfg.threads);
    }
    if (s.noise_pct > 0.0) add_multiplicative_noise(mf.data, s.noise_pct, s.seed);
    mf.kind = SampleKind::scattered;
    if (!s.scattered) {
        add_incident(mf.data);
        mf.kind = SampleKind::total;
    }
    return mf;
}

PreprocessResult preprocess_stage(const MeasurementFile& measurements, const PipelineConfig& cfg) {
    cfg.validate();
    const PreprocessSettings& ps = cfg.preprocess;
    const Domain& domain = cfg.domain;
    if (measurements.kind == SampleKind::psi) throw InvalidArgument("preprocess expects field samples, not psi");

    PlaneDataset scattered = measurements.data;
    if (measurements.kind == SampleKind::total) {
        for (std::size_t w = 0; w < scattered.count(); ++w) {
            const cplx inc = std::exp(cplx(0.0, scattered.wavenumbers[w] * scattered.geometry.z_level));
            for (auto& v : scattered.rows[w]) v -= inc;
        }
    }

    PreprocessResult r;
    r.propagated = propagate_dataset(scattered, domain.z_gamma(), ps.propagation_sign, ps.pad_factor);

    try {
        BandSelectionSettings auto_settings = ps.band;
        auto_settings.fixed.reset();
        r.selected_band = select_stable_band(r.propagated, auto_settings);
    } catch (const BandNotFound& e) {
        r.band_message = e.what();
    }
    if (ps.band.fixed) {
        r.band = *ps.band.fixed;
    } else if (ps.band.automatic) {
        if (!r.selected_band) throw BandNotFound(r.band_message);
        r.band = *r.selected_band;
    } else {
        r.band = {cfg.k_lo, cfg.k_hi};
    }
    r.partition = build_partition(r.band.first, r.band.second, cfg.n_intervals);

    if (ps.calibration != CalibrationMode::none) {
        if (ps.calibration_simulated.empty() || ps.calibration_measured.empty())
            throw InvalidArgument("calibration needs calibration_simulated and calibration_measured datasets");
        auto load = [&](const std::string& path) {
            MeasurementFile f = ingest_measurements(path);
            if (f.kind == SampleKind::total)
                for (std::size_t w = 0; w < f.data.count(); ++w) {
                    const cplx inc = std::exp(cplx(0.0, f.data.wavenumbers[w] * f.data.geometry.z_level));
                    for (auto& v : f.data.rows[w]) v -= inc;
                }
            return propagate_dataset(f.data, domain.z_gamma(), ps.propagation_sign, ps.pad_factor);
        };
        r.calibration = compute_calibration(load(ps.calibration_simulated), load(ps.calibration_measured),
                                            ps.calibration_simulated + " / " + ps.calibration_measured);
    }

    const PlaneGeometry face = gamma_face(domain);
    r.processed.geometry = face;
    r.processed.wavenumbers = r.propagated.wavenumbers;
    r.processed.rows.resize(r.propagated.count());
    for (std::size_t w = 0; w < r.propagated.count(); ++w) {
        PlaneField f = r.propagated.field(w);
        if (ps.truncate && f.max_abs() > 0.0) f = truncate_field(f, ps.data_truncation);
        f = gaussian_smooth(f, cfg.smoothing);
        if (r.calibration) {
            const double a = r.calibration->factor(r.propagated.wavenumbers[w], ps.calibration);
            for (auto& v : f.data) v *= a;
        }
        r.processed.rows[w] = resample(f, face).data;
    }

    const std::size_t ref = r.processed.nearest(ghz_to_wavenumber(ps.reference_ghz));
    const PlaneField ref_field = r.processed.field(ref);
    r.region = ref_field.max_abs() > 0.0 ? estimate_target_region(ref_field, ps.target_threshold) : full_region(face);

    r.total_on_gamma = r.processed;
    add_incident(r.total_on_gamma);
    r.psi = compute_psi(r.total_on_gamma, r.partition, ps.psi_rule);
    return r;
}

void write_preprocess_outputs(const std::string& dir, const PreprocessResult& r) {
    const fs::path d(dir);
    write_measurements((d / "propagated.csv").string(), r.propagated, SampleKind::scattered);
    write_measurements((d / "processed.csv").string(), r.processed, SampleKind::scattered);

    PlaneDataset psi;
    psi.geometry = r.psi.geometry;
    // Stored in increasing wavenumber order like every dataset.
    for (std::size_t n = r.psi.wavenumbers.size(); n-- > 0;) {
        psi.wavenumbers.push_back(r.psi.wavenumbers[n]);
        psi.rows.push_back(r.psi.psi[n].data);
    }
    write_measurements((d / "psi.csv").string(), psi, SampleKind::psi);
    write_file_atomic((d / "region.json").string(), format_region(r.region));

    nlohmann::json b;
    b["k_lo"] = r.band.first;
    b["k_hi"] = r.band.second;
    b["ghz_lo"] = wavenumber_to_ghz(r.band.first);
    b["ghz_hi"] = wavenumber_to_ghz(r.band.second);
    b["n_intervals"] = r.partition.n_intervals;
    b["k_star"] = r.psi.k_star;
    if (r.selected_band)
        b["selected"] = {r.selected_band->first, r.selected_band->second};
    else
        b["selected"] = nullptr;
    b["selection_message"] = r.band_message;
    if (r.calibration) {
        b["calibration"] = {{"wavenumbers", r.calibration->wavenumbers},
                            {"factors", r.calibration->factors},
                            {"provenance", r.calibration->provenance}};
    }
    write_file_atomic((d / "band.json").string(), b.dump(2) + "\n");
}

InversionInputs read_preprocess_outputs(const std::string& dir, const PipelineConfig& cfg) {
    const fs::path d(dir);
    for (const char* name : {"psi.csv", "region.json", "band.json"}) {
        if (!fs::exists(d / name)) throw MissingInput("missing input file " + (d / name).string());
    }
    InversionInputs in;
    const auto band = nlohmann::json::parse(read_file((d / "band.json").string()));
    in.meta.k_lo = band.at("k_lo").get<double>();
    in.meta.k_hi = band.at("k_hi").get<double>();
    in.meta.n_intervals = band.at("n_intervals").get<int>();
    in.meta.k_star = band.value("k_star", 0.0);
    const WavenumberPartition part = build_partition(in.meta.k_lo, in.meta.k_hi, in.meta.n_intervals);

    const MeasurementFile mf = ingest_measurements((d / "psi.csv").string());
    if (mf.kind != SampleKind::psi) throw SchemaError("psi.csv does not hold psi samples");
    in.psi.geometry = mf.data.geometry;
    in.psi.wavenumbers = part.values;
    in.psi.k_star = in.meta.k_star;
    for (double kn : part.values) {
        const std::size_t w = mf.data.nearest(kn);
        if (std::abs(mf.data.wavenumbers[w] - kn) > 1e-9 * kn)
            throw SchemaError("psi.csv has no row for partition wavenumber " + std::to_string(kn));
        in.psi.psi.push_back(mf.data.field(w));
    }
    in.region = parse_region(read_file((d / "region.json").string()));
    (void)cfg;
    return in;
}

ReconstructionResult invert_stage(const InversionInputs& in, const PipelineConfig& cfg,
                                  const IterationCallback& on_iteration) {
    cfg.validate();
    InversionInput input;
    input.partition = build_partition(in.meta.k_lo, in.meta.k_hi, in.meta.n_intervals);
    for (const auto& f : in.psi.psi) input.psi.push_back(complete_psi_boundary(f, cfg.domain));
    input.region = in.region;
    return run_inversion(input, cfg.domain, cfg.inversion, cfg.smoothing, on_iteration);
}

void write_inversion_outputs(const std::string& dir, const ReconstructionResult& r, const ResultMetadata& meta) {
    const fs::path d(dir);
    write_vtk((d / "eps_r.vtk").string(), r.eps_final);
    const Domain& dom = r.eps_final.domain();
    const auto& raw = r.eps_final.raw();
    const std::size_t arg = static_cast<std::size_t>(std::max_element(raw.begin(), raw.end()) - raw.begin());
    const auto [ai, aj, ak] = dom.unravel(arg);
    (void)ai;
    write_file_atomic((d / "slice_xy.csv").string(), format_xy_slice(r.eps_final, ak));
    write_file_atomic((d / "slice_xz.csv").string(), format_xz_slice(r.eps_final, aj));
    std::string lines;
    for (const auto& rec : r.log) lines += to_json_line(rec) + "\n";
    write_file_atomic((d / "iterations.jsonl").string(), lines);
    write_file_atomic((d / "result.json").string(), format_result_json(r, meta));
}

} // namespace gcm
