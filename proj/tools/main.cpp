#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gcm/error.hpp"
#include "gcm/pipeline.hpp"
#include "validate.hpp"

namespace {

enum Exit { ok = 0, config_error = 1, missing_input = 2, simulate_failed = 3, preprocess_failed = 4,
            invert_failed = 5, validate_failed = 6 };

struct Options {
    std::string config;
    std::string band;
    std::string out = "out";
    std::string input;
    int threads = 0;
    std::optional<unsigned long long> seed;
    std::optional<double> noise_pct;
};

gcm::PipelineConfig load(const Options& o) {
    gcm::PipelineConfig cfg = o.config.empty() ? gcm::parse_config("{}") : gcm::load_config(o.config);
    if (!o.band.empty()) {
        const auto colon = o.band.find(':');
        if (colon == std::string::npos) throw gcm::InvalidArgument("--band expects LO:HI");
        cfg.preprocess.band.fixed = std::make_pair(std::stod(o.band.substr(0, colon)), std::stod(o.band.substr(colon + 1)));
    }
    if (o.threads > 0) cfg.threads = o.threads;
    if (o.seed) cfg.simulation.seed = *o.seed;
    if (o.noise_pct) cfg.simulation.noise_pct = *o.noise_pct;
    cfg.out_dir = o.out;
    cfg.validate();
    return cfg;
}

int fail(const char* stage, const std::exception& e, int code) {
    std::fprintf(stderr, "%s: %s\n", stage, e.what());
    return code;
}

int do_simulate(const gcm::PipelineConfig& cfg) {
    const auto mf = gcm::simulate_stage(cfg);
    const std::string path = (std::filesystem::path(cfg.out_dir) / "measurements.csv").string();
    gcm::write_measurements(path, mf.data, mf.kind);
    std::printf("wrote %s (%zu frequencies)\n", path.c_str(), mf.data.count());
    return ok;
}

int do_preprocess(const gcm::PipelineConfig& cfg, const std::string& input) {
    const std::string path = !input.empty() ? input
                             : !cfg.measurement_path.empty()
                                 ? cfg.measurement_path
                                 : (std::filesystem::path(cfg.out_dir) / "measurements.csv").string();
    if (!std::filesystem::exists(path)) throw gcm::MissingInput("missing input file " + path);
    const auto r = gcm::preprocess_stage(gcm::ingest_measurements(path), cfg);
    gcm::write_preprocess_outputs(cfg.out_dir, r);
    std::printf("band [%.6g, %.6g], k* = %.6g, target region %zu samples\n", r.band.first, r.band.second, r.psi.k_star,
                r.region.count());
    return ok;
}

int do_invert(const gcm::PipelineConfig& cfg, const std::string& input) {
    const auto in = gcm::read_preprocess_outputs(input.empty() ? cfg.out_dir : input, cfg);
    const auto r = gcm::invert_stage(in, cfg, [](const gcm::IterationRecord& rec) {
        std::printf("%s\n", gcm::to_json_line(rec).c_str());
        std::fflush(stdout);
    });
    gcm::write_inversion_outputs(cfg.out_dir, r, in.meta);
    std::printf("dielectric constant %.6g at (%.4g, %.4g, %.4g) after %d outer iterations\n", r.dielectric_constant,
                r.argmax_location[0], r.argmax_location[1], r.argmax_location[2], r.outer_iterations);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reconstruction of the dielectric constant from multi-frequency backscatter data"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON configuration file");
        sub->add_option("--out", o.out, "output directory")->capture_default_str();
        sub->add_option("--threads", o.threads, "worker threads");
    };
    auto* sim = app.add_subcommand("simulate", "write synthetic measurements of the configured scene");
    common(sim);
    sim->add_option("--seed", o.seed, "noise seed");
    sim->add_option("--noise-pct", o.noise_pct, "multiplicative noise level in percent");

    auto* pre = app.add_subcommand("preprocess", "propagate, filter and convert measurements to psi data");
    common(pre);
    pre->add_option("--input", o.input, "measurement CSV (default: config measurement_path or OUT/measurements.csv)");
    pre->add_option("--band", o.band, "wavenumber band LO:HI, overrides automatic selection");

    auto* inv = app.add_subcommand("invert", "reconstruct the dielectric constant from preprocessed data");
    common(inv);
    inv->add_option("--input", o.input, "directory with psi.csv, region.json, band.json (default: --out)");

    auto* full = app.add_subcommand("full-run", "simulate (unless measurement_path is set), preprocess and invert");
    common(full);
    full->add_option("--band", o.band, "wavenumber band LO:HI");
    full->add_option("--seed", o.seed, "noise seed");
    full->add_option("--noise-pct", o.noise_pct, "multiplicative noise level in percent");

    auto* val = app.add_subcommand("validate", "run the built-in oracle checks");
    std::string val_dir;
    val->add_option("--out", val_dir, "also check the VTK export of a finished run in this directory");

    CLI11_PARSE(app, argc, argv);

    if (val->parsed()) {
        const int failures = run_validation(val_dir);
        if (failures) std::fprintf(stderr, "validate: %d check(s) failed\n", failures);
        return failures ? validate_failed : ok;
    }

    gcm::PipelineConfig cfg;
    try {
        cfg = load(o);
    } catch (const std::exception& e) {
        return fail("config", e, config_error);
    }

    if (sim->parsed()) {
        try {
            return do_simulate(cfg);
        } catch (const std::exception& e) {
            return fail("simulate", e, simulate_failed);
        }
    }
    if (pre->parsed()) {
        try {
            return do_preprocess(cfg, o.input);
        } catch (const gcm::MissingInput& e) {
            return fail("preprocess", e, missing_input);
        } catch (const std::exception& e) {
            return fail("preprocess", e, preprocess_failed);
        }
    }
    if (inv->parsed()) {
        try {
            return do_invert(cfg, o.input);
        } catch (const gcm::MissingInput& e) {
            return fail("invert", e, missing_input);
        } catch (const std::exception& e) {
            return fail("invert", e, invert_failed);
        }
    }
    if (full->parsed()) {
        std::string measurements = cfg.measurement_path;
        if (measurements.empty()) {
            try {
                do_simulate(cfg);
            } catch (const std::exception& e) {
                return fail("simulate", e, simulate_failed);
            }
        }
        try {
            do_preprocess(cfg, measurements);
        } catch (const gcm::MissingInput& e) {
            return fail("preprocess", e, missing_input);
        } catch (const std::exception& e) {
            return fail("preprocess", e, preprocess_failed);
        }
        try {
            return do_invert(cfg, {});
        } catch (const std::exception& e) {
            return fail("invert", e, invert_failed);
        }
    }
    return ok;
}
