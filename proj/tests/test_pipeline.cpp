#include <filesystem>

#include "doctest.h"
#include "gcm/pipeline.hpp"

using namespace gcm;

namespace {

PipelineConfig small_config() {
    return parse_config(R"({
      "domain": {"x_min": -1.5, "x_max": 1.5, "y_min": -1.5, "y_max": 1.5,
                 "z_min": -0.75, "z_max": 2.25, "nx": 17, "ny": 17, "nz": 17},
      "preprocess": {"band": {"fixed": [6.25, 6.70]}, "psi_rule": "pointwise", "truncate": false},
      "simulation": {
        "scene": [],
        "plane": {"x_min": -3.0, "x_max": 3.0, "y_min": -3.0, "y_max": 3.0, "nx": 21, "ny": 21, "z_level": -1.25},
        "sweep_lo_ghz": 2.90, "sweep_hi_ghz": 3.30, "sweep_count": 9
      }
    })");
}

std::string fresh_dir(const char* name) {
    const auto p = std::filesystem::temp_directory_path() / "gcm_pipeline_tests" / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("empty scene reconstructs air through every stage") {
    const PipelineConfig cfg = small_config();
    const auto mf = simulate_stage(cfg);
    const auto pre = preprocess_stage(mf, cfg);
    CHECK(pre.band == std::pair<double, double>{6.25, 6.70});
    const std::string dir = fresh_dir("air");
    write_preprocess_outputs(dir, pre);
    const auto in = read_preprocess_outputs(dir, cfg);
    const auto r = invert_stage(in, cfg);
    CHECK(r.outer_iterations <= 2);
    double worst = 0.0;
    for (double v : r.eps_final.raw()) worst = std::max(worst, std::abs(v - 1.0));
    CHECK(worst <= 1e-3);

    write_inversion_outputs(dir, r, in.meta);
    for (const char* f : {"eps_r.vtk", "result.json", "iterations.jsonl"})
        CHECK(std::filesystem::exists(std::filesystem::path(dir) / f));
    CHECK(read_vtk((std::filesystem::path(dir) / "eps_r.vtk").string()).raw() == r.eps_final.raw());

    SUBCASE("repeated inversion is bit-identical") {
        const auto again = invert_stage(read_preprocess_outputs(dir, cfg), cfg);
        CHECK(format_result_json(again, in.meta) == format_result_json(r, in.meta));
        CHECK(format_vtk(again.eps_final) == format_vtk(r.eps_final));
    }
}

TEST_CASE("inversion without preprocessed data names the missing file") {
    const std::string dir = fresh_dir("empty");
    try {
        read_preprocess_outputs(dir, small_config());
        FAIL("expected MissingInput");
    } catch (const MissingInput& e) {
        CHECK(std::string(e.what()).find(".csv") != std::string::npos);
    }
}

}
