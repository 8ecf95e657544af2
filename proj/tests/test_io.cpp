#include <filesystem>
#include <random>

#include "doctest.h"
#include "gcm/error.hpp"
#include "gcm/io.hpp"
#include "gcm/units.hpp"

using namespace gcm;
using namespace std::complex_literals;

namespace {

PlaneDataset random_dataset(int nx, int ny, std::vector<double> ghz, unsigned seed = 1) {
    PlaneDataset d;
    d.geometry = {-1.0, 1.0, -0.6, 0.6, nx, ny, -1.25};
    for (double f : ghz) d.wavenumbers.push_back(units::ghz_to_wavenumber(f));
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t w = 0; w < ghz.size(); ++w) {
        std::vector<cplx> row(d.geometry.size());
        for (auto& v : row) v = cplx(n(rng), n(rng)) * 1e-3;
        d.rows.push_back(row);
    }
    return d;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
    const auto p = s.find(from);
    REQUIRE(p != std::string::npos);
    return s.replace(p, from.size(), to);
}

std::filesystem::path scratch(const char* name) {
    auto p = std::filesystem::temp_directory_path() / "gcm_io_tests";
    std::filesystem::create_directories(p);
    return p / name;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("measurement CSV round trip is lossless") {
    const auto d = random_dataset(5, 4, {2.95, 3.1, 3.22});
    const auto mf = parse_measurements(format_measurements(d, SampleKind::scattered));
    CHECK(mf.kind == SampleKind::scattered);
    CHECK(mf.data.geometry == d.geometry);
    CHECK(mf.data.rows == d.rows);
    REQUIRE(mf.frequencies_ghz.size() == 3);
    CHECK(mf.frequencies_ghz[1] == doctest::Approx(3.1).epsilon(1e-15));
    CHECK(mf.data.wavenumbers[1] == doctest::Approx(6.49).epsilon(1e-3));

    const auto path = scratch("m.csv").string();
    write_measurements(path, d, SampleKind::total);
    const auto back = ingest_measurements(path);
    CHECK(back.kind == SampleKind::total);
    CHECK(back.data.rows == d.rows);
}

TEST_CASE("full-size lattice gives one row per frequency") {
    const auto d = random_dataset(51, 50, {3.0, 3.01, 3.02, 3.03});
    const auto mf = parse_measurements(format_measurements(d, SampleKind::scattered));
    CHECK(mf.data.count() == 4);
    for (const auto& row : mf.data.rows) CHECK(row.size() == 2550);
}

TEST_CASE("schema and unit errors") {
    const std::string good = format_measurements(random_dataset(3, 3, {3.0, 3.1}), SampleKind::scattered);
    CHECK_THROWS_AS(parse_measurements(""), SchemaError);
    CHECK_THROWS_AS(parse_measurements(replace(good, "# units: dimensionless-0.1m\n", "")), UnitError);
    CHECK_THROWS_AS(parse_measurements(replace(good, "dimensionless-0.1m", "cm")), UnitError);
    CHECK_THROWS_AS(parse_measurements(replace(good, "# field: scattered", "# field: voltage")), SchemaError);

    // Drop the last data row: a gap.
    std::string gap = good;
    gap.pop_back();
    gap.erase(gap.rfind('\n') + 1);
    try {
        parse_measurements(gap);
        FAIL("expected a schema error");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("missing 1 lattice points") != std::string::npos);
    }

    // Repeat the first data row: a duplicate.
    const auto first = good.find("freq_ghz,x,y,re,im\n") + 19;
    const std::string row = good.substr(first, good.find('\n', first) - first + 1);
    CHECK_THROWS_AS(parse_measurements(good + row), SchemaError);
    CHECK_THROWS_AS(parse_measurements(replace(good, "freq_ghz,x,y,re,im", "f,x,y,re,im")), SchemaError);
}

TEST_CASE("VTK export round trip") {
    Domain d{-1.0, 1.0, -0.5, 0.5, 0.0, 2.0, 4, 3, 5};
    PermittivityField eps(d, 1.0);
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(1.0, 5.0);
    for (auto& v : eps.raw()) v = u(rng);
    const std::string text = format_vtk(eps);
    CHECK(text.find("DATASET STRUCTURED_POINTS") != std::string::npos);
    CHECK(text.find("DIMENSIONS 4 3 5") != std::string::npos);
    CHECK(text.find("SCALARS eps_r double") != std::string::npos);
    const auto back = parse_vtk(text);
    CHECK(back.domain() == d);
    CHECK(back.raw() == eps.raw());

    const auto path = scratch("eps.vtk").string();
    write_vtk(path, eps);
    CHECK(read_vtk(path).raw() == eps.raw());
}

TEST_CASE("slices") {
    Domain d{0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 2, 2, 2};
    PermittivityField eps(d, 1.0);
    eps(1, 0, 1) = 3.0;
    const auto xy = format_xy_slice(eps, 1);
    CHECK(xy.find("1,0,3") != std::string::npos);
    const auto xz = format_xz_slice(eps, 0);
    CHECK(xz.find("1,1,3") != std::string::npos);
}

TEST_CASE("region round trip") {
    TargetRegion r;
    r.lattice = {-1.0, 1.0, -1.0, 1.0, 5, 5, -0.75};
    r.mask.assign(25, 0);
    r.mask[r.lattice.index(2, 2)] = r.mask[r.lattice.index(3, 2)] = 1;
    r.update_bounds();
    const auto back = parse_region(format_region(r));
    CHECK(back.lattice == r.lattice);
    CHECK(back.mask == r.mask);
    CHECK(back.x_lo == r.x_lo);
    CHECK(back.x_hi == r.x_hi);
    CHECK_THROWS_AS(parse_region("{}"), SchemaError);
}

TEST_CASE("checksum") {
    CHECK(checksum({}) == "cbf29ce484222325");
    CHECK(checksum({1.0}) != checksum({-1.0}));
    CHECK(checksum({1.0, 2.0}) == checksum({1.0, 2.0}));
    CHECK(checksum({1.0, 2.0}).size() == 16);
}

TEST_CASE("atomic writes replace the whole file") {
    const auto path = scratch("atomic.txt").string();
    write_file_atomic(path, "first version, longer\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(path).parent_path()))
        CHECK(e.path().filename().string().find(".tmp") == std::string::npos);
}

}
