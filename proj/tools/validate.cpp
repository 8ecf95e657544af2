#include "validate.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>

#include "gcm/elliptic.hpp"
#include "gcm/green.hpp"
#include "gcm/inversion.hpp"
#include "gcm/io.hpp"
#include "gcm/lippmann_schwinger.hpp"
#include "gcm/partition.hpp"
#include "gcm/preprocess.hpp"
#include "json.hpp"

namespace {

using gcm::cplx;

bool green_closed_form() {
    const double g = std::abs(gcm::green_function({0, 0, 0}, {1, 0, 0}, 0.0) - 1.0 / (4 * std::numbers::pi));
    const cplx expect = std::exp(cplx(0, 6.575 * 0.5)) / (2 * std::numbers::pi);
    const double h = std::abs(gcm::green_function({0, 0, 0}, {0, 0.5, 0}, 6.575) - expect);
    return g < 1e-15 && h < 1e-14;
}

bool partition_example() {
    const auto p = gcm::build_partition(6.25, 6.70, 9);
    return std::abs(p.h - 0.05) < 1e-12 && std::abs(p.values.front() - 6.70) < 1e-12 &&
           std::abs(p.values.back() - 6.25) < 1e-12;
}

bool homogeneous_forward() {
    gcm::Domain d{-1, 1, -1, 1, -1, 1, 9, 9, 9};
    const gcm::PermittivityField eps(d, 1.0);
    const auto u = gcm::solve_total_field(eps, 6.5);
    double err = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s)
        err = std::max(err, std::abs(u[s] - std::exp(cplx(0, 6.5 * d.point(s)[2]))));
    return err == 0.0;
}

bool harmonic_quadratic() {
    gcm::Domain d{-1, 1, -1, 1, -1, 1, 9, 9, 9};
    auto f = [](const gcm::Point3& p) { return cplx(p[0] * p[0] - p[1] * p[1], 0.0); };
    gcm::DirichletProblem prob;
    prob.domain = d;
    prob.boundary = gcm::BoundaryField::from_function(d, f);
    const auto sol = gcm::solve_dirichlet(prob);
    double err = 0.0;
    for (std::size_t s = 0; s < d.size(); ++s) err = std::max(err, std::abs(sol.solution[s] - f(d.point(s))));
    return err < 1e-10;
}

bool propagation_round_trip() {
    gcm::PlaneGeometry g{-2, 2, -2, 2, 32, 32, -1.0};
    gcm::PlaneField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f(i, j) = std::exp(-(g.x(i) * g.x(i) + g.y(j) * g.y(j)));
    const double k = 6.5;
    const auto lim = gcm::band_limit(f, k, 1);
    const auto there = gcm::angular_spectrum_shift(f, k, -0.5, gcm::PropagationSign::outgoing, 1);
    const auto back = gcm::angular_spectrum_shift(there, k, -1.0, gcm::PropagationSign::outgoing, 1);
    double num = 0.0, den = 0.0;
    for (std::size_t s = 0; s < lim.data.size(); ++s) {
        num += std::norm(back.data[s] - lim.data[s]);
        den += std::norm(lim.data[s]);
    }
    return std::sqrt(num / den) < 1e-8;
}

bool kernel_normalized() {
    double sum = 0.0;
    for (double w : gcm::gaussian_kernel_1d(3, 0.65)) sum += w;
    return std::abs(sum - 1.0) < 1e-12;
}

bool stopping_examples() {
    using gcm::stopping_inner;
    using gcm::stopping_outer;
    return stopping_inner({1e-7}, 2) && stopping_inner({1e-3, 1e-3}, 3) && !stopping_inner({1e-3}, 2) &&
           stopping_outer({1e-3, 4e-4, 3e-4, 2e-4}) && !stopping_outer({4e-4, 1e-3, 4e-4, 4e-4}) &&
           !stopping_outer({1e-2, 1e-2, 1e-2, 1e-2});
}

bool csv_round_trip() {
    gcm::PlaneDataset d;
    d.geometry = {-1, 1, -1, 1, 3, 2, -0.75};
    d.wavenumbers = {6.25, 6.5};
    d.rows = {{{0.1, 1.0 / 3.0}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {1e-300, -0.0}},
              {{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {std::numbers::pi, std::numbers::e}}};
    const auto back = gcm::parse_measurements(gcm::format_measurements(d, gcm::SampleKind::scattered));
    return back.data.rows == d.rows;
}

bool vtk_reimport(const std::string& dir) {
    namespace fs = std::filesystem;
    const auto eps = gcm::read_vtk((fs::path(dir) / "eps_r.vtk").string());
    const auto j = nlohmann::json::parse(gcm::read_file((fs::path(dir) / "result.json").string()));
    return gcm::checksum(eps.raw()) == j.at("eps_checksum").get<std::string>();
}

} // namespace

int run_validation(const std::string& out_dir) {
    std::vector<std::pair<std::string, std::function<bool()>>> checks{
        {"green function closed forms", green_closed_form},
        {"wavenumber partition", partition_example},
        {"homogeneous forward solve", homogeneous_forward},
        {"discrete harmonic quadratic", harmonic_quadratic},
        {"angular spectrum round trip", propagation_round_trip},
        {"Gaussian kernel normalization", kernel_normalized},
        {"stopping rule examples", stopping_examples},
        {"measurement CSV round trip", csv_round_trip},
    };
    namespace fs = std::filesystem;
    if (!out_dir.empty() && fs::exists(fs::path(out_dir) / "eps_r.vtk") && fs::exists(fs::path(out_dir) / "result.json"))
        checks.emplace_back("VTK re-import matches result checksum", [&] { return vtk_reimport(out_dir); });
    int failures = 0;
    for (const auto& [name, fn] : checks) {
        bool ok = false;
        std::string why;
        try {
            ok = fn();
        } catch (const std::exception& e) {
            why = std::string(" (") + e.what() + ")";
        }
        std::printf("%s  %s%s\n", ok ? "PASS" : "FAIL", name.c_str(), why.c_str());
        if (!ok) ++failures;
    }
    return failures;
}
