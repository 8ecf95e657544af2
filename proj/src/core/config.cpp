#include "gcm/config.hpp"

#include <fstream>
#include <sstream>

#include "gcm/error.hpp"
#include "json.hpp"

namespace gcm {

using nlohmann::json;

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

Point3 read_point(const json& j) {
    const auto v = j.get<std::vector<double>>();
    if (v.size() != 3) throw InvalidArgument("config: expected a 3-vector");
    return {v[0], v[1], v[2]};
}

template <class E>
E read_enum(const json& j, const char* key, E fallback,
            std::initializer_list<std::pair<const char*, E>> names) {
    if (!j.contains(key)) return fallback;
    const auto s = j.at(key).get<std::string>();
    for (const auto& [name, value] : names)
        if (s == name) return value;
    throw InvalidArgument(std::string("config: unknown value '") + s + "' for " + key);
}

void read_krylov(const json& j, const char* key, KrylovSettings& k) {
    if (!j.contains(key)) return;
    const json& s = j.at(key);
    read(s, "tol", k.tol);
    read(s, "restart", k.restart);
    read(s, "max_iter", k.max_iter);
}

SceneObject read_object(const json& j) {
    SceneObject o;
    o.shape = read_enum(j, "type", SceneObject::Shape::ball,
                        {{"ball", SceneObject::Shape::ball}, {"box", SceneObject::Shape::box}});
    o.profile = read_enum(j, "profile", SceneObject::Profile::sharp,
                          {{"sharp", SceneObject::Profile::sharp},
                           {"smooth", SceneObject::Profile::smooth}});
    if (j.contains("center")) o.center = read_point(j.at("center"));
    read(j, "radius", o.radius);
    if (j.contains("min")) o.box_min = read_point(j.at("min"));
    if (j.contains("max")) o.box_max = read_point(j.at("max"));
    read(j, "eps", o.eps);
    return o;
}

void read_plane(const json& j, PlaneGeometry& p) {
    read(j, "x_min", p.x_min);
    read(j, "x_max", p.x_max);
    read(j, "y_min", p.y_min);
    read(j, "y_max", p.y_max);
    read(j, "nx", p.nx);
    read(j, "ny", p.ny);
    read(j, "z_level", p.z_level);
}

} // namespace

std::vector<double> SimulationSettings::sweep_ghz() const {
    if (!frequencies_ghz.empty()) return frequencies_ghz;
    if (sweep_count < 1) throw InvalidArgument("simulation sweep needs at least one frequency");
    std::vector<double> f(static_cast<std::size_t>(sweep_count));
    for (int i = 0; i < sweep_count; ++i) {
        f[i] = sweep_count == 1 ? sweep_lo_ghz
                                : sweep_lo_ghz + (sweep_hi_ghz - sweep_lo_ghz) * i / (sweep_count - 1);
    }
    return f;
}

void PipelineConfig::validate() const {
    domain.validate();
    if (!(k_lo > 0.0 && k_hi > k_lo)) throw InvalidArgument("config: need 0 < k_lo < k_hi");
    if (n_intervals < 1) throw InvalidArgument("config: n_intervals must be >= 1");
    const auto unit = [](double v, const char* what) {
        if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument(std::string("config: ") + what + " must lie in (0,1]");
    };
    unit(preprocess.data_truncation, "data_truncation");
    unit(preprocess.target_threshold, "target_threshold");
    if (!(inversion.stop_inner > 0.0) || !(inversion.stop_outer > 0.0)) {
        throw InvalidArgument("config: stopping thresholds must be positive");
    }
    if (inversion.inner_cap < 2) throw InvalidArgument("config: inner_cap must be >= 2");
    if (smoothing.kernel_size < 1 || smoothing.kernel_size % 2 == 0) {
        throw InvalidArgument("config: smoothing kernel_size must be odd");
    }
    if (!(smoothing.sigma > 0.0)) throw InvalidArgument("config: smoothing sigma must be positive");
    if (!(inversion.search_z.first < inversion.search_z.second)) {
        throw InvalidArgument("config: search_z must be an increasing pair");
    }
    if (threads < 1) throw InvalidArgument("config: threads must be >= 1");
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig c;
    json j;
    try {
        j = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    try {
        if (j.contains("domain")) {
            const json& d = j.at("domain");
            read(d, "x_min", c.domain.x_min);
            read(d, "x_max", c.domain.x_max);
            read(d, "y_min", c.domain.y_min);
            read(d, "y_max", c.domain.y_max);
            read(d, "z_min", c.domain.z_min);
            read(d, "z_max", c.domain.z_max);
            read(d, "nx", c.domain.nx);
            read(d, "ny", c.domain.ny);
            read(d, "nz", c.domain.nz);
        }
        if (j.contains("partition")) {
            const json& p = j.at("partition");
            read(p, "k_lo", c.k_lo);
            read(p, "k_hi", c.k_hi);
            read(p, "n_intervals", c.n_intervals);
        }
        if (j.contains("smoothing")) {
            read(j.at("smoothing"), "kernel_size", c.smoothing.kernel_size);
            read(j.at("smoothing"), "sigma", c.smoothing.sigma);
        }
        if (j.contains("preprocess")) {
            const json& p = j.at("preprocess");
            auto& s = c.preprocess;
            s.propagation_sign = read_enum(p, "propagation_sign", s.propagation_sign,
                                           {{"outgoing", PropagationSign::outgoing},
                                            {"as_printed", PropagationSign::as_printed}});
            if (p.contains("band")) {
                const json& b = p.at("band");
                if (b.contains("fixed") && !b.at("fixed").is_null()) {
                    const auto v = b.at("fixed").get<std::vector<double>>();
                    if (v.size() != 2) throw InvalidArgument("config: band.fixed must be [k_lo, k_hi]");
                    s.band.fixed = std::make_pair(v[0], v[1]);
                }
                read(b, "automatic", s.band.automatic);
                read(b, "max_argmax_shift", s.band.max_argmax_shift);
                read(b, "max_relative_jump", s.band.max_relative_jump);
                read(b, "min_run", s.band.min_run);
            }
            read(p, "pad_factor", s.pad_factor);
            read(p, "truncate", s.truncate);
            read(p, "data_truncation", s.data_truncation);
            read(p, "target_threshold", s.target_threshold);
            read(p, "reference_ghz", s.reference_ghz);
            s.calibration = read_enum(p, "calibration", s.calibration,
                                      {{"none", CalibrationMode::none},
                                       {"per_k", CalibrationMode::per_k},
                                       {"band_average", CalibrationMode::band_average}});
            read(p, "calibration_simulated", s.calibration_simulated);
            read(p, "calibration_measured", s.calibration_measured);
            s.psi_rule = read_enum(p, "psi_rule", s.psi_rule,
                                   {{"k_star", PsiRule::k_star}, {"pointwise", PsiRule::pointwise}});
        }
        if (j.contains("inversion")) {
            const json& p = j.at("inversion");
            auto& s = c.inversion;
            read(p, "inner_cap", s.inner_cap);
            read(p, "stop_inner", s.stop_inner);
            read(p, "stop_outer", s.stop_outer);
            if (p.contains("search_z")) {
                const auto v = p.at("search_z").get<std::vector<double>>();
                if (v.size() != 2) throw InvalidArgument("config: search_z must be [z_a, z_b]");
                s.search_z = {v[0], v[1]};
            }
            read(p, "eps_upper", s.eps_upper);
            s.averaging = read_enum(p, "averaging", s.averaging,
                                    {{"window", Averaging::window},
                                     {"both_outers", Averaging::both_outers}});
            s.eps_wavenumber = read_enum(p, "eps_wavenumber", s.eps_wavenumber,
                                         {{"k_n", EpsWavenumber::k_n}, {"k_bar", EpsWavenumber::k_bar}});
            read_krylov(p, "bvp", s.bvp);
            s.bvp_preconditioner = read_enum(p, "bvp_preconditioner", s.bvp_preconditioner,
                                             {{"jacobi", Preconditioner::jacobi},
                                              {"laplace", Preconditioner::laplace},
                                              {"convection", Preconditioner::convection},
                                              {"lu", Preconditioner::lu}});
            read_krylov(p, "lippmann_schwinger", s.lippmann_schwinger);
        }
        if (j.contains("simulation")) {
            const json& p = j.at("simulation");
            auto& s = c.simulation;
            if (p.contains("scene")) {
                for (const auto& o : p.at("scene")) s.scene.objects.push_back(read_object(o));
            }
            if (p.contains("plane")) read_plane(p.at("plane"), s.plane);
            read(p, "frequencies_ghz", s.frequencies_ghz);
            read(p, "sweep_lo_ghz", s.sweep_lo_ghz);
            read(p, "sweep_hi_ghz", s.sweep_hi_ghz);
            read(p, "sweep_count", s.sweep_count);
            read(p, "grid_spacing", s.grid_spacing);
            read(p, "scattered", s.scattered);
            read(p, "noise_pct", s.noise_pct);
            read(p, "seed", s.seed);
        }
        read(j, "measurement_path", c.measurement_path);
        read(j, "out_dir", c.out_dir);
        read(j, "threads", c.threads);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace gcm
