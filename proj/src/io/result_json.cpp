#include <cstdint>
#include <cstdio>
#include <cstring>

#include "gcm/error.hpp"
#include "gcm/io.hpp"
#include "json.hpp"

namespace gcm {

using nlohmann::json;

std::string checksum(const std::vector<double>& values) {
    std::uint64_t h = 14695981039346656037ull;
    for (double v : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_region(const TargetRegion& region) {
    const PlaneGeometry& g = region.lattice;
    json j;
    j["lattice"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx},
                    {"y_min", g.y_min}, {"y_max", g.y_max}, {"ny", g.ny}, {"z_level", g.z_level}};
    j["bounds"] = {{"x_lo", region.x_lo}, {"x_hi", region.x_hi}, {"y_lo", region.y_lo}, {"y_hi", region.y_hi}};
    std::vector<int> mask(region.mask.begin(), region.mask.end());
    j["mask"] = mask;
    return j.dump(2) + "\n";
}

TargetRegion parse_region(const std::string& text) {
    try {
        const json j = json::parse(text);
        TargetRegion r;
        const auto& l = j.at("lattice");
        r.lattice = {l.at("x_min").get<double>(), l.at("x_max").get<double>(), l.at("y_min").get<double>(),
                     l.at("y_max").get<double>(), l.at("nx").get<int>(),      l.at("ny").get<int>(),
                     l.at("z_level").get<double>()};
        r.lattice.validate();
        for (int v : j.at("mask").get<std::vector<int>>()) r.mask.push_back(v ? 1 : 0);
        if (r.mask.size() != r.lattice.size()) throw SchemaError("region mask size does not match its lattice");
        if (r.count() == 0) throw SchemaError("region mask is empty");
        r.update_bounds();
        return r;
    } catch (const json::exception& e) {
        throw SchemaError(std::string("region file: ") + e.what());
    }
}

std::string format_result_json(const ReconstructionResult& r, const ResultMetadata& meta) {
    json j;
    j["dielectric_constant"] = r.dielectric_constant;
    j["argmax_location"] = {r.argmax_location[0], r.argmax_location[1], r.argmax_location[2]};
    json records = json::array();
    for (const auto& rec : r.log) records.push_back(json::parse(to_json_line(rec)));
    j["iterations"] = {{"outer", r.outer_iterations}, {"stopped_by_rule", r.stopped_by_rule}, {"log", records}};
    j["error_sequence"] = r.error_sequence;
    j["band"] = {{"k_lo", meta.k_lo}, {"k_hi", meta.k_hi}, {"n_intervals", meta.n_intervals}, {"k_star", meta.k_star}};
    j["target_region_samples"] = r.target_region.count();
    j["eps_checksum"] = checksum(r.eps_final.raw());
    return j.dump(2) + "\n";
}

} // namespace gcm
