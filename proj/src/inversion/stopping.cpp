#include <algorithm>
#include <cstdio>
#include <sstream>

#include "gcm/error.hpp"
#include "gcm/inversion.hpp"

namespace gcm {

double relative_error(const RealField& a, const RealField& b) {
    require_same_domain(a.domain(), b.domain(), "relative_error");
    RealField diff(a.domain());
    for (std::size_t s = 0; s < a.size(); ++s) diff[s] = a[s] - b[s];
    const double den = l2_norm(b);
    if (den == 0.0) throw DivisionGuard("relative_error: reference field has zero norm");
    return l2_norm(diff) / den;
}

bool stopping_inner(const std::vector<double>& errors, int i, int cap, double threshold) {
    if (i < 1) throw InvalidArgument("inner index starts at 1");
    if (i >= cap) return true;
    return i >= 2 && !errors.empty() && errors.front() < threshold;
}

std::optional<std::size_t> find_stopping_window(const std::vector<double>& sequence, double threshold) {
    for (std::size_t p = 0; p + 2 < sequence.size(); ++p)
        if (sequence[p] <= threshold && sequence[p + 1] <= threshold && sequence[p + 2] <= threshold) return p;
    return std::nullopt;
}

bool stopping_outer(const std::vector<double>& sequence, double threshold) {
    return find_stopping_window(sequence, threshold).has_value();
}

std::optional<std::size_t> stopping_outer_segments(const std::vector<std::vector<double>>& segments, double threshold) {
    std::size_t offset = 0;
    for (std::size_t n = 0; n + 1 < segments.size(); ++n) {
        std::vector<double> combined = segments[n];
        combined.insert(combined.end(), segments[n + 1].begin(), segments[n + 1].end());
        if (auto p = find_stopping_window(combined, threshold)) return offset + *p;
        offset += segments[n].size();
    }
    return std::nullopt;
}

std::string to_json_line(const IterationRecord& r) {
    char buf[512];
    char e[64];
    if (r.e_value)
        std::snprintf(e, sizeof e, "%.17g", *r.e_value);
    else
        std::snprintf(e, sizeof e, "null");
    std::snprintf(buf, sizeof buf,
                  "{\"n\": %d, \"i\": %d, \"e_value\": %s, \"max_eps\": %.17g, \"residuals\": "
                  "{\"bvp\": %.6g, \"bvp_iterations\": %d, \"lippmann_schwinger\": %.6g, "
                  "\"ls_iterations\": %d}, \"peclet_warning\": %s}",
                  r.n, r.i, e, r.max_eps, r.bvp_residual, r.bvp_iterations, r.ls_residual, r.ls_iterations,
                  r.peclet_warning ? "true" : "false");
    return buf;
}

ReconstructionResult finalize(const std::vector<PermittivityField>& candidates) {
    if (candidates.empty()) throw InvalidState("finalize needs at least one candidate");
    const Domain& d = candidates.front().domain();
    std::vector<double> mean(d.size(), 0.0);
    for (const auto& c : candidates) {
        require_same_domain(c.domain(), d, "finalize");
        for (std::size_t s = 0; s < d.size(); ++s) mean[s] += c[s];
    }
    const double inv = 1.0 / static_cast<double>(candidates.size());
    for (auto& v : mean) v *= inv;
    ReconstructionResult r;
    r.eps_final = PermittivityField(d, std::move(mean));
    const auto& raw = r.eps_final.raw();
    const std::size_t arg = static_cast<std::size_t>(std::max_element(raw.begin(), raw.end()) - raw.begin());
    r.dielectric_constant = raw[arg];
    r.argmax_location = d.point(arg);
    return r;
}

} // namespace gcm
