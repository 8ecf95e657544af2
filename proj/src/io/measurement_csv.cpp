#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "gcm/error.hpp"
#include "gcm/io.hpp"
#include "gcm/units.hpp"

namespace gcm {

using namespace units;

namespace {

constexpr const char* kFormatTag = "gcm-measurements v1";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (trim(s.substr(used)).empty()) return v;
    } catch (const std::exception&) {
    }
    throw SchemaError("line " + std::to_string(line) + ": not a number: '" + s + "'");
}

SampleKind parse_kind(const std::string& s) {
    if (s == "total") return SampleKind::total;
    if (s == "scattered") return SampleKind::scattered;
    if (s == "psi") return SampleKind::psi;
    throw SchemaError("unknown field kind '" + s + "'");
}

} // namespace

const char* to_string(SampleKind kind) {
    switch (kind) {
    case SampleKind::total: return "total";
    case SampleKind::scattered: return "scattered";
    case SampleKind::psi: return "psi";
    }
    return "?";
}

std::string format_measurements(const PlaneDataset& data, SampleKind kind) {
    data.validate();
    const PlaneGeometry& g = data.geometry;
    std::string out;
    out += std::string("# ") + kFormatTag + "\n";
    out += std::string("# units: ") + unit_tag + "\n";
    out += std::string("# field: ") + to_string(kind) + "\n";
    out += "# z_level: " + fmt(g.z_level) + "\n";
    out += "# x: " + fmt(g.x_min) + " " + fmt(g.x_max) + " " + std::to_string(g.nx) + "\n";
    out += "# y: " + fmt(g.y_min) + " " + fmt(g.y_max) + " " + std::to_string(g.ny) + "\n";
    out += "# frequencies: " + std::to_string(data.count()) + "\n";
    out += "freq_ghz,x,y,re,im\n";
    for (std::size_t w = 0; w < data.count(); ++w) {
        const std::string f = fmt(wavenumber_to_ghz(data.wavenumbers[w]));
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const cplx v = data.rows[w][g.index(i, j)];
                out += f + "," + fmt(g.x(i)) + "," + fmt(g.y(j)) + "," + fmt(v.real()) + "," + fmt(v.imag()) + "\n";
            }
    }
    return out;
}

MeasurementFile parse_measurements(const std::string& text) {
    if (trim(text).empty()) throw SchemaError("measurement file is empty");
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::map<std::string, std::string> header;
    bool columns_seen = false;
    struct Row {
        double f, x, y, re, im;
        std::size_t line;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string body = trim(t.substr(1));
            const auto colon = body.find(':');
            if (colon == std::string::npos)
                header["format"] = body;
            else
                header[trim(body.substr(0, colon))] = trim(body.substr(colon + 1));
            continue;
        }
        if (!columns_seen) {
            if (t != "freq_ghz,x,y,re,im") throw SchemaError("expected column header 'freq_ghz,x,y,re,im'");
            columns_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(t);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (cells.size() != 5) throw SchemaError("line " + std::to_string(lineno) + ": expected 5 columns");
        rows.push_back({parse_double(cells[0], lineno), parse_double(cells[1], lineno), parse_double(cells[2], lineno),
                        parse_double(cells[3], lineno), parse_double(cells[4], lineno), lineno});
    }

    if (header["format"] != kFormatTag) throw SchemaError(std::string("missing format tag '") + kFormatTag + "'");
    if (!header.count("units")) throw UnitError("missing unit tag");
    if (header["units"] != unit_tag)
        throw UnitError("unit tag '" + header["units"] + "' is not '" + unit_tag + "'");
    for (const char* key : {"field", "z_level", "x", "y", "frequencies"})
        if (!header.count(key)) throw SchemaError(std::string("missing header field '") + key + "'");
    if (!columns_seen) throw SchemaError("missing column header");

    MeasurementFile mf;
    mf.kind = parse_kind(header["field"]);
    PlaneGeometry& g = mf.data.geometry;
    g.z_level = parse_double(header["z_level"], 0);
    {
        std::istringstream xs(header["x"]), ys(header["y"]);
        if (!(xs >> g.x_min >> g.x_max >> g.nx) || !(ys >> g.y_min >> g.y_max >> g.ny))
            throw SchemaError("malformed lattice header");
    }
    try {
        g.validate();
    } catch (const InvalidArgument& e) {
        throw SchemaError(e.what());
    }
    const int nf = std::stoi(header["frequencies"]);
    if (nf < 1) throw SchemaError("frequency count must be positive");

    std::vector<double> freqs;
    for (const auto& r : rows) freqs.push_back(r.f);
    std::sort(freqs.begin(), freqs.end());
    freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
    if (static_cast<int>(freqs.size()) != nf)
        throw SchemaError("header lists " + std::to_string(nf) + " frequencies, rows hold " +
                          std::to_string(freqs.size()));

    const std::size_t per = g.size();
    std::vector<std::vector<cplx>> data(freqs.size(), std::vector<cplx>(per));
    std::vector<std::vector<char>> seen(freqs.size(), std::vector<char>(per, 0));
    auto snap = [](double v, double lo, double d, int n, std::size_t line) {
        const double f = n > 1 ? (v - lo) / d : 0.0;
        const long i = std::lround(f);
        if (i < 0 || i >= n || std::abs(f - i) > 1e-6)
            throw SchemaError("line " + std::to_string(line) + ": coordinate off the lattice");
        return static_cast<int>(i);
    };
    for (const auto& r : rows) {
        const std::size_t w = static_cast<std::size_t>(std::lower_bound(freqs.begin(), freqs.end(), r.f) - freqs.begin());
        const int i = snap(r.x, g.x_min, g.dx(), g.nx, r.line);
        const int j = snap(r.y, g.y_min, g.dy(), g.ny, r.line);
        const std::size_t s = g.index(i, j);
        if (seen[w][s]) throw SchemaError("line " + std::to_string(r.line) + ": duplicate lattice point");
        seen[w][s] = 1;
        data[w][s] = cplx(r.re, r.im);
    }
    std::ostringstream gaps;
    std::size_t missing = 0;
    for (std::size_t w = 0; w < freqs.size(); ++w)
        for (std::size_t s = 0; s < per; ++s) {
            if (seen[w][s]) continue;
            if (missing < 20)
                gaps << " (" << freqs[w] << " GHz, " << g.x(static_cast<int>(s % g.nx)) << ", "
                     << g.y(static_cast<int>(s / g.nx)) << ")";
            ++missing;
        }
    if (missing) throw SchemaError("missing " + std::to_string(missing) + " lattice points:" + gaps.str());

    mf.frequencies_ghz = freqs;
    for (double f : freqs) mf.data.wavenumbers.push_back(ghz_to_wavenumber(f));
    mf.data.rows = std::move(data);
    mf.data.validate();
    return mf;
}

void write_measurements(const std::string& path, const PlaneDataset& data, SampleKind kind) {
    write_file_atomic(path, format_measurements(data, kind));
}

MeasurementFile ingest_measurements(const std::string& path) {
    try {
        return parse_measurements(read_file(path));
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    } catch (const UnitError& e) {
        throw UnitError(path + ": " + e.what());
    }
}

} // namespace gcm
