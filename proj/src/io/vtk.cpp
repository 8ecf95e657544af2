#include <cstdio>
#include <sstream>

#include "gcm/error.hpp"
#include "gcm/io.hpp"

namespace gcm {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string format_vtk(const RealField& eps) {
    const Domain& d = eps.domain();
    std::string out;
    out += "# vtk DataFile Version 3.0\n";
    out += "eps_r\n";
    out += "ASCII\n";
    out += "DATASET STRUCTURED_POINTS\n";
    out += "DIMENSIONS " + std::to_string(d.nx) + " " + std::to_string(d.ny) + " " + std::to_string(d.nz) + "\n";
    out += "ORIGIN " + fmt(d.x_min) + " " + fmt(d.y_min) + " " + fmt(d.z_min) + "\n";
    out += "SPACING " + fmt(d.dx()) + " " + fmt(d.dy()) + " " + fmt(d.dz()) + "\n";
    out += "POINT_DATA " + std::to_string(d.size()) + "\n";
    out += "SCALARS eps_r double 1\n";
    out += "LOOKUP_TABLE default\n";
    for (double v : eps.raw()) out += fmt(v) + "\n";
    return out;
}

PermittivityField parse_vtk(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto expect_line = [&](const std::string& prefix) {
        if (!std::getline(in, line) || line.rfind(prefix, 0) != 0)
            throw SchemaError("VTK: expected '" + prefix + "'");
        return line.substr(prefix.size());
    };
    expect_line("# vtk DataFile Version");
    std::getline(in, line);  // title
    expect_line("ASCII");
    expect_line("DATASET STRUCTURED_POINTS");
    Domain d;
    double ox, oy, oz, sx, sy, sz;
    std::istringstream(expect_line("DIMENSIONS ")) >> d.nx >> d.ny >> d.nz;
    std::istringstream(expect_line("ORIGIN ")) >> ox >> oy >> oz;
    std::istringstream(expect_line("SPACING ")) >> sx >> sy >> sz;
    d.x_min = ox;
    d.y_min = oy;
    d.z_min = oz;
    d.x_max = ox + sx * (d.nx - 1);
    d.y_max = oy + sy * (d.ny - 1);
    d.z_max = oz + sz * (d.nz - 1);
    d.validate();
    std::size_t count = 0;
    std::istringstream(expect_line("POINT_DATA ")) >> count;
    if (count != d.size()) throw SchemaError("VTK: POINT_DATA does not match DIMENSIONS");
    const std::string scalars = expect_line("SCALARS ");
    if (scalars.rfind("eps_r", 0) != 0) throw SchemaError("VTK: scalar field must be named eps_r");
    expect_line("LOOKUP_TABLE");
    std::vector<double> values;
    values.reserve(count);
    while (values.size() < count && std::getline(in, line)) {
        if (line.empty()) continue;
        values.push_back(std::stod(line));
    }
    if (values.size() != count) throw SchemaError("VTK: truncated data");
    return PermittivityField(d, std::move(values));
}

void write_vtk(const std::string& path, const RealField& eps) { write_file_atomic(path, format_vtk(eps)); }

PermittivityField read_vtk(const std::string& path) { return parse_vtk(read_file(path)); }

std::string format_xy_slice(const RealField& eps, int k) {
    const Domain& d = eps.domain();
    if (k < 0 || k >= d.nz) throw InvalidArgument("slice index out of range");
    std::string out = "x,y,eps_r\n";
    for (int j = 0; j < d.ny; ++j)
        for (int i = 0; i < d.nx; ++i) out += fmt(d.x(i)) + "," + fmt(d.y(j)) + "," + fmt(eps(i, j, k)) + "\n";
    return out;
}

std::string format_xz_slice(const RealField& eps, int j) {
    const Domain& d = eps.domain();
    if (j < 0 || j >= d.ny) throw InvalidArgument("slice index out of range");
    std::string out = "x,z,eps_r\n";
    for (int k = 0; k < d.nz; ++k)
        for (int i = 0; i < d.nx; ++i) out += fmt(d.x(i)) + "," + fmt(d.z(k)) + "," + fmt(eps(i, j, k)) + "\n";
    return out;
}

} // namespace gcm
