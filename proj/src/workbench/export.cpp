#include "thedra/workbench/export.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "thedra/builders.hpp"
#include "thedra/error.hpp"
#include "thedra/metrology.hpp"
#include "thedra/smooth/deformation.hpp"

namespace thedra::workbench {

namespace {

void append_number(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    out += buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing", "path");
    out << body;
    if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string(), "path");
}

nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

SweepFrame make_frame(const DesignData& design, const THedron& reference, double t) {
    SweepFrame frame;
    frame.t = t;
    frame.surface = discrete_frame(design, t);
    const IsometryReport iso = check_isometric(reference, frame.surface);
    frame.isometry_residual = std::max(iso.max_edge_residual, iso.max_diagonal_residual);
    frame.planarity = planarity(frame.surface);
    return frame;
}

}  // namespace

THedron discrete_frame(const DesignData& design, double t) {
    return t == 0.0 ? build_thedron(design) : deform(design, t);
}

Grid<Vec3> document_frame(const DesignDocument& doc, double t, std::size_t resolution) {
    if (doc.discrete()) return discrete_frame(doc.design(), t).points;
    return smooth::sample_to_grid(smooth::deform_surface(doc.surface(), t).surface, resolution, resolution).points;
}

std::string obj_string(const Grid<Vec3>& points) {
    std::string out;
    for (const Vec3& p : points) {
        out += "v ";
        append_number(out, p.x());
        out += ' ';
        append_number(out, p.y());
        out += ' ';
        append_number(out, p.z());
        out += '\n';
    }
    const std::size_t cols = points.cols();
    for (std::size_t i = 0; i + 1 < points.rows(); ++i) {
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            const std::size_t a = i * cols + j + 1;
            out += "f " + std::to_string(a) + ' ' + std::to_string(a + cols) + ' ' + std::to_string(a + cols + 1) + ' ' +
                   std::to_string(a + 1) + '\n';
        }
    }
    return out;
}

void export_obj(const Grid<Vec3>& points, const std::filesystem::path& path) { write_file(path, obj_string(points)); }

Sweep sweep(const DesignData& design, std::size_t count) {
    if (count == 0) throw Error(ErrorCode::InvalidArgument, "a sweep needs at least one frame", "frames");
    const ParameterRange range = parameter_range(design);
    if (count == 1) return sweep(design, std::vector<double>{0.0});
    double lo = range.t_min, hi = range.t_max;
    if (!std::isfinite(lo) && !std::isfinite(hi)) lo = -1.0, hi = 1.0;
    else if (!std::isfinite(lo)) lo = -std::max(std::abs(hi), 1e-3);
    else if (!std::isfinite(hi)) hi = std::max(std::abs(lo), 1e-3);
    std::vector<double> ts(count);
    for (std::size_t k = 0; k < count; ++k)
        ts[k] = k + 1 == count ? hi : lo + (hi - lo) * double(k) / double(count - 1);
    return sweep(design, ts);
}

Sweep sweep(const DesignData& design, const std::vector<double>& t_values) {
    Sweep out;
    out.range = parameter_range(design);
    const THedron reference = build_thedron(design);
    for (double t : t_values) out.frames.push_back(make_frame(design, reference, t));
    return out;
}

std::string manifest_json(const Sweep& s) {
    nlohmann::json frames = nlohmann::json::array();
    for (std::size_t k = 0; k < s.frames.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%03zu.obj", k);
        frames.push_back({{"file", name},
                          {"t", s.frames[k].t},
                          {"isometry_residual", s.frames[k].isometry_residual},
                          {"planarity", s.frames[k].planarity}});
    }
    const nlohmann::json range = {{"t_min", finite_or_null(s.range.t_min)},
                                  {"t_max", finite_or_null(s.range.t_max)},
                                  {"lower_reason", std::string(to_string(s.range.lower_reason))},
                                  {"upper_reason", std::string(to_string(s.range.upper_reason))}};
    return nlohmann::json{{"range", range}, {"frames", frames}}.dump(2) + "\n";
}

void write_sweep(const Sweep& s, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + directory.string() + ": " + ec.message(), "path");
    for (std::size_t k = 0; k < s.frames.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%03zu.obj", k);
        export_obj(s.frames[k].surface, directory / name);
    }
    write_file(directory / "manifest.json", manifest_json(s));
}

}  // namespace thedra::workbench
