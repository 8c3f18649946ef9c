#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "thedra/design.hpp"
#include "thedra/grid.hpp"
#include "thedra/kinematics.hpp"
#include "thedra/thedron.hpp"
#include "thedra/workbench/document.hpp"

namespace thedra::workbench {

// Wavefront OBJ: one "v x y z" line per vertex in row-major order (17
// significant digits), then one "f" line per quad with 1-based indices.
std::string obj_string(const Grid<Vec3>& points);
void export_obj(const Grid<Vec3>& points, const std::filesystem::path& path);
inline void export_obj(const THedron& surface, const std::filesystem::path& path) { export_obj(surface.points, path); }

// The surface at parameter t: the built surface for t = 0, else the deformed
// one. Shared by the CLI, sweeps and the service so their outputs agree
// byte for byte.
THedron discrete_frame(const DesignData& design, double t);

struct SweepFrame {
    double t = 0.0;
    THedron surface;
    double isometry_residual = 0.0;
    double planarity = 0.0;
};

struct Sweep {
    ParameterRange range;
    std::vector<SweepFrame> frames;
};

// `count` uniformly spaced frames over the parameter range; an unbounded end
// is replaced by the mirror of the other one (or 1 if both are unbounded).
// count = 1 gives the t = 0 frame.
Sweep sweep(const DesignData& design, std::size_t count);
// Explicit parameter list; throws OutOfRange for values outside the range.
Sweep sweep(const DesignData& design, const std::vector<double>& t_values);

// frame_000.obj, frame_001.obj, ... and manifest.json in `directory`.
// Vertex grid of a document at t; smooth surfaces are sampled on a
// resolution x resolution quad grid.
Grid<Vec3> document_frame(const DesignDocument& doc, double t, std::size_t resolution = 32);

void write_sweep(const Sweep& sweep, const std::filesystem::path& directory);
std::string manifest_json(const Sweep& sweep);

}  // namespace thedra::workbench
