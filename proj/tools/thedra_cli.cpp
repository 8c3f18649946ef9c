#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <csignal>
#include <cmath>
#include <fstream>
#include <iostream>

#include "thedra/builders.hpp"
#include "thedra/error.hpp"
#include "thedra/kinematics.hpp"
#include "thedra/metrology.hpp"
#include "thedra/smooth/deformation.hpp"
#include "thedra/workbench/document.hpp"
#include "thedra/workbench/export.hpp"
#include "thedra/workbench/presets.hpp"
#include "thedra/workbench/service.hpp"

using namespace thedra;
using namespace thedra::workbench;
using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + output + " for writing", "output");
    out << text;
}

DesignDocument read_document(const std::string& path) { return path == "-" ? from_json(std::string(std::istreambuf_iterator<char>(std::cin), {})) : load(path); }

json range_json(const DesignDocument& doc) {
    if (doc.discrete()) {
        const ParameterRange r = parameter_range(doc.design());
        return {{"t_min", finite_or_null(r.t_min)},
                {"t_max", finite_or_null(r.t_max)},
                {"lower_reason", std::string(to_string(r.lower_reason))},
                {"upper_reason", std::string(to_string(r.upper_reason))},
                {"lower_index", r.lower_index},
                {"upper_index", r.upper_index}};
    }
    const smooth::SmoothRange r = smooth::smooth_range(doc.surface());
    return {{"t_min", finite_or_null(r.t_min)},
            {"t_max", finite_or_null(r.t_max)},
            {"lower_reason", std::string(to_string(r.lower_reason))},
            {"upper_reason", std::string(to_string(r.upper_reason))},
            {"lower_at", r.lower_at},
            {"upper_at", r.upper_at},
            {"lower_open", r.lower_open},
            {"one_sided", r.one_sided()}};
}

// Metrology of the frames at the given parameters against t = 0.
int verify(const DesignDocument& doc, std::vector<double> ts, double tol) {
    if (!doc.discrete()) throw Error(ErrorCode::InvalidArgument, "verify works on discrete designs", "kind");
    const DesignData& d = doc.design();
    if (ts.empty()) {
        const ParameterRange r = parameter_range(d);
        const double lo = std::isfinite(r.t_min) ? r.t_min : -1.0;
        const double hi = std::isfinite(r.t_max) ? r.t_max : 1.0;
        for (int k = 0; k <= 4; ++k) ts.push_back(lo + (hi - lo) * k / 4.0);
    }
    const THedron reference = build_thedron(d);
    json frames = json::array();
    bool ok = true;
    for (double t : ts) {
        const THedron frame = discrete_frame(d, t);
        const IsometryReport iso = check_isometric(reference, frame, tol);
        const double flat = planarity(frame);
        const bool pass = iso.pass && flat <= tol;
        ok = ok && pass;
        frames.push_back({{"t", t},
                          {"edge_residual", iso.max_edge_residual},
                          {"diagonal_residual", iso.max_diagonal_residual},
                          {"planarity", flat},
                          {"pass", pass}});
    }
    std::cout << json{{"class", std::string(to_string(classify_design(d)))}, {"frames", frames}, {"pass", ok}}.dump(2)
              << "\n";
    return ok ? 0 : 1;
}

smooth::Surface as_class(const smooth::Surface& s, const std::string& cls) {
    if (cls.empty() || cls == smooth::class_name(s)) return s;
    if (cls == "general") return smooth::to_spec(s);
    throw Error(ErrorCode::InvalidArgument,
                "a " + std::string(smooth::class_name(s)) + " surface can be deformed as itself or as general", "class");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-hedra and T-surfaces: build, deform, inspect, serve"};
    app.require_subcommand(1);

    std::string input, output, directory, cls, workspace, host = "127.0.0.1";
    double t = 0.0, tol = 1e-9;
    std::size_t frames = 5, resolution = 32;
    std::vector<double> t_values;
    int port = 8080;

    auto* build = app.add_subcommand("build", "Write the surface at t = 0 as OBJ");
    build->add_option("design", input, "Design document (JSON, - for stdin)")->required();
    build->add_option("-o,--output", output, "Output OBJ file (default stdout)");
    build->add_option("--resolution", resolution, "Quads per direction for smooth surfaces");

    auto* deform_cmd = app.add_subcommand("deform", "Write the deformed surface at --t as OBJ");
    deform_cmd->add_option("design", input, "Design document")->required();
    deform_cmd->add_option("--t", t, "Deformation parameter")->required();
    deform_cmd->add_option("-o,--output", output, "Output OBJ file (default stdout)");
    deform_cmd->add_option("--resolution", resolution, "Quads per direction for smooth surfaces");

    auto* sweep_cmd = app.add_subcommand("sweep", "Write OBJ frames and a manifest over the parameter range");
    sweep_cmd->add_option("design", input, "Design document")->required();
    sweep_cmd->add_option("--frames", frames, "Number of uniformly spaced frames");
    sweep_cmd->add_option("--t", t_values, "Explicit parameter values instead of --frames");
    sweep_cmd->add_option("-d,--dir", directory, "Output directory")->required();

    auto* range = app.add_subcommand("range", "Print the parameter range as JSON");
    range->add_option("design", input, "Design document")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Print the surface class");
    classify_cmd->add_option("design", input, "Design document")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Check planarity and isometry of deformed frames");
    verify_cmd->add_option("design", input, "Design document")->required();
    verify_cmd->add_option("--t", t_values, "Parameters to check (default: 5 across the range)");
    verify_cmd->add_option("--tol", tol, "Relative tolerance");

    auto* smooth_cmd = app.add_subcommand("smooth-deform", "Deform a smooth surface and write the sampled grid as OBJ");
    smooth_cmd->add_option("design", input, "Smooth design document")->required();
    smooth_cmd->add_option("--class", cls, "translational, molding, axial, revolution or general");
    smooth_cmd->add_option("--t", t, "Deformation parameter")->required();
    smooth_cmd->add_option("--resolution", resolution, "Quads per direction");
    smooth_cmd->add_option("-o,--output", output, "Output OBJ file (default stdout)");

    auto* serve = app.add_subcommand("serve", "Run the HTTP frame service");
    serve->add_option("--port", port, "TCP port (0 picks a free one)");
    serve->add_option("--host", host, "Interface to bind");
    serve->add_option("--workspace", workspace, "Workspace directory (default $THEDRA_WORKSPACE)");

    auto* preset_cmd = app.add_subcommand("preset", "Write a preset design document");
    std::string preset_name;
    preset_cmd->add_option("name", preset_name, "Preset name")->required()->check(CLI::IsMember(preset_names()));
    preset_cmd->add_option("-o,--output", output, "Output JSON file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            emit(obj_string(document_frame(read_document(input), 0.0, resolution)), output);
        } else if (*deform_cmd) {
            emit(obj_string(document_frame(read_document(input), t, resolution)), output);
        } else if (*sweep_cmd) {
            const DesignDocument doc = read_document(input);
            if (!doc.discrete()) throw Error(ErrorCode::InvalidArgument, "sweep works on discrete designs", "kind");
            const Sweep s = t_values.empty() ? sweep(doc.design(), frames) : sweep(doc.design(), t_values);
            write_sweep(s, directory);
            std::cout << manifest_json(s);
        } else if (*range) {
            std::cout << range_json(read_document(input)).dump(2) << "\n";
        } else if (*classify_cmd) {
            const DesignDocument doc = read_document(input);
            std::cout << (doc.discrete() ? to_string(classify_design(doc.design())) : smooth::class_name(doc.surface()))
                      << "\n";
        } else if (*verify_cmd) {
            return verify(read_document(input), t_values, tol);
        } else if (*smooth_cmd) {
            const DesignDocument doc = read_document(input);
            if (doc.discrete()) throw Error(ErrorCode::InvalidArgument, "smooth-deform needs a smooth document", "kind");
            const smooth::Surface s = as_class(doc.surface(), cls);
            const smooth::SmoothDeformation d = smooth::deform_surface(s, t);
            for (const smooth::Crease& c : d.creases)
                std::cerr << "crease along " << (c.direction == 'v' ? "v = " : "u = ") << c.parameter << "\n";
            emit(obj_string(smooth::sample_to_grid(d.surface, resolution, resolution).points), output);
        } else if (*serve) {
            Workspace ws(workspace.empty() ? default_workspace() : std::filesystem::path(workspace));
            Server server(ws);
            const int bound = server.bind(host, port);
            if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port), "port");
            std::cout << "serving " << ws.root().string() << " on http://" << host << ":" << bound << std::endl;
            return server.serve() ? 0 : 1;
        } else if (*preset_cmd) {
            emit(to_json(preset(preset_name)), output);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what();
        if (!e.field().empty()) std::cerr << " [" << e.field() << "]";
        std::cerr << "\n";
        return 2;
    }
    return 0;
}
