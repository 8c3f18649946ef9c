#include "thedra/workbench/service.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include "thedra/builders.hpp"
#include "thedra/error.hpp"
#include "thedra/kinematics.hpp"
#include "thedra/metrology.hpp"
#include "thedra/smooth/deformation.hpp"
#include "thedra/workbench/export.hpp"

// After Eigen: resolv.h, pulled in by httplib, defines a _res macro.
#include <httplib.h>

namespace thedra::workbench {

using nlohmann::json;

namespace {

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

bool valid_id(const std::string& id) {
    return id.size() == 16 && id.find_first_not_of("0123456789abcdef") == std::string::npos;
}

Response json_response(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

Response error_response(int status, const std::string& code, const std::string& message, const std::string& field = {}) {
    json body = {{"error", code}, {"message", message}};
    if (!field.empty()) body["field"] = field;
    return json_response(status, body);
}

json range_json(const ParameterRange& r) {
    return {{"kind", "discrete"},
            {"parameterization", "additive"},
            {"t_min", finite_or_null(r.t_min)},
            {"t_max", finite_or_null(r.t_max)},
            {"lower_reason", std::string(to_string(r.lower_reason))},
            {"upper_reason", std::string(to_string(r.upper_reason))},
            {"lower_index", r.lower_index},
            {"upper_index", r.upper_index}};
}

json range_json(const smooth::SmoothRange& r, const smooth::Surface& s) {
    const bool exponential = s.index() <= 1;
    return {{"kind", "smooth"},
            {"parameterization", exponential ? "exponential" : "additive"},
            {"t_min", finite_or_null(r.t_min)},
            {"t_max", finite_or_null(r.t_max)},
            {"lower_reason", std::string(to_string(r.lower_reason))},
            {"upper_reason", std::string(to_string(r.upper_reason))},
            {"lower_at", r.lower_at},
            {"upper_at", r.upper_at},
            {"lower_open", r.lower_open},
            {"one_sided", r.one_sided()}};
}

json range_json(const DesignDocument& doc) {
    if (doc.discrete()) return range_json(parameter_range(doc.design()));
    return range_json(smooth::smooth_range(doc.surface()), doc.surface());
}

json grid_json(const Grid<Vec3>& points) {
    json vertices = json::array();
    for (const Vec3& p : points) vertices.push_back({p.x(), p.y(), p.z()});
    json quads = json::array();
    const std::size_t cols = points.cols();
    for (std::size_t i = 0; i + 1 < points.rows(); ++i)
        for (std::size_t j = 0; j + 1 < cols; ++j) {
            const std::size_t a = i * cols + j;
            quads.push_back({a, a + cols, a + cols + 1, a + 1});
        }
    return {{"rows", points.rows()}, {"cols", cols}, {"vertices", vertices}, {"quads", quads}};
}

json dihedral_json(const THedron& reference, const THedron& frame) {
    try {
        const DihedralAngles a = dihedral_angles(reference);
        const DihedralAngles b = dihedral_angles(frame);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const Grid<double>* g : {&b.profile_edges, &b.trajectory_edges})
            for (double x : *g) lo = std::min(lo, x), hi = std::max(hi, x);
        return {{"min", finite_or_null(lo)}, {"max", finite_or_null(hi)}, {"max_abs_change", a.max_abs_difference(b)}};
    } catch (const Error&) {
        return nullptr;
    }
}

double metric_residual(const smooth::Surface& a, const smooth::Surface& b, std::size_t k) {
    double worst = 0.0;
    for (double u : smooth::linspace(smooth::u_domain(a), k))
        for (double v : smooth::linspace(smooth::v_domain(a), k)) {
            const auto p = smooth::first_fundamental_form(a, u, v);
            const auto q = smooth::first_fundamental_form(b, u, v);
            const double scale = std::max({1.0, p.E, p.G});
            worst = std::max({worst, std::abs(p.E - q.E) / scale, std::abs(p.F - q.F) / scale,
                              std::abs(p.G - q.G) / scale});
        }
    return worst;
}

std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(x)) return std::nullopt;
    return x;
}

Response mesh(const DesignDocument& doc, const std::map<std::string, std::string>& query) {
    double t = 0.0;
    if (auto it = query.find("t"); it != query.end()) {
        const auto parsed = parse_double(it->second);
        if (!parsed) return error_response(400, "InvalidArgument", "t must be a finite number", "t");
        t = *parsed;
    }
    const bool obj = query.count("format") && query.at("format") == "obj";
    try {
        if (doc.discrete()) {
            const THedron frame = discrete_frame(doc.design(), t);
            if (obj) return {200, obj_string(frame.points), "text/plain"};
            const THedron reference = build_thedron(doc.design());
            const IsometryReport iso = check_isometric(reference, frame);
            json body = grid_json(frame.points);
            body["t"] = t;
            body["isometry_residual"] = std::max(iso.max_edge_residual, iso.max_diagonal_residual);
            body["planarity"] = planarity(frame);
            body["dihedral"] = dihedral_json(reference, frame);
            return json_response(200, body);
        }
        std::size_t resolution = 32;
        if (auto it = query.find("resolution"); it != query.end()) {
            const auto parsed = parse_double(it->second);
            if (!parsed || *parsed < 1 || *parsed > 512 || std::floor(*parsed) != *parsed)
                return error_response(400, "InvalidArgument", "resolution must be an integer in [1, 512]", "resolution");
            resolution = static_cast<std::size_t>(*parsed);
        }
        if (obj) return {200, obj_string(document_frame(doc, t, resolution)), "text/plain"};
        const smooth::SmoothDeformation d = smooth::deform_surface(doc.surface(), t);
        const smooth::SampledGrid grid = smooth::sample_to_grid(d.surface, resolution, resolution);
        const smooth::SampledGrid reference = smooth::sample_to_grid(doc.surface(), resolution, resolution);
        json body = grid_json(grid.points);
        body["t"] = t;
        body["isometry_residual"] = metric_residual(doc.surface(), d.surface, resolution + 1);
        body["planarity"] = grid.planarity;
        body["dihedral"] = dihedral_json(THedron{reference.points}, THedron{grid.points});
        json creases = json::array();
        for (const smooth::Crease& c : d.creases) creases.push_back({{"direction", std::string(1, c.direction)}, {"parameter", c.parameter}});
        body["creases"] = creases;
        return json_response(200, body);
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::OutOfRange:
            case ErrorCode::RadicandNegative:
            case ErrorCode::OneSidedOnly:
            case ErrorCode::CompatibilityDrift: {
                json body = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"field", "t"}};
                body["range"] = range_json(doc);
                return json_response(422, body);
            }
            default:
                throw;
        }
    }
}

Response classify_response(const DesignDocument& doc) {
    const std::string cls =
        doc.discrete() ? std::string(to_string(classify_design(doc.design()))) : std::string(smooth::class_name(doc.surface()));
    return json_response(200, {{"class", cls}});
}

}  // namespace

// ---- workspace ------------------------------------------------------------------

Workspace::Workspace(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_ / "designs", ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create workspace " + root_.string() + ": " + ec.message(), "workspace");
}

std::string Workspace::store(const DesignDocument& doc) {
    const std::string id = content_id(doc);
    const std::filesystem::path target = root_ / "designs" / (id + ".json");
    std::lock_guard<std::mutex> lock(write_lock_);
    if (std::filesystem::exists(target)) return id;
    const std::filesystem::path temp = root_ / "designs" / (id + ".json.tmp");
    save(doc, temp);
    std::error_code ec;
    std::filesystem::rename(temp, target, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot store design " + id + ": " + ec.message(), "workspace");
    return id;
}

std::optional<DesignDocument> Workspace::fetch(const std::string& id) const {
    if (!valid_id(id)) return std::nullopt;
    const std::filesystem::path path = root_ / "designs" / (id + ".json");
    if (!std::filesystem::exists(path)) return std::nullopt;
    return load(path);
}

std::filesystem::path default_workspace() {
    if (const char* env = std::getenv("THEDRA_WORKSPACE"); env && *env) return env;
    return "thedra-workspace";
}

// ---- routing ----------------------------------------------------------------------

Response handle_request(Workspace& workspace, const std::string& method, const std::string& path,
                        const std::map<std::string, std::string>& query, const std::string& body) {
    static const std::regex design_route(R"(^/designs/([^/]+)(/(range|mesh|classify))?/?$)");
    try {
        if (path == "/designs" || path == "/designs/") {
            if (method != "POST") return error_response(405, "MethodNotAllowed", "use POST /designs");
            const DesignDocument doc = from_json(body);
            return json_response(201, {{"id", workspace.store(doc)}});
        }
        std::smatch match;
        if (!std::regex_match(path, match, design_route)) return error_response(404, "NotFound", "no route for " + path);
        if (method != "GET") return error_response(405, "MethodNotAllowed", "use GET");
        const auto doc = workspace.fetch(match[1].str());
        if (!doc) return error_response(404, "NotFound", "no design " + match[1].str());
        const std::string action = match[3].str();
        if (action.empty()) return {200, to_json(*doc)};
        if (action == "range") return json_response(200, range_json(*doc));
        if (action == "classify") return classify_response(*doc);
        return mesh(*doc, query);
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::SchemaViolation:
            case ErrorCode::InvariantViolation:
            case ErrorCode::InvalidArgument:
                return error_response(400, std::string(to_string(e.code())), e.what(), e.field());
            default:
                return error_response(500, std::string(to_string(e.code())), e.what(), e.field());
        }
    }
}

// ---- HTTP ---------------------------------------------------------------------------

struct Server::State {
    Workspace* workspace = nullptr;
    httplib::Server http;
};

Server::Server(Workspace& workspace) : state_(std::make_unique<State>()) {
    state_->workspace = &workspace;
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        std::map<std::string, std::string> query;
        for (const auto& [key, value] : req.params) query.emplace(key, value);
        const Response r = handle_request(*state_->workspace, req.method, req.path, query, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type.c_str());
    };
    state_->http.Get(".*", dispatch);
    state_->http.Post(".*", dispatch);
    state_->http.Put(".*", dispatch);
    state_->http.Delete(".*", dispatch);
}

Server::~Server() { stop(); }

bool Server::listen(const std::string& host, int port) { return state_->http.listen(host.c_str(), port); }

int Server::bind(const std::string& host, int port) {
    if (port == 0) return state_->http.bind_to_any_port(host.c_str());
    return state_->http.bind_to_port(host.c_str(), port) ? port : -1;
}

bool Server::serve() { return state_->http.listen_after_bind(); }

void Server::stop() {
    if (state_) state_->http.stop();
}

bool Server::running() const { return state_->http.is_running(); }

}  // namespace thedra::workbench
